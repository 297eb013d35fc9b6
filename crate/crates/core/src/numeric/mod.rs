//! Floating-point L-values that do not go through the exact pipeline:
//! approximate functional equations, Dirichlet partial sums, Rankin's
//! formula for Petersson norms and the Euler-product identities.

mod afe;
mod euler;
mod norms;
mod product;
mod sym2;

pub use afe::{completed_level1, direct_dirichlet_sum, incomplete_gamma_scaled, lvalue_level1, AFE_TERMS};
pub use euler::{
    euler_convolution_check, g20_g22_exact_check, g20_g22_identity_at, ConvolutionReport, EulerFactorPair,
    IdentityCheck, SatakeData,
};
pub use norms::{petersson_norm, rankin_alpha, rankin_prefactor};
pub use product::{g20_pair_numeric, main_numeric_product, NumericSource};
pub use sym2::{divisor_bound_constant, sym_square_numeric, sym_square_partial_sum, SYM2_TERMS};

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exact::{bernoulli, ExactError};
use crate::qexp::{g20, sigma_table, tau_table};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("tail bound {bound:e} exceeds tolerance {tolerance:e}")]
    TailBound { bound: f64, tolerance: f64 },
    #[error("weight-{k} norm needs l + r = k with r even and 4 ≤ r ≤ k/2 − 2 (got l = {l})")]
    InvalidNormPair { k: i64, l: i64 },
    #[error("argument {0} outside the supported range")]
    Argument(i64),
    #[error("only 1 ≤ w ≤ k−1 is supported (got w = {w}, k = {k})")]
    OutsideStrip { w: i64, k: i64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A floating value with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericValue {
    pub value: f64,
    pub error_bound: f64,
}

impl NumericValue {
    pub fn new(value: f64, error_bound: f64) -> Self {
        Self { value, error_bound }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, value.abs() * f64::EPSILON)
    }

    pub fn relative_error(&self) -> f64 {
        self.error_bound / self.value.abs()
    }

    pub fn mul(self, rhs: Self) -> Self {
        let value = self.value * rhs.value;
        let err = self.error_bound * rhs.value.abs()
            + rhs.error_bound * self.value.abs()
            + self.error_bound * rhs.error_bound
            + value.abs() * f64::EPSILON;
        Self::new(value, err)
    }

    pub fn scale(self, c: f64) -> Self {
        let value = self.value * c;
        Self::new(value, self.error_bound * c.abs() + value.abs() * f64::EPSILON)
    }

    pub fn div(self, rhs: Self) -> Self {
        let value = self.value / rhs.value;
        let rel = self.relative_error() + rhs.relative_error() + f64::EPSILON;
        Self::new(value, value.abs() * rel)
    }

    /// Whether `other` lies within `rel` relative distance, allowing for both bounds.
    pub fn agrees_with(&self, other: f64, rel: f64) -> bool {
        (self.value - other).abs() <= rel * other.abs() + self.error_bound
    }
}

/// The two level-1 eigenforms the tables are built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CuspForm {
    Delta,
    G20,
}

impl CuspForm {
    pub fn weight(self) -> i64 {
        match self {
            CuspForm::Delta => 12,
            CuspForm::G20 => 20,
        }
    }

    pub fn from_weight(k: i64) -> Option<Self> {
        match k {
            12 => Some(CuspForm::Delta),
            20 => Some(CuspForm::G20),
            _ => None,
        }
    }

    /// `a(0..=n)` as floats (`a(0) = 0`). Δ comes from the machine-integer
    /// table; `g₂₀` from the exact product `Δ·E₈` for short streams and from
    /// exact prime coefficients plus the Hecke recursion beyond that.
    pub fn coefficients(self, n: usize) -> Vec<f64> {
        match self {
            CuspForm::Delta => tau_table(n + 1).iter().map(|&t| t as f64).collect(),
            CuspForm::G20 => {
                let cached = g20_stream();
                if cached.len() > n {
                    cached[..=n].to_vec()
                } else {
                    g20_multiplicative(n)
                }
            }
        }
    }
}

/// Length of the shared `g₂₀` coefficient stream used by the AFE.
const G20_STREAM: usize = 256;

fn g20_stream() -> &'static [f64] {
    static S: OnceLock<Vec<f64>> = OnceLock::new();
    S.get_or_init(|| {
        g20(G20_STREAM)
            .coeffs()
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    })
}

fn g20_multiplicative(n: usize) -> Vec<f64> {
    let tau: Vec<BigInt> = tau_table(n + 1).into_iter().map(BigInt::from).collect();
    let s7 = sigma_table(7, n + 1);
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    let mut a = vec![0.0; n + 1];
    if n >= 1 {
        a[1] = 1.0;
    }
    for m in 2..=n {
        let p = spf[m];
        if p == m {
            // a(p) = τ(p) + 480 Σ τ(j) σ₇(p−j)
            let conv: BigInt = (1..p).map(|j| &tau[j] * &s7[p - j]).sum();
            a[m] = (&tau[p] + conv * 480u32).to_f64().unwrap_or(f64::NAN);
            continue;
        }
        let mut q = p;
        while (m / q) % p == 0 {
            q *= p;
        }
        a[m] = if q == m {
            let pk = (p as f64).powi(19);
            a[p] * a[m / p] - pk * a[m / p / p]
        } else {
            a[q] * a[m / q]
        };
    }
    a
}

/// `ζ(s)` for integer `s ≥ 2` by Euler–Maclaurin summation.
pub fn zeta_f64(s: i64) -> f64 {
    assert!(s >= 2, "zeta_f64 needs s ≥ 2");
    const N: i64 = 16;
    let sf = s as f64;
    let mut sum: f64 = (1..N).rev().map(|n| (n as f64).powf(-sf)).sum();
    let nf = N as f64;
    sum += nf.powf(1.0 - sf) / (sf - 1.0) + 0.5 * nf.powf(-sf);
    // Σ B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = sf;
    let mut fact = 2.0;
    for j in 1..=10 {
        let b = bernoulli(2 * j).to_f64().expect("small Bernoulli number");
        sum += b / fact * rising * nf.powf(-sf - 2.0 * j as f64 + 1.0);
        let tj = (2 * j) as f64;
        rising *= (sf + tj - 1.0) * (sf + tj);
        fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::zeta_exact;

    #[test]
    fn zeta_matches_even_closed_form() {
        for s in [2, 4, 6, 12, 20] {
            let exact = zeta_exact(s).unwrap().to_f64();
            assert!((zeta_f64(s) / exact - 1.0).abs() < 1e-15, "s={s}");
        }
        assert!((zeta_f64(3) - 1.202_056_903_159_594_3).abs() < 1e-15);
        assert!((zeta_f64(5) - 1.036_927_755_143_37).abs() < 1e-14);
    }

    #[test]
    fn coefficient_streams() {
        let d = CuspForm::Delta.coefficients(5);
        assert_eq!(d, vec![0.0, 1.0, -24.0, 252.0, -1472.0, 4830.0]);
        let g = CuspForm::G20.coefficients(4);
        assert_eq!(g, vec![0.0, 1.0, 456.0, 50652.0, -316352.0]);
        assert_eq!(CuspForm::G20.coefficients(300).len(), 301);
        let exact = CuspForm::G20.coefficients(G20_STREAM - 1);
        let hecke = g20_multiplicative(G20_STREAM - 1);
        for (n, (x, y)) in exact.iter().zip(&hecke).enumerate().skip(1) {
            assert!((x - y).abs() <= 1e-14 * x.abs(), "n = {n}: {x} vs {y}");
        }
    }

    #[test]
    fn value_arithmetic() {
        let a = NumericValue::new(2.0, 1e-10);
        let b = NumericValue::new(3.0, 1e-10);
        let p = a.mul(b);
        assert_eq!(p.value, 6.0);
        assert!(p.error_bound > 4.9e-10 && p.error_bound < 5.1e-10);
        assert!(a.div(b).agrees_with(2.0 / 3.0, 0.0));
    }
}
