//! Truncated q-expansions over the rationals.
//!
//! A [`QExpansion`] stores `a(0), …, a(precision − 1)`. Arithmetic keeps the
//! smaller precision of its operands and every read past the stored range is an
//! error rather than an implicit zero.

mod forms;
mod hecke;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::ExactRational;

pub use forms::{
    delta, delta_from_eta, eisenstein, eta_series, g20, g2_level, g2_quasimodular,
    sigma_table, tau_table,
};
pub use hecke::{multiplicative_extend, DirichletCoefficients};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QExpError {
    #[error("coefficient q^{requested} requested but only {available} coefficients are known")]
    PrecisionExhausted { requested: usize, available: usize },
    #[error("cannot add forms of weight {0} and {1}")]
    WeightMismatch(i64, i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Eisenstein series needs an even weight ≥ 4, got {0}")]
    BadEisensteinWeight(i64),
    #[error("T_p is implemented for level 1 only (got level {0})")]
    LevelNotOne(u64),
    #[error("operator index must be ≥ 1")]
    ZeroIndex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    weight: i64,
    level: u64,
    coeffs: Vec<ExactRational>,
}

impl QExpansion {
    pub fn new(weight: i64, level: u64, coeffs: Vec<ExactRational>) -> Self {
        assert!(!coeffs.is_empty(), "a q-expansion needs at least one coefficient");
        Self {
            weight,
            level,
            coeffs,
        }
    }

    pub fn from_integers(weight: i64, level: u64, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        Self::new(
            weight,
            level,
            coeffs.into_iter().map(BigRational::from_integer).collect(),
        )
    }

    pub fn zero(weight: i64, level: u64, precision: usize) -> Self {
        Self::new(weight, level, vec![ExactRational::zero(); precision])
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&ExactRational, QExpError> {
        self.coeffs.get(n).ok_or(QExpError::PrecisionExhausted {
            requested: n,
            available: self.coeffs.len(),
        })
    }

    /// Relabels weight and level (e.g. after dividing out a known form).
    pub fn with_weight_level(mut self, weight: i64, level: u64) -> Self {
        self.weight = weight;
        self.level = level;
        self
    }

    pub fn truncate(&self, precision: usize) -> Result<Self, QExpError> {
        if precision > self.precision() || precision == 0 {
            return Err(QExpError::PrecisionExhausted {
                requested: precision.saturating_sub(1),
                available: self.precision(),
            });
        }
        Ok(Self::new(self.weight, self.level, self.coeffs[..precision].to_vec()))
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(
            self.weight,
            self.level,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|a| !a.is_zero())
    }

    pub fn is_cuspidal_at_infinity(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, QExpError> {
        if self.weight != rhs.weight {
            return Err(QExpError::WeightMismatch(self.weight, rhs.weight));
        }
        let n = self.precision().min(rhs.precision());
        Ok(Self::new(
            self.weight,
            self.level.lcm(&rhs.level),
            (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        ))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, QExpError> {
        self.try_add(&-rhs)
    }

    /// Exact product; the convolution runs over integers after clearing
    /// denominators.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.precision().min(rhs.precision());
        let (a, da) = clear_denominators(&self.coeffs[..n]);
        let (b, db) = clear_denominators(&rhs.coeffs[..n]);
        let prod = convolve(&a, &b, n);
        let den = da * db;
        Self::new(
            self.weight + rhs.weight,
            self.level.lcm(&rhs.level),
            prod.into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::new(0, 1, {
            let mut v = vec![ExactRational::zero(); self.precision()];
            v[0] = ExactRational::one();
            v
        });
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient by a series with invertible constant term is not needed;
    /// division by a power of `q` is (`f / q^shift`).
    pub fn shift_down(&self, shift: usize) -> Result<Self, QExpError> {
        for n in 0..shift.min(self.precision()) {
            if !self.coeffs[n].is_zero() {
                return Err(QExpError::PrecisionExhausted {
                    requested: n,
                    available: 0,
                });
            }
        }
        if shift >= self.precision() {
            return Err(QExpError::PrecisionExhausted {
                requested: shift,
                available: self.precision(),
            });
        }
        Ok(Self::new(self.weight, self.level, self.coeffs[shift..].to_vec()))
    }

    /// Multiplication by `q^shift`; precision grows by `shift`.
    pub fn shift_up(&self, shift: usize) -> Self {
        let mut v = vec![ExactRational::zero(); shift];
        v.extend(self.coeffs.iter().cloned());
        Self::new(self.weight, self.level, v)
    }

    pub fn v_operator(&self, m: usize) -> Result<Self, QExpError> {
        hecke::v_operator(self, m)
    }

    pub fn u_operator(&self, m: usize) -> Result<Self, QExpError> {
        hecke::u_operator(self, m)
    }

    pub fn hecke_tp(&self, p: u64, out_precision: usize) -> Result<Self, QExpError> {
        hecke::hecke_tp(self, p, out_precision)
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }
}

impl Add for &QExpansion {
    type Output = QExpansion;
    /// Panics on a weight mismatch; see [`QExpansion::try_add`].
    fn add(self, rhs: &QExpansion) -> QExpansion {
        self.try_add(rhs).expect("weight mismatch")
    }
}

impl Sub for &QExpansion {
    type Output = QExpansion;
    fn sub(self, rhs: &QExpansion) -> QExpansion {
        self.try_sub(rhs).expect("weight mismatch")
    }
}

impl Neg for &QExpansion {
    type Output = QExpansion;
    fn neg(self) -> QExpansion {
        QExpansion::new(
            self.weight,
            self.level,
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }
}

impl Mul for &QExpansion {
    type Output = QExpansion;
    fn mul(self, rhs: &QExpansion) -> QExpansion {
        QExpansion::mul(self, rhs)
    }
}

pub(crate) fn clear_denominators(v: &[ExactRational]) -> (Vec<BigInt>, BigInt) {
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = v
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (ints, den)
}

pub(crate) fn convolve(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn series(v: &[i64]) -> QExpansion {
        QExpansion::new(0, 1, v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn product_uses_min_precision() {
        let a = series(&[1, 1, 0, 0, 0]);
        let b = series(&[1, -1, 0]);
        let p = a.mul(&b);
        assert_eq!(p.precision(), 3);
        assert_eq!(p.coeffs(), &[int(1), int(0), int(-1)]);
    }

    #[test]
    fn rational_product() {
        let a = QExpansion::new(2, 2, vec![rat(1, 24), int(1), int(1)]);
        let sq = a.mul(&a);
        assert_eq!(sq.coeffs(), &[rat(1, 576), rat(1, 12), rat(1, 12) + int(1)]);
        assert_eq!(sq.weight(), 4);
        assert_eq!(sq.level(), 2);
    }

    #[test]
    fn reading_past_precision_fails() {
        let a = series(&[1, 2, 3]);
        assert_eq!(
            a.coeff(3),
            Err(QExpError::PrecisionExhausted {
                requested: 3,
                available: 3
            })
        );
        assert!(a.truncate(4).is_err());
    }

    #[test]
    fn add_needs_same_weight() {
        let a = series(&[1, 2]);
        let b = a.clone().with_weight_level(4, 1);
        assert_eq!(a.try_add(&b), Err(QExpError::WeightMismatch(0, 4)));
    }

    #[test]
    fn powers() {
        let a = series(&[1, 1, 0, 0, 0, 0]);
        let p = a.pow(5);
        assert_eq!(
            p.integer_coeffs().unwrap(),
            [1, 5, 10, 10, 5, 1].map(BigInt::from).to_vec()
        );
    }
}
