//! Holomorphic projection of `G₂,₂ · E_{k−2}(z, σ)` onto weight-20 cusp
//! forms of level 2.
//!
//! All constants carry the common factor `π^{2s}` (`s = σ − 10`). The
//! projection of the product has Fourier coefficients
//! `A_m = Σ_{d=0}^{m} b(m−d)·I(m, d)` where `b` are the coefficients of
//! `G₂,₂` and `I(m, d)` is the Γ-integral of the `d`-th Eisenstein term.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{
    binomial, factorial, int, partial_zeta_exact, pow_rat, rat, reciprocal_gamma_int, zeta_exact,
    ExactError, ExactRational, PiExact,
};
use crate::level2::{solve_projection_coefficients, Level2Error};
use crate::qexp::g2_level;
use crate::quad::{integrate, QuadError};

pub const K: i64 = 20;
pub const CRITICAL_POINTS: [i64; 10] = [-8, -6, -4, -2, 0, 1, 3, 5, 7, 9];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HolprojError {
    #[error("σ = {0} outside 2..=19")]
    OutOfWindow(i64),
    #[error("m = {m}, d = {d} not in 1 ≤ m ≤ 4, 0 ≤ d ≤ m")]
    BadIndex { m: usize, d: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Level2(#[from] Level2Error),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// How the `Γ(2σ−k−1)ζ(2σ−k−1)/Γ(σ+1−k)` factor of `C′₀` is read where its
/// arguments sit on poles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PoleConvention {
    /// Both Γ arguments move together (`Γ(−n+ε)/Γ(−m+ε)`); the `ζ(1)` pole at
    /// `σ = 11` is cancelled outright by `1/Γ(σ−19) = 0`.
    #[default]
    Tabulated,
    /// Limit along the Eisenstein parameter, where `2σ` moves twice as fast as
    /// `σ`: double-pole ratios pick up a factor 1/2 and `σ = 11` keeps the
    /// finite part `ζ(1+2ε)/Γ(−8+ε) → 8!/2`.
    Analytic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectionContext {
    pub k: i64,
    pub sigma: i64,
    pub s: i64,
    pub convention: PoleConvention,
}

impl ProjectionContext {
    pub fn new(s: i64) -> Result<Self, HolprojError> {
        Self::with_convention(s, PoleConvention::Tabulated)
    }

    pub fn with_convention(s: i64, convention: PoleConvention) -> Result<Self, HolprojError> {
        let sigma = s + 10;
        if sigma - 19 > 0 || sigma - 1 <= 0 {
            return Err(HolprojError::OutOfWindow(sigma));
        }
        Ok(Self {
            k: K,
            sigma,
            s,
            convention,
        })
    }

    /// `k − 1 − σ`, the degree of the Whittaker polynomial.
    pub fn r(&self) -> i64 {
        self.k - 1 - self.sigma
    }

    fn pi(&self, coeff: ExactRational) -> PiExact {
        PiExact::with_pi_power(coeff, 2 * self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSet {
    pub c0prime: PiExact,
    pub c0doubleprime: PiExact,
    /// `C₁ … C₄`.
    pub c: [PiExact; 4],
}

impl CoefficientSet {
    /// `(C′₀, C″₀, C₁, C₂, C₃, C₄)`.
    pub fn as_row(&self) -> [PiExact; 6] {
        [
            self.c0prime.clone(),
            self.c0doubleprime.clone(),
            self.c[0].clone(),
            self.c[1].clone(),
            self.c[2].clone(),
            self.c[3].clone(),
        ]
    }

    /// `C_d` for `d = 1..4`.
    pub fn c_n(&self, d: usize) -> &PiExact {
        &self.c[d - 1]
    }
}

fn sign(e: i64) -> ExactRational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// `Γ(a)ζ(a)/Γ(b)` at `a = 2σ−k−1`, `b = σ+1−k` under the chosen convention.
fn c0prime_core(ctx: &ProjectionContext) -> Result<ExactRational, ExactError> {
    let a = 2 * ctx.sigma - ctx.k - 1;
    let b = ctx.sigma + 1 - ctx.k;
    if b > 0 {
        // outside the window; kept for completeness
        let g = BigRational::from_integer(factorial((a - 1) as u64))
            * zeta_exact(a)?.coeff
            * reciprocal_gamma_int(b);
        return Ok(g);
    }
    let m = -b;
    match a {
        a if a <= 0 => {
            let n = -a;
            let ratio = sign(n - m)
                * BigRational::new(factorial(m as u64), factorial(n as u64));
            let z = zeta_exact(a)?.coeff;
            let half = match ctx.convention {
                PoleConvention::Tabulated => int(1),
                PoleConvention::Analytic => rat(1, 2),
            };
            Ok(ratio * z * half)
        }
        1 => match ctx.convention {
            PoleConvention::Tabulated => Ok(ExactRational::zero()),
            PoleConvention::Analytic => {
                Ok(sign(m) * BigRational::from_integer(factorial(m as u64)) * rat(1, 2))
            }
        },
        // Γ(a)ζ(a) finite, 1/Γ(b) = 0
        _ => Ok(ExactRational::zero()),
    }
}

pub fn c_coefficients(ctx: &ProjectionContext) -> Result<CoefficientSet, HolprojError> {
    let k = ctx.k;
    let sigma = ctx.sigma;
    let c0p = sign(1 - k / 2) * int(2) * c0prime_core(ctx)? * reciprocal_gamma_int(sigma - 1);
    // 2(1 − 2^{k−2σ})ζ(2σ−k) = 2ζ(2σ−k; 1, 2)
    let n = 2 * sigma - k;
    let c0pp = partial_zeta_exact(n, 1, 2)?.scale(&int(2));
    debug_assert!(c0pp.is_zero() || c0pp.half_pi_exp == 4 * ctx.s);
    let e = 2 * sigma - k - 1;
    let c = std::array::from_fn(|i| {
        let nn = i as i64 + 1;
        let sum = (1..=nn)
            .filter(|d| nn % d == 0)
            .fold(ExactRational::zero(), |acc, d| {
                acc + sign(d + 1) * pow_rat(&int(d), e)
            });
        ctx.pi(sign(k / 2) * int(2) * sum)
    });
    Ok(CoefficientSet {
        c0prime: ctx.pi(c0p),
        c0doubleprime: ctx.pi(c0pp.coeff),
        c,
    })
}

/// Ascending coefficients in `y` of `W(y, α, −r) = Σ_i (−1)^i C(r,i)
/// Γ(α)/Γ(α−i) y^{r−i}`; the Γ-ratio is the falling factorial, so terms
/// through a pole of `Γ(α−i)` are exact zeros.
pub fn whittaker_poly(alpha: i64, r: u32) -> Vec<ExactRational> {
    let mut out = vec![ExactRational::zero(); r as usize + 1];
    let mut falling = BigInt::from(1);
    for i in 0..=r {
        if i > 0 {
            falling *= alpha - i as i64;
        }
        let term = sign(i as i64) * BigRational::from_integer(binomial(r as u64, i as u64) * &falling);
        out[(r - i) as usize] = term;
    }
    out
}

/// `I(m, d)`: contribution of the `d`-th Eisenstein coefficient to `A_m`.
pub fn projection_integral(m: usize, d: usize, ctx: &ProjectionContext) -> Result<PiExact, HolprojError> {
    if !(1..=4).contains(&m) || d > m {
        return Err(HolprojError::BadIndex { m, d });
    }
    let cs = c_coefficients(ctx)?;
    Ok(projection_integral_with(m, d, ctx, &cs))
}

fn projection_integral_with(m: usize, d: usize, ctx: &ProjectionContext, cs: &CoefficientSet) -> PiExact {
    let k = ctx.k;
    let sigma = ctx.sigma;
    let fk2 = BigRational::from_integer(factorial((k - 2) as u64));
    let mi = int(m as i64);
    if d == 0 {
        let t1 = BigRational::from_integer(factorial((k - sigma) as u64)) * pow_rat(&mi, sigma - 2);
        let t2 = BigRational::from_integer(factorial((sigma - 1) as u64)) * pow_rat(&mi, k - 1 - sigma);
        let v = (&cs.c0prime.coeff * t1 + &cs.c0doubleprime.coeff * t2) / fk2;
        return ctx.pi(v);
    }
    let r = ctx.r();
    let ratio = rat(-(m as i64), d as i64);
    let mut sum = ExactRational::zero();
    for i in 0..=r {
        let g = reciprocal_gamma_int(sigma - 1 - i);
        if g.is_zero() {
            continue;
        }
        sum += pow_rat(&ratio, i)
            * BigRational::from_integer(binomial(r as u64, i as u64) * factorial((k - 2 - i) as u64))
            * g;
    }
    let v = &cs.c_n(d).coeff * pow_rat(&int(d as i64), r) * sum / fk2;
    ctx.pi(v)
}

/// Coefficients `b(0..=4)` of `G₂,₂`.
pub fn g22_coefficients() -> Vec<ExactRational> {
    g2_level(2, 5).expect("2 is prime").coeffs().to_vec()
}

pub fn a_coefficients(ctx: &ProjectionContext) -> Result<[PiExact; 4], HolprojError> {
    let cs = c_coefficients(ctx)?;
    let b = g22_coefficients();
    let mut out: [PiExact; 4] = std::array::from_fn(|_| PiExact::zero());
    for m in 1..=4 {
        let mut acc = ctx.pi(ExactRational::zero());
        for d in 0..=m {
            let term = projection_integral_with(m, d, ctx, &cs).scale(&b[m - d]);
            acc = acc.try_add(&term)?;
        }
        out[m - 1] = PiExact::new(acc.coeff, 4 * ctx.s);
    }
    Ok(out)
}

pub fn k_coefficients(ctx: &ProjectionContext) -> Result<[PiExact; 4], HolprojError> {
    Ok(solve_projection_coefficients(&a_coefficients(ctx)?)?)
}

/// One `c·(4πy)^p` term of the non-holomorphic product's `m`-th coefficient,
/// with the `π^{2s}` of the constants kept separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrandTerm {
    pub coeff: ExactRational,
    pub power: i64,
}

/// Terms of `Ã_m(y)` (times `e^{4πmy}`): the two constant-term pieces,
/// then every nonzero Whittaker term of `d = 1..m`.
pub fn integrand_terms(m: usize, ctx: &ProjectionContext) -> Result<Vec<IntegrandTerm>, HolprojError> {
    if !(1..=4).contains(&m) {
        return Err(HolprojError::BadIndex { m, d: 0 });
    }
    let cs = c_coefficients(ctx)?;
    let b = g22_coefficients();
    let sigma = ctx.sigma;
    let r = ctx.r();
    let mut out = vec![
        IntegrandTerm {
            coeff: &b[m] * &cs.c0prime.coeff,
            power: 2 - sigma,
        },
        IntegrandTerm {
            coeff: &b[m] * &cs.c0doubleprime.coeff,
            power: sigma + 1 - ctx.k,
        },
    ];
    // W(4πdy, σ−1, −r)/Γ(σ−1) · (4πy)^{−r}
    let inv_gamma = reciprocal_gamma_int(sigma - 1);
    let w = whittaker_poly(sigma - 1, r as u32);
    for d in 1..=m {
        let scale = &b[m - d] * &cs.c_n(d).coeff * &inv_gamma;
        for (j, wc) in w.iter().enumerate() {
            if wc.is_zero() {
                continue;
            }
            out.push(IntegrandTerm {
                coeff: &scale * wc * pow_rat(&int(d as i64), j as i64),
                power: j as i64 - r,
            });
        }
    }
    Ok(out)
}

/// `(4πm)^{k−1}/(k−2)! ∫₀^∞ Ã_m(y) e^{−4πmy} y^{k−2} dy` by adaptive
/// quadrature, as a float including the `π^{2s}` factor.
pub fn quadrature_oracle(m: usize, ctx: &ProjectionContext) -> Result<f64, HolprojError> {
    let terms: Vec<(f64, i32)> = integrand_terms(m, ctx)?
        .into_iter()
        .filter(|t| !t.coeff.is_zero())
        .map(|t| (t.coeff.to_f64().unwrap_or(f64::NAN), t.power as i32))
        .collect();
    let k = ctx.k as i32;
    let mf = m as f64;
    // substitute t = 4πy: (m^{k−1}/(k−2)!) ∫ Σ c t^{p+k−2} e^{−mt} dt
    let f = |t: f64| {
        let poly: f64 = terms.iter().map(|&(c, p)| c * t.powi(p + k - 2)).sum();
        poly * (-mf * t).exp()
    };
    // ∫|c| t^n e^{−mt} = |c| n!/m^{n+1} bounds the cancellation; the
    // Gauss–Kronrod error estimate cannot go below rounding of that size
    let magnitude: f64 = terms
        .iter()
        .map(|&(c, p)| {
            let n = p + k - 2;
            c.abs() * (1..=n).map(f64::from).product::<f64>() / mf.powi(n + 1)
        })
        .sum();
    let upper = 200.0 / mf;
    let (v, _) = integrate(f, 0.0, upper, 1e-13, 1e-14 * magnitude, 2000)?;
    let fk2: f64 = (1..=(k - 2)).map(f64::from).product();
    let pi_factor = std::f64::consts::PI.powi(2 * ctx.s as i32);
    Ok(v * mf.powi(k - 1) / fk2 * pi_factor)
}

/// The exact row `(C′₀, …, C₄)`, `(A₁..A₄)` and `(K₁..K₄)` for one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionRow {
    pub s: i64,
    pub c: CoefficientSet,
    pub a: [PiExact; 4],
    pub k: [PiExact; 4],
}

pub fn projection_row(ctx: &ProjectionContext) -> Result<ProjectionRow, HolprojError> {
    let a = a_coefficients(ctx)?;
    Ok(ProjectionRow {
        s: ctx.s,
        c: c_coefficients(ctx)?,
        k: solve_projection_coefficients(&a)?,
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(s: i64) -> CoefficientSet {
        c_coefficients(&ProjectionContext::new(s).unwrap()).unwrap()
    }

    #[test]
    fn window() {
        assert!(ProjectionContext::new(-9).is_err());
        assert!(ProjectionContext::new(10).is_err());
        assert_eq!(ProjectionContext::new(9).unwrap().sigma, 19);
    }

    #[test]
    fn c_at_zero() {
        let c = row(0);
        let want = [rat(3, 2), int(0), int(2), int(1), rat(8, 3), rat(1, 2)];
        for (x, w) in c.as_row().iter().zip(want) {
            assert_eq!(x.coeff, w);
            assert_eq!(x.half_pi_exp, 0);
        }
    }

    #[test]
    fn c_spot_values() {
        let c = row(1);
        assert_eq!(c.c0doubleprime, PiExact::with_pi_power(rat(1, 4), 2));
        assert_eq!(c.c[3], PiExact::with_pi_power(int(-10), 2));
        assert_eq!(row(-8).c[1], PiExact::with_pi_power(rat(131071, 65536), -16));
    }

    #[test]
    fn analytic_convention() {
        let ctx = ProjectionContext::with_convention(1, PoleConvention::Analytic).unwrap();
        assert_eq!(c_coefficients(&ctx).unwrap().c0prime, PiExact::with_pi_power(rat(-1, 9), 2));
        let ctx = ProjectionContext::with_convention(0, PoleConvention::Analytic).unwrap();
        assert_eq!(c_coefficients(&ctx).unwrap().c0prime.coeff, rat(3, 4));
        // conventions agree away from the poles
        for s in [3, 5, 7, 9] {
            let a = ProjectionContext::with_convention(s, PoleConvention::Analytic).unwrap();
            assert_eq!(c_coefficients(&a).unwrap(), row(s));
        }
    }

    #[test]
    fn whittaker_examples() {
        assert_eq!(whittaker_poly(5, 0), vec![int(1)]);
        assert_eq!(whittaker_poly(3, 1), vec![int(-2), int(1)]);
        assert_eq!(whittaker_poly(2, 2), vec![int(0), int(-2), int(1)]);
    }

    #[test]
    fn a_spot_values() {
        let a0 = a_coefficients(&ProjectionContext::new(0).unwrap()).unwrap();
        assert_eq!(a0[0], PiExact::rational(rat(1, 784143360)));
        assert_eq!(a0[1], PiExact::rational(rat(23, 49008960)));
        let a = a_coefficients(&ProjectionContext::new(-6).unwrap()).unwrap();
        assert_eq!(a[0], PiExact::with_pi_power(rat(71, 1224), -12));
    }

    #[test]
    fn k_spot_value() {
        let k = k_coefficients(&ProjectionContext::new(3).unwrap()).unwrap();
        assert_eq!(k[0], PiExact::with_pi_power(rat(4553, 69773768064000), 6));
    }

    #[test]
    fn integrand_term_count() {
        let ctx = ProjectionContext::new(-8).unwrap();
        let w = whittaker_poly(ctx.sigma - 1, ctx.r() as u32);
        let nonzero = w.iter().filter(|c| !c.is_zero()).count();
        assert_eq!(integrand_terms(1, &ctx).unwrap().len(), nonzero + 2);
    }

    #[test]
    fn quadrature_spot() {
        for (s, m) in [(0, 1), (9, 4)] {
            let ctx = ProjectionContext::new(s).unwrap();
            let exact = a_coefficients(&ctx).unwrap()[m - 1].to_f64();
            let q = quadrature_oracle(m, &ctx).unwrap();
            assert!(((q - exact) / exact).abs() < 1e-9, "s={s} m={m}: {q} vs {exact}");
        }
    }
}
