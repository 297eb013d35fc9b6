//! Exact critical values of the degree-7 standard L-function, assembled from
//! the symmetric square of Δ and the pair product `L(s+10, g₂₀)L(s+9, g₂₀)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{
    factor_rational, factorial, gamma_exact, int, pow_rat, ExactError, ExactRational,
    FactoredRational, HalfInt, PiExact,
};
use crate::holproj::{k_coefficients, HolprojError, PoleConvention, ProjectionContext, CRITICAL_POINTS};
use crate::qexp::{delta, g20};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AssembleError {
    #[error("{0} is not a critical point")]
    NotCritical(i64),
    #[error("sym² argument {0} has no fixture")]
    NoFixture(i64),
    #[error("trace constant {actual} differs from {expected}")]
    TraceMismatch { expected: String, actual: String },
    #[error(transparent)]
    Holproj(#[from] HolprojError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn check_critical(s: i64) -> Result<(), AssembleError> {
    if CRITICAL_POINTS.contains(&s) {
        Ok(())
    } else {
        Err(AssembleError::NotCritical(s))
    }
}

/// `L(a, Δ⊗Δ)/⟨Δ, Δ⟩` at an even argument in `12..=20`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSquareFixture {
    pub argument: i64,
    pub value: PiExact,
}

pub fn sym_square_fixtures() -> Vec<SymSquareFixture> {
    // (argument, 2-power, extra denominator, π power); value 2^e/(d·a!)·π^p
    // except for argument 12, which is 2²³/11!.
    let rows: [(i64, i64, i64, u64, i64); 5] = [
        (12, 23, 1, 11, 13),
        (14, 28, 1, 14, 17),
        (16, 31, 3, 16, 21),
        (18, 35, 15, 18, 25),
        (20, 41, 245, 20, 29),
    ];
    rows.iter()
        .map(|&(argument, e, d, f, p)| {
            let q = pow_rat(&int(2), e) / (int(d) * ExactRational::from_integer(factorial(f)));
            SymSquareFixture {
                argument,
                value: PiExact::with_pi_power(q, p),
            }
        })
        .collect()
}

/// `2^{−a} π^{−3a/2} Γ(a) Γ((a−10)/2)`, the completing factor of `L(a, Δ⊗Δ)`.
pub fn dstar_factor(a: i64) -> Result<PiExact, ExactError> {
    let g1 = gamma_exact(HalfInt::from_int(a))?;
    let g2 = gamma_exact(HalfInt::from_twice(a - 10))?;
    let two = PiExact::rational(pow_rat(&int(2), -a));
    Ok(&(&two * &PiExact::pi_pow_half(-3 * a)) * &(&g1 * &g2))
}

/// Moves `L(23−a)` to `L(a)` through `D*(a) = D*(23−a)`.
pub fn transport(value_at_reflected: &PiExact, a: i64) -> Result<PiExact, ExactError> {
    let num = &dstar_factor(23 - a)? * value_at_reflected;
    num.checked_div(&dstar_factor(a)?)
}

/// `L(s+11, Δ⊗Δ)/⟨Δ, Δ⟩`.
pub fn sym_square_value(s: i64) -> Result<PiExact, AssembleError> {
    check_critical(s)?;
    let a = s + 11;
    let fixtures = sym_square_fixtures();
    let lookup = |arg: i64| {
        fixtures
            .iter()
            .find(|f| f.argument == arg)
            .map(|f| f.value.clone())
            .ok_or(AssembleError::NoFixture(arg))
    };
    if a >= 12 {
        lookup(a)
    } else {
        Ok(transport(&lookup(23 - a)?, a)?)
    }
}

/// `1 − 456·2^{−9−s} + 2^{1−2s}`, the Euler factor at 2 removed from the
/// Rankin product with `G₂,₂` (written with `σ = s+10`).
pub fn pair_denominator(s: i64) -> ExactRational {
    ExactRational::one() - int(456) * pow_rat(&int(2), -9 - s) + pow_rat(&int(2), 1 - 2 * s)
}

/// `2^{−k/2}·3^{−1}·2^{1−k/2}·a(2)`.
pub fn trace_constant(k: i64, a2: &ExactRational) -> ExactRational {
    pow_rat(&int(2), -k / 2) * pow_rat(&int(2), 1 - k / 2) * a2 / int(3)
}

/// Recomputes the weight-20 constant from `a(2)` of `g₂₀` and checks it is `19/2¹⁶`.
pub fn trace_constant_check() -> Result<ExactRational, AssembleError> {
    let a2 = g20(3).coeffs()[2].clone();
    let c = trace_constant(20, &a2);
    let expected = int(19) / pow_rat(&int(2), 16);
    if c != expected {
        return Err(AssembleError::TraceMismatch {
            expected: expected.to_string(),
            actual: c.to_string(),
        });
    }
    Ok(c)
}

/// The same constant at weight 12 with `τ(2)`; reported, not asserted.
pub fn trace_constant_weight12() -> ExactRational {
    trace_constant(12, &delta(3).coeffs()[2])
}

/// `L(s+10, g₂₀)L(s+9, g₂₀)/⟨g₂₀, g₂₀⟩`.
pub fn g20_pair_value(s: i64, convention: PoleConvention) -> Result<PiExact, AssembleError> {
    check_critical(s)?;
    let ctx = ProjectionContext::with_convention(s, convention)?;
    let k = k_coefficients(&ctx)?;
    let trace = trace_constant_check()?;
    let combo = k[0].try_add(&k[1].scale(&trace))?;
    let four19 = pow_rat(&int(4), 19);
    let pre = int(3) / int(2) * four19 / ExactRational::from_integer(factorial((ctx.sigma - 1) as u64));
    let denom = pair_denominator(s);
    if denom.is_zero() {
        return Err(ExactError::DivisionByZero.into());
    }
    Ok(PiExact::new(&combo.coeff * pre / denom, combo.half_pi_exp + 38))
}

/// `L(s, F₁₂, St)/(⟨Δ,Δ⟩⟨g₂₀,g₂₀⟩)`.
pub fn main_exact(s: i64, convention: PoleConvention) -> Result<PiExact, AssembleError> {
    Ok(&sym_square_value(s)? * &g20_pair_value(s, convention)?)
}

/// The two Petersson norms that turn table entries into numbers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Norms {
    pub delta: f64,
    pub g20: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalRow {
    pub s: i64,
    pub exact: PiExact,
    pub factored: FactoredRational,
    pub numeric: Option<f64>,
    pub flags: Vec<String>,
}

impl CriticalRow {
    pub fn pi_power(&self) -> Option<i64> {
        self.exact.pi_power()
    }
}

/// Evaluates `value·norm` products through logarithms so large π powers and
/// tiny rationals do not under- or overflow on the way.
pub fn scaled_f64(value: &PiExact, factors: &[f64]) -> f64 {
    if value.is_zero() {
        return 0.0;
    }
    let ln = value.ln_abs() + factors.iter().map(|f| f.abs().ln()).sum::<f64>();
    let sign = value.signum() as f64 * factors.iter().map(|f| f.signum()).product::<f64>();
    sign * ln.exp()
}

pub fn main_table_row(
    s: i64,
    convention: PoleConvention,
    norms: Option<Norms>,
) -> Result<CriticalRow, AssembleError> {
    let exact = main_exact(s, convention)?;
    let factored = factor_rational(&exact.coeff)?;
    let numeric = norms.map(|n| scaled_f64(&exact, &[n.delta, n.g20]));
    let mut flags = Vec::new();
    if g20_pair_value(s, convention)?.signum() <= 0 {
        flags.push("pair-product-not-positive".to_string());
    }
    Ok(CriticalRow {
        s,
        exact,
        factored,
        numeric,
        flags,
    })
}

/// One functional-equation pairing: the exact ratio of the two completed
/// sides, expected to be 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeCertificate {
    pub check: &'static str,
    pub left: i64,
    pub right: i64,
    pub ratio: PiExact,
}

impl FeCertificate {
    pub fn pi_balanced(&self) -> bool {
        self.ratio.half_pi_exp == 0 || self.ratio.is_zero()
    }

    pub fn holds(&self) -> bool {
        self.pi_balanced() && self.ratio.coeff == ExactRational::one()
    }

    /// Prime factorization of the ratio, the human-readable certificate.
    pub fn factored(&self) -> Option<FactoredRational> {
        factor_rational(&self.ratio.coeff).ok()
    }
}

/// `D*(a)/D*(23−a)` for `a = 12, 14, …, 20` and `a = 11`, from a table of
/// `L(s+11, Δ⊗Δ)` values indexed by `s`.
pub fn sym_square_fe_pair_check(
    table: impl Fn(i64) -> Option<PiExact>,
) -> Result<Vec<FeCertificate>, AssembleError> {
    let mut out = Vec::new();
    for (left, right) in [(-8, 9), (-6, 7), (-4, 5), (-2, 3), (0, 1)] {
        let (Some(lo), Some(hi)) = (table(left), table(right)) else {
            continue;
        };
        let (a_lo, a_hi) = (left + 11, right + 11);
        let d_lo = &dstar_factor(a_lo)? * &lo;
        let d_hi = &dstar_factor(a_hi)? * &hi;
        out.push(FeCertificate {
            check: "sym2",
            left: a_lo,
            right: a_hi,
            ratio: d_lo.checked_div(&d_hi)?,
        });
    }
    Ok(out)
}

pub const FE_PAIRS: [(i64, i64); 5] = [(-8, 9), (-6, 7), (-4, 5), (-2, 3), (0, 1)];

/// `(2π)^{−w}Γ(w)` for integer `w ≥ 1`.
fn completion_g20(w: i64) -> Result<PiExact, ExactError> {
    let g = gamma_exact(HalfInt::from_int(w))?;
    Ok(&g * &PiExact::new(pow_rat(&int(2), -w), -2 * w))
}

/// `Λ(s+10)Λ(s+9)/(Λ(11−s)Λ(10−s))` for `g₂₀`, with the pair products taken
/// from `table`; weight 20 forces this to 1.
pub fn g20_fe_pair_check(
    table: impl Fn(i64) -> Option<PiExact>,
) -> Result<Vec<FeCertificate>, AssembleError> {
    let mut out = Vec::new();
    for (s, t) in FE_PAIRS {
        let (Some(ps), Some(pt)) = (table(s), table(t)) else {
            continue;
        };
        let lhs = &(&completion_g20(s + 10)? * &completion_g20(s + 9)?) * &ps;
        let rhs = &(&completion_g20(t + 10)? * &completion_g20(t + 9)?) * &pt;
        out.push(FeCertificate {
            check: "g20",
            left: s,
            right: t,
            ratio: lhs.checked_div(&rhs)?,
        });
    }
    Ok(out)
}

/// Rows whose pair product is not positive. For `s ≤ −2` both L-values sit
/// at points reached from the Euler-product region by the functional
/// equation with positive Γ-factors, so a negative entry is inconsistent.
pub fn g20_sign_flags(table: impl Fn(i64) -> Option<PiExact>) -> Vec<i64> {
    CRITICAL_POINTS
        .iter()
        .copied()
        .filter(|&s| table(s).is_some_and(|v| v.signum() <= 0))
        .collect()
}

/// `2^{−3s} π^{−7s/2} Γ((s+1)/2) Γ(s+9) Γ(s+10) Γ(s+11)`.
pub fn standard_gamma(s: i64) -> Result<PiExact, ExactError> {
    let mut g = PiExact::new(pow_rat(&int(2), -3 * s), -7 * s);
    g = &g * &gamma_exact(HalfInt::from_twice(s + 1))?;
    for shift in [9, 10, 11] {
        g = &g * &gamma_exact(HalfInt::from_int(s + shift))?;
    }
    Ok(g)
}

/// `γ̃(s)V(s)/(γ̃(1−s)V(1−s))` over the five pairs, with `V` read from `table`.
pub fn standard_fe_check(
    table: impl Fn(i64) -> Option<PiExact>,
) -> Result<Vec<FeCertificate>, AssembleError> {
    let mut out = Vec::new();
    for (s, t) in FE_PAIRS {
        let (Some(vs), Some(vt)) = (table(s), table(t)) else {
            continue;
        };
        let lhs = &standard_gamma(s)? * &vs;
        let rhs = &standard_gamma(t)? * &vt;
        out.push(FeCertificate {
            check: "standard",
            left: s,
            right: t,
            ratio: lhs.checked_div(&rhs)?,
        });
    }
    Ok(out)
}

/// Every `(s, value)` of a table, for feeding the checks above.
pub fn pipeline_table(
    f: impl Fn(i64) -> Result<PiExact, AssembleError>,
) -> Result<Vec<(i64, PiExact)>, AssembleError> {
    CRITICAL_POINTS.iter().map(|&s| Ok((s, f(s)?))).collect()
}

pub fn lookup(table: &[(i64, PiExact)]) -> impl Fn(i64) -> Option<PiExact> + '_ {
    move |s| table.iter().find(|r| r.0 == s).map(|r| r.1.clone())
}
