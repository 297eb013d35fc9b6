use std::f64::consts::PI;

use super::sym2::divisor_bound_constant;
use super::{CuspForm, NumericError, NumericValue};

/// Terms of the approximate functional equation; `e^{−2πN}` is far below
/// double precision long before this.
pub const AFE_TERMS: usize = 64;

/// `y^{−s} Γ(s, y)` for integer `s ≥ 1`, from the finite sum
/// `Γ(s, y) = (s−1)! e^{−y} Σ_{j<s} y^j/j!`. All terms are positive.
pub fn incomplete_gamma_scaled(s: i64, y: f64) -> f64 {
    assert!(s >= 1);
    let mut term = 1.0 / y;
    let mut sum = term;
    for j in (1..s).rev() {
        term *= j as f64 / y;
        sum += term;
    }
    sum * (-y).exp()
}

/// `Λ(w) = (2π)^{−w} Γ(w) L(w)` for a level-1 form with root number +1.
pub fn completed_level1(form: CuspForm, w: i64) -> Result<NumericValue, NumericError> {
    let k = form.weight();
    if w < 1 || w > k - 1 {
        return Err(NumericError::OutsideStrip { w, k });
    }
    let a = form.coefficients(AFE_TERMS);
    let mut value = 0.0;
    let mut magnitude = 0.0;
    // smallest terms first
    for n in (1..=AFE_TERMS).rev() {
        let y = 2.0 * PI * n as f64;
        let t = a[n] * (incomplete_gamma_scaled(w, y) + incomplete_gamma_scaled(k - w, y));
        value += t;
        magnitude += t.abs();
    }
    // |a(n)| ≤ 2 n^{k/2} and y^{−s}Γ(s,y) ≤ s e^{−y}/y once y ≥ s
    let n1 = (AFE_TERMS + 1) as f64;
    let first = 2.0 * k as f64 * n1.powf(k as f64 / 2.0) * (-2.0 * PI * n1).exp() / (2.0 * PI * n1);
    let ratio = (-2.0 * PI).exp() * (1.0 + 1.0 / n1).powf(k as f64 / 2.0);
    let tail = first / (1.0 - ratio);
    let rounding = (2 * k + 8) as f64 * f64::EPSILON * magnitude;
    Ok(NumericValue::new(value, tail + rounding))
}

/// `L(w)` for integer `1 ≤ w ≤ k−1`.
pub fn lvalue_level1(form: CuspForm, w: i64) -> Result<NumericValue, NumericError> {
    let lambda = completed_level1(form, w)?;
    let gamma: f64 = (1..w).map(|i| i as f64).product();
    Ok(lambda.scale((2.0 * PI).powi(w as i32) / gamma))
}

/// `Σ_{n≤N} a(n) n^{−w}` with a Deligne-bound tail, for `w > (k+1)/2 + 1/3`.
pub fn direct_dirichlet_sum(form: CuspForm, w: i64, terms: usize) -> Result<NumericValue, NumericError> {
    let k = form.weight();
    let e = (k - 1) as f64 / 2.0 + 1.0 / 3.0 - w as f64;
    if e >= -1.0 {
        return Err(NumericError::Argument(w));
    }
    let a = form.coefficients(terms);
    let mut value = 0.0;
    let mut magnitude = 0.0;
    for n in (1..=terms).rev() {
        let t = a[n] * (n as f64).powi(-(w as i32));
        value += t;
        magnitude += t.abs();
    }
    let nf = terms as f64;
    let tail = divisor_bound_constant(3) * nf.powf(e + 1.0) / (-e - 1.0);
    let rounding = nf.log2().ceil().max(1.0) * 4.0 * f64::EPSILON * magnitude + terms as f64 * f64::EPSILON * value.abs();
    Ok(NumericValue::new(value, tail + rounding))
}
