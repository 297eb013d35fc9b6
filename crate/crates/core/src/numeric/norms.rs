use crate::exact::{bernoulli, factorial, int, pow_rat, zeta_exact, ExactRational, PiExact};

use super::{lvalue_level1, CuspForm, NumericError, NumericValue};

/// `α_m = −2m/B_m`.
pub fn rankin_alpha(m: i64) -> ExactRational {
    int(-2 * m) / bernoulli(m as u32)
}

/// `(4π)^{1−k}(k−2)!/ζ(l) · α_r/(α_l + α_r − α_k)` with `r = k − l`.
pub fn rankin_prefactor(k: i64, l: i64) -> Result<PiExact, NumericError> {
    let r = k - l;
    if CuspForm::from_weight(k).is_none() || r % 2 != 0 || r < 4 || r > k / 2 - 2 {
        return Err(NumericError::InvalidNormPair { k, l });
    }
    let alpha = rankin_alpha(r) / (rankin_alpha(l) + rankin_alpha(r) - rankin_alpha(k));
    let four_pi = PiExact::new(pow_rat(&int(4), 1 - k), 2 * (1 - k));
    let fact = ExactRational::from_integer(factorial((k - 2) as u64));
    let pre = four_pi.scale(&(fact * alpha));
    Ok(pre.checked_div(&zeta_exact(l)?)?)
}

/// `⟨f, f⟩` for the weight-`k` eigenform from `L(k−1, f)L(l, f)`.
pub fn petersson_norm(k: i64, l: i64) -> Result<NumericValue, NumericError> {
    let pre = rankin_prefactor(k, l)?;
    let form = CuspForm::from_weight(k).ok_or(NumericError::InvalidNormPair { k, l })?;
    let lk = lvalue_level1(form, k - 1)?;
    let ll = lvalue_level1(form, l)?;
    Ok(lk.mul(ll).scale(pre.to_f64()))
}
