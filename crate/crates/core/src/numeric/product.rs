use crate::assemble::{dstar_factor, scaled_f64, sym_square_fixtures};
use crate::holproj::CRITICAL_POINTS;

use super::{lvalue_level1, petersson_norm, sym_square_numeric, CuspForm, NumericError, NumericValue};

/// Where the `L(s+11, Δ⊗Δ)` factor of a numeric product came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumericSource {
    /// Rankin–Selberg Dirichlet series at the argument itself.
    Dirichlet,
    /// Dirichlet series at `23 − a`, moved over by the exact `D*` factors.
    Transported,
    /// The closed form at argument 12 times the numeric `⟨Δ, Δ⟩`, moved to 11 when needed.
    Fixture,
}

/// `L(s+10, g₂₀)L(s+9, g₂₀)` from the approximate functional equation.
pub fn g20_pair_numeric(s: i64) -> Result<NumericValue, NumericError> {
    Ok(lvalue_level1(CuspForm::G20, s + 10)?.mul(lvalue_level1(CuspForm::G20, s + 9)?))
}

fn sym_square_at(a: i64) -> Result<(NumericValue, NumericSource), NumericError> {
    match a {
        14..=20 => Ok((sym_square_numeric(a)?, NumericSource::Dirichlet)),
        12 => {
            let fixture = sym_square_fixtures()
                .into_iter()
                .find(|f| f.argument == 12)
                .expect("argument 12 fixture");
            let norm = petersson_norm(12, 8)?;
            Ok((norm.scale(fixture.value.to_f64()), NumericSource::Fixture))
        }
        3..=11 => {
            let (right, src) = sym_square_at(23 - a)?;
            let ratio = dstar_factor(23 - a)?.checked_div(&dstar_factor(a)?)?;
            let src = if src == NumericSource::Fixture { src } else { NumericSource::Transported };
            Ok((right.scale(scaled_f64(&ratio, &[])), src))
        }
        _ => Err(NumericError::Argument(a)),
    }
}

/// `L(s+11, Δ⊗Δ)·L(s+10, g₂₀)·L(s+9, g₂₀)`, computed without the
/// holomorphic-projection tables.
pub fn main_numeric_product(s: i64) -> Result<(NumericValue, NumericSource), NumericError> {
    if !CRITICAL_POINTS.contains(&s) {
        return Err(NumericError::Argument(s));
    }
    let (sym, src) = sym_square_at(s + 11)?;
    Ok((sym.mul(g20_pair_numeric(s)?), src))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sources() {
        assert!(main_numeric_product(2).is_err());
        assert_eq!(main_numeric_product(1).unwrap().1, NumericSource::Fixture);
        assert_eq!(main_numeric_product(0).unwrap().1, NumericSource::Fixture);
    }

    #[test]
    fn pair_product_positive_everywhere() {
        for s in CRITICAL_POINTS {
            assert!(g20_pair_numeric(s).unwrap().value > 0.0, "s={s}");
        }
    }
}
