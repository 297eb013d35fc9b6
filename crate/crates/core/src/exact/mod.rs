//! Exact arithmetic substrate.
//!
//! Everything exact in the crate lives over [`ExactRational`]. Quantities that
//! carry a transcendental factor are represented as a rational multiple of a
//! half-integral power of π ([`PiExact`]), which is closed under the products
//! and quotients of Γ and ζ values that appear in critical L-values.

mod factor;
mod pi;
mod special;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use factor::{factor_integer, factor_rational, is_prime, FactoredRational};
pub use pi::PiExact;
pub use special::{
    bernoulli, binomial, factorial, gamma_exact, partial_zeta_exact, reciprocal_gamma_int,
    zeta_exact, HalfInt,
};

/// Arbitrary-precision fraction in lowest terms with positive denominator.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("Γ has a pole at {0}")]
    GammaPole(HalfInt),
    #[error("ζ has a pole at 1")]
    ZetaPole,
    #[error("ζ({0}) at an odd integer > 1 is not a rational multiple of a power of π")]
    IrrationalOddZeta(i64),
    #[error("cannot add π^({0}/2) and π^({1}/2) terms")]
    ExponentMismatch(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no prime factorization")]
    FactorZero,
    #[error("partial zeta only supports modulus 1 or 2 (got residue {residue} mod {modulus})")]
    UnsupportedModulus { residue: i64, modulus: i64 },
    #[error("malformed {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

/// Shorthand for building an exact rational from two machine integers.
pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `base^exp` for a possibly negative exponent.
pub fn pow_rat(base: &ExactRational, exp: i64) -> ExactRational {
    use num_traits::{One, Pow};
    if exp == 0 {
        return ExactRational::one();
    }
    let p = Pow::pow(base, exp.unsigned_abs());
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

/// Parses `"n"` or `"n/d"` (optional sign, ASCII digits, nonzero denominator).
pub fn parse_rational(s: &str) -> Result<ExactRational, ExactError> {
    let bad = || ExactError::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let parse_int = |x: &str| -> Result<BigInt, ExactError> {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    let num = parse_int(n)?;
    let den = match d {
        Some(d) => parse_int(d)?,
        None => BigInt::from(1),
    };
    if num_traits::Zero::is_zero(&den) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical `num/den` rendering (`num` alone when the denominator is 1).
pub fn format_rational(q: &ExactRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 17 ").unwrap(), int(17));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/").is_err());
        assert!(parse_rational("--1").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&rat(10, -4)), "-5/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_rat(&int(2), -3), rat(1, 8));
        assert_eq!(pow_rat(&rat(2, 3), 2), rat(4, 9));
        assert_eq!(pow_rat(&rat(2, 3), 0), int(1));
    }
}
