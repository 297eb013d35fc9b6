use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{format_rational, pow_rat, ExactError, ExactRational};

/// `coeff · π^(half_pi_exp / 2)`.
///
/// Exponents are counted in half units so that `Γ(1/2) = √π` and the
/// `π^(−7s/2)` gamma factor of the standard L-function stay exact.
#[derive(Clone, Debug)]
pub struct PiExact {
    pub coeff: ExactRational,
    pub half_pi_exp: i64,
}

impl PiExact {
    pub fn new(coeff: ExactRational, half_pi_exp: i64) -> Self {
        Self { coeff, half_pi_exp }
    }

    pub fn rational(coeff: ExactRational) -> Self {
        Self::new(coeff, 0)
    }

    /// `coeff · π^pi_exp` with a whole-number exponent.
    pub fn with_pi_power(coeff: ExactRational, pi_exp: i64) -> Self {
        Self::new(coeff, 2 * pi_exp)
    }

    pub fn zero() -> Self {
        Self::rational(ExactRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(ExactRational::one())
    }

    /// `π^(half/2)`.
    pub fn pi_pow_half(half: i64) -> Self {
        Self::new(ExactRational::one(), half)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The π exponent as a whole number, if it is one.
    pub fn pi_power(&self) -> Option<i64> {
        (self.half_pi_exp % 2 == 0).then_some(self.half_pi_exp / 2)
    }

    pub fn try_add(&self, rhs: &PiExact) -> Result<PiExact, ExactError> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.half_pi_exp != rhs.half_pi_exp {
            return Err(ExactError::ExponentMismatch(
                self.half_pi_exp,
                rhs.half_pi_exp,
            ));
        }
        Ok(PiExact::new(&self.coeff + &rhs.coeff, self.half_pi_exp))
    }

    pub fn try_sub(&self, rhs: &PiExact) -> Result<PiExact, ExactError> {
        self.try_add(&-rhs)
    }

    pub fn checked_div(&self, rhs: &PiExact) -> Result<PiExact, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(PiExact::new(
            &self.coeff / &rhs.coeff,
            self.half_pi_exp - rhs.half_pi_exp,
        ))
    }

    pub fn scale(&self, q: &ExactRational) -> PiExact {
        PiExact::new(&self.coeff * q, self.half_pi_exp)
    }

    pub fn recip(&self) -> Result<PiExact, ExactError> {
        PiExact::one().checked_div(self)
    }

    pub fn powi(&self, exp: i64) -> Result<PiExact, ExactError> {
        if exp < 0 && self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(PiExact::new(
            pow_rat(&self.coeff, exp),
            self.half_pi_exp * exp,
        ))
    }

    /// Floating-point value; π is taken as `std::f64::consts::PI`.
    pub fn to_f64(&self) -> f64 {
        self.coeff_f64() * std::f64::consts::PI.powf(self.half_pi_exp as f64 / 2.0)
    }

    /// Natural logarithm of `|value|`, robust for coefficients outside the f64 range.
    pub fn ln_abs(&self) -> f64 {
        ln_abs_rational(&self.coeff)
            + self.half_pi_exp as f64 / 2.0 * std::f64::consts::PI.ln()
    }

    pub fn coeff_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN)
    }

    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_positive() {
            1
        } else {
            -1
        }
    }
}

pub(crate) fn ln_abs_rational(q: &ExactRational) -> f64 {
    fn ln_big(n: &num_bigint::BigInt) -> f64 {
        let bits = n.bits();
        if bits < 1000 {
            return n.to_f64().unwrap().abs().ln();
        }
        let shift = bits - 64;
        let top: num_bigint::BigInt = n.abs() >> shift;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_big(q.numer()) - ln_big(q.denom())
}

impl PartialEq for PiExact {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.half_pi_exp == other.half_pi_exp && self.coeff == other.coeff
    }
}

impl Eq for PiExact {}

impl Neg for &PiExact {
    type Output = PiExact;
    fn neg(self) -> PiExact {
        PiExact::new(-&self.coeff, self.half_pi_exp)
    }
}

impl Neg for PiExact {
    type Output = PiExact;
    fn neg(self) -> PiExact {
        -&self
    }
}

impl Mul for &PiExact {
    type Output = PiExact;
    fn mul(self, rhs: &PiExact) -> PiExact {
        PiExact::new(&self.coeff * &rhs.coeff, self.half_pi_exp + rhs.half_pi_exp)
    }
}

impl Mul for PiExact {
    type Output = PiExact;
    fn mul(self, rhs: PiExact) -> PiExact {
        &self * &rhs
    }
}

impl Mul<&ExactRational> for &PiExact {
    type Output = PiExact;
    fn mul(self, rhs: &ExactRational) -> PiExact {
        self.scale(rhs)
    }
}

/// Panics on a zero divisor; use [`PiExact::checked_div`] when that is possible.
impl Div for &PiExact {
    type Output = PiExact;
    fn div(self, rhs: &PiExact) -> PiExact {
        self.checked_div(rhs).expect("PiExact division by zero")
    }
}

impl fmt::Display for PiExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = format_rational(&self.coeff);
        if self.half_pi_exp == 0 || self.is_zero() {
            return write!(f, "{c}");
        }
        let e = if self.half_pi_exp % 2 == 0 {
            format!("{}", self.half_pi_exp / 2)
        } else {
            format!("({}/2)", self.half_pi_exp)
        };
        write!(f, "{c}·π^{e}")
    }
}
