use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{int, pow_rat, ExactError, ExactRational, PiExact};

/// An integer or half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_int(n: i64) -> Self {
        Self(2 * n)
    }

    pub const fn from_twice(t: i64) -> Self {
        Self(t)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_rational(self) -> ExactRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(2))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

const BERNOULLI_TABLE: usize = 160;

fn bernoulli_table() -> &'static [ExactRational] {
    static TABLE: OnceLock<Vec<ExactRational>> = OnceLock::new();
    TABLE.get_or_init(|| akiyama_tanigawa(BERNOULLI_TABLE as u32 - 1))
}

// `B_0 ..= B_n`, read off the first cell after each step. Akiyama–Tanigawa
// produces B_1 = +1/2; the sign is flipped by the caller.
fn akiyama_tanigawa(n: u32) -> Vec<ExactRational> {
    let mut a: Vec<ExactRational> = Vec::with_capacity(n as usize + 1);
    let mut out = Vec::with_capacity(n as usize + 1);
    for m in 0..=n as i64 {
        a.push(ExactRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m as usize).rev() {
            let d = &a[j - 1] - &a[j];
            a[j - 1] = d * int(j as i64);
        }
        out.push(a[0].clone());
    }
    out
}

/// Bernoulli number `B_n` with the convention `B_1 = −1/2`.
pub fn bernoulli(n: u32) -> ExactRational {
    let b = if (n as usize) < BERNOULLI_TABLE {
        bernoulli_table()[n as usize].clone()
    } else {
        akiyama_tanigawa(n).swap_remove(n as usize)
    };
    if n == 1 {
        -b
    } else {
        b
    }
}

/// Exact `Γ(x)` for integer or half-integer `x`. Half-integers carry `√π`.
pub fn gamma_exact(x: HalfInt) -> Result<PiExact, ExactError> {
    if x.is_integer() {
        let n = x.twice() / 2;
        if n <= 0 {
            return Err(ExactError::GammaPole(x));
        }
        return Ok(PiExact::rational(BigRational::from_integer(factorial(
            (n - 1) as u64,
        ))));
    }
    // walk from Γ(1/2) = √π with Γ(x+1) = xΓ(x)
    let mut coeff = ExactRational::one();
    let mut t = 1i64; // twice the current argument
    while t < x.twice() {
        coeff *= BigRational::new(BigInt::from(t), BigInt::from(2));
        t += 2;
    }
    while t > x.twice() {
        t -= 2;
        coeff /= BigRational::new(BigInt::from(t), BigInt::from(2));
    }
    Ok(PiExact::new(coeff, 1))
}

/// `1/Γ(n)` for an integer `n`, zero at the poles `n ≤ 0`.
pub fn reciprocal_gamma_int(n: i64) -> ExactRational {
    if n <= 0 {
        ExactRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial((n - 1) as u64))
    }
}

/// Exact `ζ(n)` at an integer: even positive arguments give a rational multiple
/// of `π^n`, nonpositive arguments are rational. Odd `n > 1` is refused.
pub fn zeta_exact(n: i64) -> Result<PiExact, ExactError> {
    match n {
        1 => Err(ExactError::ZetaPole),
        0 => Ok(PiExact::rational(BigRational::new(
            BigInt::from(-1),
            BigInt::from(2),
        ))),
        n if n < 0 => {
            let m = 1 - n;
            Ok(PiExact::rational(-bernoulli(m as u32) / int(m)))
        }
        n if n % 2 == 1 => Err(ExactError::IrrationalOddZeta(n)),
        n => {
            let sign = if (n / 2) % 2 == 1 { 1 } else { -1 };
            let coeff = bernoulli(n as u32) * int(sign) * pow_rat(&int(2), n)
                / BigRational::from_integer(factorial(n as u64) * 2);
            Ok(PiExact::with_pi_power(coeff, n))
        }
    }
}

/// `ζ(n; a, N) = Σ_{0 < m ≡ a (mod N)} m^{−n}` for `N ∈ {1, 2}`.
pub fn partial_zeta_exact(n: i64, residue: i64, modulus: i64) -> Result<PiExact, ExactError> {
    let two_pow = pow_rat(&int(2), -n);
    match (modulus, residue.rem_euclid(modulus.max(1))) {
        (1, _) => zeta_exact(n),
        (2, 0) => {
            let z = zeta_exact(n)?;
            Ok(z.scale(&two_pow))
        }
        (2, 1) => {
            let factor = ExactRational::one() - two_pow;
            if factor.is_zero() {
                // (1 − 2⁰)ζ(0) = 0; avoid the ζ(1) pole check being reached needlessly
                return Ok(PiExact::zero());
            }
            let z = zeta_exact(n)?;
            Ok(z.scale(&factor))
        }
        _ => Err(ExactError::UnsupportedModulus { residue, modulus }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    // Σ_{k≤n} C(n+1,k) B_k = 0, solved for B_n.
    fn bernoulli_by_recurrence(limit: usize) -> Vec<ExactRational> {
        let mut b: Vec<ExactRational> = vec![ExactRational::one()];
        for n in 1..=limit as u64 {
            let mut s = ExactRational::zero();
            for (k, bk) in b.iter().enumerate() {
                s += BigRational::from_integer(binomial(n + 1, k as u64)) * bk;
            }
            b.push(-s / BigRational::from_integer(binomial(n + 1, n)));
        }
        b
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(3), int(0));
        let oracle = bernoulli_by_recurrence(70);
        for (n, b) in oracle.iter().enumerate() {
            assert_eq!(&bernoulli(n as u32), b, "B_{n}");
        }
    }

    #[test]
    fn bernoulli_past_table() {
        let n = BERNOULLI_TABLE as u32 + 2;
        assert_eq!(bernoulli(n), bernoulli_by_recurrence(n as usize)[n as usize]);
        assert!(bernoulli(n + 1).is_zero());
    }

    #[test]
    fn gamma_values() {
        assert_eq!(
            gamma_exact(HalfInt::from_int(5)).unwrap(),
            PiExact::rational(int(24))
        );
        assert_eq!(
            gamma_exact(HalfInt::from_twice(1)).unwrap(),
            PiExact::new(int(1), 1)
        );
        assert_eq!(
            gamma_exact(HalfInt::from_twice(-7)).unwrap(),
            PiExact::new(rat(16, 105), 1)
        );
        assert_eq!(
            gamma_exact(HalfInt::from_int(0)),
            Err(ExactError::GammaPole(HalfInt::from_int(0)))
        );
        assert!(gamma_exact(HalfInt::from_int(-3)).is_err());
    }

    #[test]
    fn reciprocal_gamma() {
        assert_eq!(reciprocal_gamma_int(4), rat(1, 6));
        assert_eq!(reciprocal_gamma_int(0), int(0));
        assert_eq!(reciprocal_gamma_int(-5), int(0));
        assert_eq!(reciprocal_gamma_int(1), int(1));
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_exact(2).unwrap(), PiExact::new(rat(1, 6), 4));
        assert_eq!(zeta_exact(4).unwrap(), PiExact::new(rat(1, 90), 8));
        assert_eq!(zeta_exact(0).unwrap(), PiExact::rational(rat(-1, 2)));
        assert_eq!(zeta_exact(-1).unwrap(), PiExact::rational(rat(-1, 12)));
        assert_eq!(zeta_exact(-3).unwrap(), PiExact::rational(rat(1, 120)));
        assert_eq!(zeta_exact(-2).unwrap(), PiExact::zero());
        assert_eq!(zeta_exact(1), Err(ExactError::ZetaPole));
        assert_eq!(zeta_exact(3), Err(ExactError::IrrationalOddZeta(3)));
    }

    #[test]
    fn zeta_negative_matches_bernoulli() {
        for n in (2..=60).step_by(2) {
            let direct = -bernoulli(n as u32) / int(n);
            assert_eq!(zeta_exact(1 - n).unwrap(), PiExact::rational(direct));
        }
    }

    #[test]
    fn zeta_even_float() {
        let z = zeta_exact(12).unwrap().to_f64();
        let direct: f64 = (1..2000).map(|n| (n as f64).powi(-12)).sum();
        assert!((z - direct).abs() < 1e-15);
    }

    #[test]
    fn partial_zeta_values() {
        assert_eq!(
            partial_zeta_exact(2, 0, 2).unwrap(),
            PiExact::new(rat(1, 24), 4)
        );
        assert_eq!(partial_zeta_exact(0, 1, 2).unwrap(), PiExact::zero());
        assert_eq!(
            partial_zeta_exact(-1, 0, 2).unwrap(),
            PiExact::rational(rat(-1, 6))
        );
        assert_eq!(
            partial_zeta_exact(2, 1, 2).unwrap(),
            PiExact::new(rat(1, 8), 4)
        );
        assert_eq!(partial_zeta_exact(2, 1, 1).unwrap(), zeta_exact(2).unwrap());
        assert!(matches!(
            partial_zeta_exact(2, 1, 3),
            Err(ExactError::UnsupportedModulus { .. })
        ));
        assert_eq!(partial_zeta_exact(3, 0, 2), Err(ExactError::IrrationalOddZeta(3)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
