//! Prime factorization of rationals for table rendering.
//!
//! Trial division up to 10⁶, then Pollard–Brent on whatever is left. Primality
//! of cofactors is decided by Miller–Rabin with the first thirteen prime bases,
//! which is deterministic below 3.3·10²⁴; above that a strong Lucas test is added
//! (Baillie–PSW).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, ExactRational};

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Sign and sorted `(prime, exponent)` list; negative exponents sit in the denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    pub sign: i8,
    pub factors: Vec<(BigUint, i64)>,
}

impl FactoredRational {
    pub fn to_rational(&self) -> ExactRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.factors {
            let pe = BigInt::from(p.pow(e.unsigned_abs() as u32));
            if *e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        if self.sign < 0 {
            num = -num;
        }
        BigRational::new(num, den)
    }

    pub fn numerator_factors(&self) -> impl Iterator<Item = (&BigUint, i64)> {
        self.factors.iter().filter(|f| f.1 > 0).map(|(p, e)| (p, *e))
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&BigUint, i64)> {
        self.factors.iter().filter(|f| f.1 < 0).map(|(p, e)| (p, -*e))
    }
}

fn write_product<'a>(
    f: &mut fmt::Formatter<'_>,
    it: impl Iterator<Item = (&'a BigUint, i64)>,
) -> Result<usize, fmt::Error> {
    let mut count = 0;
    for (p, e) in it {
        if count > 0 {
            write!(f, "·")?;
        }
        if e == 1 {
            write!(f, "{p}")?;
        } else {
            write!(f, "{p}^{e}")?;
        }
        count += 1;
    }
    Ok(count)
}

/// Renders e.g. `-2^31·17·11411/(3·5^2·7)`; the denominator is parenthesised
/// when it has more than one prime.
impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.numerator_factors().next().is_none() {
            write!(f, "1")?;
        } else {
            write_product(f, self.numerator_factors())?;
        }
        let den_count = self.denominator_factors().count();
        if den_count > 0 {
            write!(f, "/")?;
            if den_count > 1 {
                write!(f, "(")?;
            }
            write_product(f, self.denominator_factors())?;
            if den_count > 1 {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

/// Parses the [`Display`](fmt::Display) form back. `*` is accepted for `·` and
/// the listed bases need not be prime; the result is re-factored.
impl FromStr for FactoredRational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse {
            what: "factored rational",
            input: s.to_string(),
        };
        let t = s.trim();
        let (negative, body) = match t.strip_prefix(['-', '−']) {
            Some(rest) => (true, rest.trim_start()),
            None => (false, t),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (body, None),
        };
        let product = |part: &str| -> Result<BigUint, ExactError> {
            let part = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .unwrap_or(part);
            let mut acc = BigUint::one();
            for factor in part.split(['·', '*']) {
                let factor = factor.trim();
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b.trim(), e.trim()),
                    None => (factor, "1"),
                };
                if base.is_empty() || !base.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                if exp.is_empty() || exp.len() > 4 || !exp.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                let base: BigUint = base.parse().map_err(|_| bad())?;
                let exp: u32 = exp.parse().map_err(|_| bad())?;
                if base.bits().saturating_mul(exp as u64) > 1 << 16 {
                    return Err(bad());
                }
                acc *= base.pow(exp);
            }
            Ok(acc)
        };
        let n = product(num)?;
        let d = match den {
            Some(d) => product(d)?,
            None => BigUint::one(),
        };
        if n.is_zero() || d.is_zero() {
            return Err(bad());
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        let q = BigRational::new(BigInt::from_biguint(sign, n), BigInt::from(d));
        factor_rational(&q)
    }
}

/// Complete factorization of a nonzero rational.
pub fn factor_rational(q: &ExactRational) -> Result<FactoredRational, ExactError> {
    if q.is_zero() {
        return Err(ExactError::FactorZero);
    }
    let mut factors: Vec<(BigUint, i64)> = Vec::new();
    for (p, e) in factor_integer(q.numer().magnitude()) {
        factors.push((p, e as i64));
    }
    for (p, e) in factor_integer(q.denom().magnitude()) {
        factors.push((p, -(e as i64)));
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(FactoredRational {
        sign: if q.is_negative() { -1 } else { 1 },
        factors,
    })
}

/// Prime factorization of a positive integer as sorted `(prime, exponent)` pairs.
/// `1` (and `0`) give an empty list.
pub fn factor_integer(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() || n.is_one() {
        return out;
    }
    let mut rest = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if !rest.is_one() {
        let mut big = Vec::new();
        split_cofactor(rest, &mut big);
        big.sort();
        for p in big {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn split_cofactor(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    let limit = BigUint::from(TRIAL_LIMIT);
    if n <= &limit * &limit || is_prime(&n) {
        out.push(n);
        return;
    }
    let d = match n.to_u64() {
        Some(v) => BigUint::from(pollard_brent_u64(v)),
        None => pollard_brent_big(&n),
    };
    let other = &n / &d;
    split_cofactor(d, out);
    split_cofactor(other, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn pollard_brent_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut g, mut x, mut ys) = (1u64, 0u64, 0u64);
        const M: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn pollard_brent_big(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = BigUint::zero();
        let mut ys = BigUint::zero();
        const M: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    y = f(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}

const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = &x * &x % n;
        if x == n1 {
            return true;
        }
    }
    false
}

fn strong_probable_prime_u64(n: u64, a: u64) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let nb = BigInt::from(n.clone());
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, &nb) {
            -1 => break,
            0 => {
                if d.abs() != nb {
                    return false;
                }
            }
            _ => {}
        }
        d = if d.is_positive() { -d - 2 } else { -d + 2 };
        if d.abs() > BigInt::from(1_000_000) {
            // perfect squares never produce −1
            return false;
        }
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let np1: BigInt = &nb + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let dd = &np1 >> s;
    let md = |x: BigInt| x.mod_floor(&nb);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &nb } else { x };
        md(x / 2)
    };
    // binary Lucas chain for U_dd, V_dd
    let (mut u, mut v, mut qk) = (BigInt::one(), p.clone(), md(q.clone()));
    let bits = dd.bits();
    for i in (0..bits - 1).rev() {
        u = md(&u * &v);
        v = md(&v * &v - &qk * 2);
        qk = md(&qk * &qk);
        if dd.bit(i) {
            let u2 = half(&p * &u + &v);
            let v2 = half(&d * &u + &p * &v);
            u = u2;
            v = v2;
            qk = md(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = md(&v * &v - &qk * 2);
        if v.is_zero() {
            return true;
        }
        qk = md(&qk * &qk);
    }
    false
}

/// Primality test; exact below 3.3·10²⁴, Baillie–PSW above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        if v < 2 {
            return false;
        }
        for &p in &MR_BASES {
            let p = p as u64;
            if v == p {
                return true;
            }
            if v % p == 0 {
                return false;
            }
        }
        return MR_BASES
            .iter()
            .all(|&a| strong_probable_prime_u64(v, a as u64));
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let deterministic_bound = BigUint::from(3_317_044_064_679_887_385_961_981u128);
    let mr = MR_BASES
        .iter()
        .all(|&a| strong_probable_prime(n, &BigUint::from(a)));
    match n.cmp(&deterministic_bound) {
        Ordering::Less => mr,
        _ => mr && strong_lucas(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn fr(q: &ExactRational) -> FactoredRational {
        factor_rational(q).unwrap()
    }

    #[test]
    fn small_examples() {
        let f = fr(&int(456));
        assert_eq!(f.to_string(), "2^3·3·19");
        let one = fr(&int(1));
        assert!(one.factors.is_empty());
        assert_eq!(one.sign, 1);
        assert_eq!(one.to_string(), "1");
        assert_eq!(factor_rational(&int(0)), Err(ExactError::FactorZero));
    }

    #[test]
    fn table_style_rendering() {
        let q = rat(-479626345744384, 1177605);
        let f = fr(&q);
        assert_eq!(f.to_rational(), q);
        assert_eq!(f.sign, -1);
        let q = int(1 << 24) * int(392033) / int(243 * 125 * 7 * 17 * 19);
        assert_eq!(fr(&q).to_string(), "2^24·392033/(3^5·5^3·7·17·19)");
        assert_eq!(fr(&rat(9, 35)).to_string(), "3^2/(5·7)");
        assert_eq!(fr(&rat(1, 8)).to_string(), "1/2^3");
    }

    #[test]
    fn large_primes_split() {
        // 6782351 and 1207259 exceed the trial-division limit
        let n = BigUint::from(6782351u64 * 1207259u64);
        let f = factor_integer(&n);
        assert_eq!(
            f,
            vec![(BigUint::from(1207259u32), 1), (BigUint::from(6782351u32), 1)]
        );
        // a 96-bit product of ~32-bit primes
        let p = BigUint::from(4_294_967_311u64);
        let q = BigUint::from(4_294_967_291u64);
        assert!(is_prime(&p) && is_prime(&q));
        let f = factor_integer(&(&p * &q * &p));
        assert_eq!(f, vec![(q.clone(), 1), (p.clone(), 2)]);
    }

    #[test]
    fn primality() {
        assert!(is_prime(&BigUint::from(2u32)));
        assert!(!is_prime(&BigUint::from(1u32)));
        assert!(!is_prime(&BigUint::from(3215031751u64))); // strong pseudoprime to 2,3,5,7
        let m61 = (BigUint::one() << 61) - 1u32;
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime(&m61));
        assert!(is_prime(&m127));
        assert!(!is_prime(&(&m61 * &m127)));
        let m89 = (BigUint::one() << 89) - 1u32;
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 * &m89)));
    }

    #[test]
    fn parse_roundtrip() {
        let s = "-2^31·17·11411·1207259/(3·5^2·7·11·13·61)";
        let f: FactoredRational = s.parse().unwrap();
        assert_eq!(f.to_string(), s);
        let g: FactoredRational = "12*5/9".parse().unwrap();
        assert_eq!(g.to_rational(), rat(20, 3));
        assert!("2^".parse::<FactoredRational>().is_err());
        assert!("0/3".parse::<FactoredRational>().is_err());
        assert!("a·b".parse::<FactoredRational>().is_err());
    }
}
