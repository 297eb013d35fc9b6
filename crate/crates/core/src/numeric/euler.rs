use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qexp::{g20, g2_level};

use super::{lvalue_level1, zeta_f64, CuspForm, NumericError, NumericValue};

/// Roots of `1 − a(p)X + p^{k−1}X² = (1 − αX)(1 − α′X)`, as `(re, im)` pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerFactorPair {
    pub p: u64,
    pub alpha: (f64, f64),
    pub alpha_prime: (f64, f64),
}

impl EulerFactorPair {
    pub fn new(p: u64, ap: f64, k: i64) -> Self {
        let norm = (p as f64).powi(k as i32 - 1);
        let disc = ap * ap - 4.0 * norm;
        let (alpha, alpha_prime) = if disc < 0.0 {
            let im = (-disc).sqrt() / 2.0;
            ((ap / 2.0, im), (ap / 2.0, -im))
        } else {
            let r = disc.sqrt();
            (((ap + r) / 2.0, 0.0), ((ap - r) / 2.0, 0.0))
        };
        Self { p, alpha, alpha_prime }
    }

    pub fn sum(&self) -> (f64, f64) {
        (self.alpha.0 + self.alpha_prime.0, self.alpha.1 + self.alpha_prime.1)
    }

    pub fn product(&self) -> (f64, f64) {
        let (a, b) = self.alpha;
        let (c, d) = self.alpha_prime;
        (a * c - b * d, a * d + b * c)
    }
}

fn primes_up_to(n: usize) -> Vec<u64> {
    (2..=n as u64)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// Dirichlet coefficients `c(1..=n)` (index 0 unused) of the Euler product
/// whose local factor at `p` is the power series `local(p)` in `X = p^{−s}`.
fn euler_product(n: usize, local: impl Fn(u64, usize) -> Vec<BigInt>) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n + 1];
    c[1] = BigInt::one();
    for p in primes_up_to(n) {
        let mut deg = 0;
        let mut pr = 1usize;
        while pr * p as usize <= n {
            pr *= p as usize;
            deg += 1;
        }
        let series = local(p, deg);
        let mut next = vec![BigInt::zero(); n + 1];
        for m in 1..=n {
            if c[m].is_zero() {
                continue;
            }
            let mut pe = 1usize;
            for coeff in series.iter().take(deg + 1) {
                if m * pe > n {
                    break;
                }
                next[m * pe] += &c[m] * coeff;
                pe *= p as usize;
            }
        }
        c = next;
    }
    c
}

/// Power series of `1/(1 − γX)` multiplied into `acc`, to degree `deg`.
fn times_geometric(acc: &mut [BigInt], gamma: &BigInt) {
    for i in 1..acc.len() {
        let prev = &acc[i - 1] * gamma;
        acc[i] += prev;
    }
}

fn times_poly(acc: &[BigInt], poly: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); acc.len()];
    for (i, a) in acc.iter().enumerate() {
        for (j, q) in poly.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] += a * q;
            }
        }
    }
    out
}

/// Integer Satake parameters `(α_p, α′_p)` and `(β_p, β′_p)` for each prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeData {
    pub primes: Vec<u64>,
    pub alpha: Vec<[i64; 2]>,
    pub beta: Vec<[i64; 2]>,
}

impl SatakeData {
    pub fn random(rng: &mut impl Rng, n: usize, range: i64) -> Self {
        let primes = primes_up_to(n);
        let mut pick = || [rng.gen_range(-range..=range), rng.gen_range(-range..=range)];
        let alpha = primes.iter().map(|_| pick()).collect();
        let beta = primes.iter().map(|_| pick()).collect();
        Self { primes, alpha, beta }
    }

    pub fn zero(n: usize) -> Self {
        let primes = primes_up_to(n);
        let z = vec![[0, 0]; primes.len()];
        Self { primes, alpha: z.clone(), beta: z }
    }

    fn at(&self, p: u64) -> ([BigInt; 2], [BigInt; 2]) {
        let i = self.primes.iter().position(|&q| q == p).expect("prime in range");
        (self.alpha[i].map(BigInt::from), self.beta[i].map(BigInt::from))
    }

    /// Both sides of the convolution identity as Dirichlet coefficients up to `n`:
    /// `Σ A(n)B(n) n^{−s}` and the degree-4 Euler product with its `p^{−2s}` numerator.
    pub fn lemma_sides(&self, n: usize) -> (Vec<BigInt>, Vec<BigInt>) {
        let a = euler_product(n, |p, d| {
            let (al, _) = self.at(p);
            let mut s = unit_series(d);
            al.iter().for_each(|g| times_geometric(&mut s, g));
            s
        });
        let b = euler_product(n, |p, d| {
            let (_, be) = self.at(p);
            let mut s = unit_series(d);
            be.iter().for_each(|g| times_geometric(&mut s, g));
            s
        });
        let lhs = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let rhs = euler_product(n, |p, d| {
            let (al, be) = self.at(p);
            let mut s = unit_series(d);
            for x in &al {
                for y in &be {
                    times_geometric(&mut s, &(x * y));
                }
            }
            let top = &al[0] * &al[1] * &be[0] * &be[1];
            times_poly(&s, &[BigInt::one(), BigInt::zero(), -top])
        });
        (lhs, rhs)
    }
}

fn unit_series(deg: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); deg + 1];
    s[0] = BigInt::one();
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionReport {
    pub trials: usize,
    pub terms: usize,
    /// `(trial, first n where the two sides differ)`.
    pub failures: Vec<(usize, usize)>,
}

impl ConvolutionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random integer Satake data, both sides expanded exactly to `n`.
pub fn euler_convolution_check(trials: usize, n: usize, seed: u64) -> ConvolutionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for t in 0..trials {
        let data = SatakeData::random(&mut rng, n, 3);
        let (lhs, rhs) = data.lemma_sides(n);
        if let Some(m) = (1..=n).find(|&m| lhs[m] != rhs[m]) {
            failures.push((t, m));
        }
    }
    ConvolutionReport { trials, terms: n, failures }
}

fn g20_g22_coefficients(n: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let a = g20(n + 1).integer_coeffs().expect("integral q-expansion");
    let b = g2_level(2, n + 1).expect("2 is prime");
    let mut b: Vec<BigInt> = b
        .coeffs()
        .iter()
        .map(|c| c.to_integer())
        .collect();
    b[0] = BigInt::zero();
    (a, b)
}

/// Three expansions of the Rankin product of `g₂₀` with `G₂,₂` up to `n`:
/// `ζ_{odd}(2s−20)·Σ a(n)b(n)n^{−s}`, its Euler product, and
/// `L(s)L(s−1)·(1 − 456·2^{1−s} + 2^{21−2s})`. Returns the first `n` where
/// any two differ.
pub fn g20_g22_exact_check(n: usize) -> Result<(), usize> {
    let (a, b) = g20_g22_coefficients(n);
    let ab: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    // Π_{p odd} (1 − p^{20} p^{−2s})^{−1}: weight m^{20} at m² for odd m
    let mut zeta = vec![BigInt::zero(); n + 1];
    let mut m = 1usize;
    while m * m <= n {
        zeta[m * m] = BigInt::from(m).pow(20);
        m += 2;
    }
    let first = dirichlet_mul(&zeta, &ab);
    let euler = euler_product(n, |p, d| {
        let ap = a[p as usize].clone();
        let pb = BigInt::from(p);
        let mut s = unit_series(d);
        let quad = |t: &BigInt, e: u32| vec![BigInt::one(), -t, pb.pow(e)];
        let mut inv = |poly: Vec<BigInt>| {
            // divide by 1 − c₁X + c₂X²
            for i in 1..s.len() {
                let mut v = s[i].clone();
                v -= &poly[1] * &s[i - 1];
                if i >= 2 {
                    v -= &poly[2] * &s[i - 2];
                }
                s[i] = v;
            }
        };
        inv(quad(&ap, 19));
        if p != 2 {
            inv(quad(&(&ap * &pb), 21));
        }
        s
    });
    let shifted: Vec<BigInt> = a.iter().enumerate().map(|(i, x)| x * i).collect();
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[1] = BigInt::one();
    if n >= 2 {
        poly[2] = BigInt::from(-912);
    }
    if n >= 4 {
        poly[4] = BigInt::from(1u64 << 21);
    }
    let third = dirichlet_mul(&dirichlet_mul(&a, &shifted), &poly);
    match (1..=n).find(|&i| first[i] != euler[i] || euler[i] != third[i]) {
        Some(i) => Err(i),
        None => Ok(()),
    }
}

fn dirichlet_mul(x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let n = x.len().min(y.len()) - 1;
    let mut out = vec![BigInt::zero(); n + 1];
    for i in 1..=n {
        if x[i].is_zero() {
            continue;
        }
        for j in 1..=n / i {
            out[i * j] += &x[i] * &y[j];
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    pub s: i64,
    pub lhs: NumericValue,
    pub rhs: NumericValue,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        (self.lhs.value - self.rhs.value).abs() <= self.lhs.error_bound + self.rhs.error_bound
    }
}

/// `L(s)L(s−1)·(1 − 456·2^{1−s} + 2^{21−2s})` from the AFE against
/// `ζ(2s−20)(1 − 2^{20−2s})·Σ a(n)b(n)n^{−s}` from partial sums.
pub fn g20_g22_identity_at(s: i64) -> Result<IdentityCheck, NumericError> {
    if !(14..=19).contains(&s) {
        return Err(NumericError::Argument(s));
    }
    const N: usize = 255;
    let two = 2f64;
    let factor = 1.0 - 456.0 * two.powi(1 - s as i32) + two.powi(21 - 2 * s as i32);
    let lhs = lvalue_level1(CuspForm::G20, s)?
        .mul(lvalue_level1(CuspForm::G20, s - 1)?)
        .scale(factor);
    let (a, b) = g20_g22_coefficients(N);
    let mut sum = 0.0;
    let mut mag = 0.0;
    for n in (1..=N).rev() {
        let t = (&a[n] * &b[n]).to_f64().unwrap_or(f64::NAN) * (n as f64).powi(-(s as i32));
        sum += t;
        mag += t.abs();
    }
    // |a(n)| ≤ C n^{9.5+1/3}, b(n) ≤ σ₁(n) ≤ C n^{4/3}
    let c = super::divisor_bound_constant(3);
    let e = 9.5 + 1.0 / 3.0 + 4.0 / 3.0 - s as f64;
    let tail = c * c * (N as f64).powf(e + 1.0) / (-e - 1.0);
    let pre = zeta_f64(2 * s - 20) * (1.0 - two.powi(20 - 2 * s as i32));
    let rhs = NumericValue::new(sum, tail + 16.0 * f64::EPSILON * mag).scale(pre);
    Ok(IdentityCheck { s, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn satake_roots() {
        let e = EulerFactorPair::new(2, 456.0, 20);
        let (re, im) = e.product();
        assert!((re / 2f64.powi(19) - 1.0).abs() < 1e-14 && im.abs() < 1e-6);
        assert!((e.sum().0 - 456.0).abs() < 1e-9 && e.sum().1.abs() < 1e-9);
    }

    #[test]
    fn zero_data_gives_one() {
        let (l, r) = SatakeData::zero(50).lemma_sides(50);
        assert_eq!(l[1], BigInt::one());
        assert!((2..=50).all(|i| l[i].is_zero() && r[i].is_zero()));
    }

    #[test]
    fn few_random_trials() {
        assert!(euler_convolution_check(5, 120, 7).passed());
    }

    #[test]
    fn g20_instance() {
        assert_eq!(g20_g22_exact_check(100), Ok(()));
        let c = g20_g22_identity_at(19).unwrap();
        assert!(c.holds(), "{c:?}");
    }
}
