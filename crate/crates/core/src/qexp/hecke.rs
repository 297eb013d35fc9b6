use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{QExpError, QExpansion};
use crate::exact::{is_prime, pow_rat, int, ExactRational};

/// `f(z) ↦ f(mz)`.
pub(super) fn v_operator(f: &QExpansion, m: usize) -> Result<QExpansion, QExpError> {
    if m == 0 {
        return Err(QExpError::ZeroIndex);
    }
    let prec = (f.precision() - 1) * m + 1;
    let mut coeffs = vec![ExactRational::zero(); prec];
    for (n, a) in f.coeffs().iter().enumerate() {
        coeffs[n * m] = a.clone();
    }
    Ok(QExpansion::new(f.weight(), f.level() * m as u64, coeffs))
}

/// `Σ a(n) qⁿ ↦ Σ a(mn) qⁿ`.
pub(super) fn u_operator(f: &QExpansion, m: usize) -> Result<QExpansion, QExpError> {
    if m == 0 {
        return Err(QExpError::ZeroIndex);
    }
    let prec = (f.precision() - 1) / m + 1;
    let coeffs = (0..prec).map(|n| f.coeffs()[n * m].clone()).collect();
    Ok(QExpansion::new(
        f.weight(),
        f.level().lcm(&(m as u64)),
        coeffs,
    ))
}

/// Level-1 Hecke operator: `a(n) ↦ a(pn) + p^{k−1} a(n/p)`.
pub(super) fn hecke_tp(f: &QExpansion, p: u64, out_precision: usize) -> Result<QExpansion, QExpError> {
    if f.level() != 1 {
        return Err(QExpError::LevelNotOne(f.level()));
    }
    if !is_prime(&BigUint::from(p)) {
        return Err(QExpError::NotPrime(p));
    }
    let p_us = p as usize;
    let last = p_us * out_precision.saturating_sub(1);
    f.coeff(last)?;
    let pk = pow_rat(&int(p as i64), f.weight() - 1);
    let coeffs = (0..out_precision)
        .map(|n| {
            let mut c = f.coeffs()[n * p_us].clone();
            if n % p_us == 0 {
                c += &pk * &f.coeffs()[n / p_us];
            }
            c
        })
        .collect();
    Ok(QExpansion::new(f.weight(), 1, coeffs))
}

/// Dirichlet coefficients `a(1), a(2), …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCoefficients {
    values: Vec<ExactRational>,
}

impl DirichletCoefficients {
    pub fn new(values: Vec<ExactRational>) -> Self {
        Self { values }
    }

    /// Drops the constant term of a q-expansion.
    pub fn from_qexp(f: &QExpansion) -> Self {
        Self::new(f.coeffs()[1..].to_vec())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `a(n)` for `n ≥ 1`.
    pub fn get(&self, n: usize) -> Option<&ExactRational> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }
}

/// Rebuilds `a(1..=n_terms)` of a normalized Hecke eigenform from its prime
/// coefficients. Primes dividing `level` use `a(p^r) = a(p)^r` (trivial
/// character), the others the weight-`k` Hecke recursion.
pub fn multiplicative_extend(
    prime_coeff: impl Fn(u64) -> ExactRational,
    k: i64,
    level: u64,
    n_terms: usize,
) -> DirichletCoefficients {
    let len = n_terms + 1;
    // smallest prime factor sieve
    let mut spf = vec![0usize; len];
    for i in 2..len {
        if spf[i] == 0 {
            let mut j = i;
            while j < len {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    let mut a = vec![ExactRational::zero(); len];
    if len > 1 {
        a[1] = ExactRational::one();
    }
    for n in 2..len {
        let p = spf[n];
        let mut pr = p;
        let mut r = 1;
        while (n / pr) % p == 0 {
            pr *= p;
            r += 1;
        }
        let rest = n / pr;
        if rest > 1 {
            a[n] = &a[pr] * &a[rest];
            continue;
        }
        // n = p^r
        let ap = prime_coeff(p as u64);
        a[n] = if r == 1 {
            ap
        } else if level % p as u64 == 0 {
            &ap * &a[pr / p]
        } else {
            let pk = pow_rat(&int(p as i64), k - 1);
            &ap * &a[pr / p] - pk * &a[pr / p / p]
        };
    }
    a.remove(0);
    DirichletCoefficients::new(a)
}
