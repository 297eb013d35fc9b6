use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{QExpError, QExpansion};
use crate::exact::{bernoulli, int, is_prime, rat, ExactRational};

/// `σ_e(n)` for `0 ≤ n < len`, by sieving divisors (`σ_e(0)` is left as 0).
pub fn sigma_table(e: u32, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for d in 1..len {
        let p = BigInt::from(d).pow(e);
        let mut m = d;
        while m < len {
            out[m] += &p;
            m += d;
        }
    }
    out
}

/// `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ`.
pub fn eisenstein(k: i64, precision: usize) -> Result<QExpansion, QExpError> {
    if k < 4 || k % 2 != 0 {
        return Err(QExpError::BadEisensteinWeight(k));
    }
    let factor = int(-2 * k) / bernoulli(k as u32);
    let sig = sigma_table((k - 1) as u32, precision);
    let mut coeffs: Vec<ExactRational> = sig
        .into_iter()
        .map(|s| BigRational::from_integer(s) * &factor)
        .collect();
    coeffs[0] = ExactRational::one();
    Ok(QExpansion::new(k, 1, coeffs))
}

/// The quasimodular `G₂ = −1/24 + Σ σ₁(n) qⁿ`.
pub fn g2_quasimodular(precision: usize) -> QExpansion {
    let mut coeffs: Vec<ExactRational> = sigma_table(1, precision)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    coeffs[0] = rat(-1, 24);
    QExpansion::new(2, 1, coeffs)
}

/// `G₂(z) − p·G₂(pz)`, a holomorphic weight-2 form on Γ₀(p).
pub fn g2_level(p: u64, precision: usize) -> Result<QExpansion, QExpError> {
    if !is_prime(&BigUint::from(p)) {
        return Err(QExpError::NotPrime(p));
    }
    let mut out = vec![BigInt::zero(); precision];
    let p = p as usize;
    for d in (1..precision).filter(|d| d % p != 0) {
        let mut m = d;
        while m < precision {
            out[m] += d;
            m += d;
        }
    }
    let mut coeffs: Vec<ExactRational> = out.into_iter().map(BigRational::from_integer).collect();
    coeffs[0] = rat(p as i64 - 1, 24);
    Ok(QExpansion::new(2, p as u64, coeffs))
}

/// `Π (1 − qⁿ)` by the pentagonal number theorem (the `q^{1/24}` of η dropped).
pub fn eta_series(precision: usize) -> QExpansion {
    let mut coeffs = vec![ExactRational::zero(); precision];
    for (n, c) in pentagonal_terms(precision) {
        coeffs[n] = int(c);
    }
    QExpansion::new(0, 1, coeffs)
}

fn pentagonal_terms(len: usize) -> Vec<(usize, i64)> {
    let mut out = vec![(0usize, 1i64)];
    for m in 1.. {
        let sign = if m % 2 == 1 { -1 } else { 1 };
        let a = m * (3 * m - 1) / 2;
        let b = m * (3 * m + 1) / 2;
        if a >= len {
            break;
        }
        out.push((a, sign));
        if b < len {
            out.push((b, sign));
        }
    }
    out
}

/// Δ as `(E₄³ − E₆²)/1728`.
pub fn delta(precision: usize) -> QExpansion {
    let e4 = eisenstein(4, precision).expect("weight 4");
    let e6 = eisenstein(6, precision).expect("weight 6");
    let diff = &e4.pow(3) - &e6.mul(&e6);
    diff.scale(&rat(1, 1728)).with_weight_level(12, 1)
}

/// Δ as `q·Π(1 − qⁿ)²⁴`, multiplying by the sparse pentagonal series 24 times.
pub fn delta_from_eta(precision: usize) -> QExpansion {
    let terms = pentagonal_terms(precision);
    let mut acc = vec![BigInt::zero(); precision];
    acc[0] = BigInt::one();
    for _ in 0..24 {
        let mut next = vec![BigInt::zero(); precision];
        for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for &(n, c) in &terms {
                if i + n >= precision {
                    break;
                }
                if c > 0 {
                    next[i + n] += a;
                } else {
                    next[i + n] -= a;
                }
            }
        }
        acc = next;
    }
    acc.rotate_right(1);
    acc[0] = BigInt::zero();
    QExpansion::from_integers(12, 1, acc)
}

/// Ramanujan τ(n) for `0 ≤ n < len` in machine integers, as `q·(η³)⁸` with
/// Jacobi's sparse expansion of η³. Exact for `len` up to well past 10⁶.
pub fn tau_table(len: usize) -> Vec<i128> {
    let mut jacobi = Vec::new();
    for m in 0i64.. {
        let n = (m * (m + 1) / 2) as usize;
        if n >= len {
            break;
        }
        let c = if m % 2 == 0 { 2 * m + 1 } else { -(2 * m + 1) };
        jacobi.push((n, c as i128));
    }
    let mut acc = vec![0i128; len];
    acc[0] = 1;
    for _ in 0..8 {
        let mut next = vec![0i128; len];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(n, c) in &jacobi {
                if i + n >= len {
                    break;
                }
                next[i + n] += a * c;
            }
        }
        acc = next;
    }
    acc.rotate_right(1);
    acc[0] = 0;
    acc
}

/// The normalized weight-20 level-1 cusp form `Δ·E₈`.
pub fn g20(precision: usize) -> QExpansion {
    let d = delta_from_eta(precision);
    let e8 = eisenstein(8, precision).expect("weight 8");
    d.mul(&e8)
}
