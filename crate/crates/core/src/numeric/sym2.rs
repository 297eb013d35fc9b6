use std::sync::OnceLock;

use crate::qexp::tau_table;

use super::{zeta_f64, NumericError, NumericValue};

pub const SYM2_TERMS: usize = 100_000;

fn tau_squares() -> &'static [f64] {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    T.get_or_init(|| {
        tau_table(SYM2_TERMS + 1)
            .iter()
            .map(|&t| {
                let t = t as f64;
                t * t
            })
            .collect()
    })
}

/// The least `C` with `d(n) ≤ C·n^{1/m}` for every `n`. Multiplicativity
/// reduces this to primes below `2^m`, each contributing `max_a (a+1)/p^{a/m}`.
pub fn divisor_bound_constant(m: u32) -> f64 {
    let limit = 1u64 << m;
    let mut c = 1.0;
    for p in 2..limit {
        if (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            continue;
        }
        let pf = p as f64;
        let best = (0..64)
            .map(|a| (a + 1) as f64 / pf.powf(a as f64 / m as f64))
            .fold(1.0, f64::max);
        c *= best;
    }
    c
}

/// `ζ(2a−22)/ζ(a−11) · Σ_{n≤N} τ(n)² n^{−a}`.
pub fn sym_square_partial_sum(a: i64, terms: usize) -> f64 {
    let t2 = tau_squares();
    let sum: f64 = (1..=terms.min(SYM2_TERMS))
        .rev()
        .map(|n| t2[n] * (n as f64).powi(-(a as i32)))
        .sum();
    zeta_f64(2 * a - 22) / zeta_f64(a - 11) * sum
}

/// `L(a, Δ⊗Δ)` for `a ≥ 14` from the Rankin–Selberg Dirichlet series.
pub fn sym_square_numeric(a: i64) -> Result<NumericValue, NumericError> {
    if !(14..=60).contains(&a) {
        return Err(NumericError::Argument(a));
    }
    let n = SYM2_TERMS;
    let value = sym_square_partial_sum(a, n);
    let prefactor = zeta_f64(2 * a - 22) / zeta_f64(a - 11);
    // τ(n)² ≤ d(n)² n^{11} ≤ C² n^{11+2/3}
    let c = divisor_bound_constant(3);
    let e = 12.0 + 2.0 / 3.0 - a as f64;
    let tail = prefactor * c * c * (n as f64).powf(e) / -e;
    let rounding = 64.0 * f64::EPSILON * value.abs();
    Ok(NumericValue::new(value, tail + rounding))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_constant() {
        let c = divisor_bound_constant(3);
        assert!((c - 48.0 / 2520f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!((1..5000u64).all(|n| {
            let d = (1..=n).filter(|k| n % k == 0).count() as f64;
            d <= c * (n as f64).powf(1.0 / 3.0) + 1e-9
        }));
    }

    #[test]
    fn first_partial_sum_is_prefactor() {
        let a = 16;
        assert_eq!(
            sym_square_partial_sum(a, 1),
            zeta_f64(2 * a - 22) / zeta_f64(a - 11)
        );
    }

    #[test]
    fn out_of_range() {
        assert!(sym_square_numeric(12).is_err());
    }
}
