use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use critvals::numeric::zeta_f64;
use critvals::qexp::{delta, delta_from_eta, g2_level, multiplicative_extend, sigma_table, tau_table};

#[test]
fn delta_from_eisenstein_equals_eta_power() {
    let n = 2048;
    assert_eq!(delta(n), delta_from_eta(n));
}

#[test]
fn ramanujan_congruence() {
    let tau = tau_table(1001);
    let sigma = sigma_table(11, 1001);
    for n in 1..=1000 {
        let diff = BigInt::from(tau[n]) - &sigma[n];
        assert!(diff.is_multiple_of(&BigInt::from(691)), "n = {n}");
    }
}

// Δ·E₈ = Δ + 480 Σ τ(m) σ₇(n−m), computed with plain integers.
fn g20_direct(len: usize) -> Vec<BigInt> {
    let tau: Vec<BigInt> = tau_table(len).into_iter().map(BigInt::from).collect();
    let s7 = sigma_table(7, len);
    (0..len)
        .map(|n| {
            let mut acc = BigInt::from(0);
            for m in 1..n {
                acc += &tau[m] * &s7[n - m];
            }
            &tau[n] + acc * 480
        })
        .collect()
}

#[test]
fn g20_is_multiplicative_to_ten_thousand() {
    let n = 10_000;
    let direct = g20_direct(n + 1);
    let ext = multiplicative_extend(|p| BigRational::from_integer(direct[p as usize].clone()), 20, 1, n);
    assert_eq!(ext.len(), n);
    for (i, a) in direct.iter().enumerate().skip(1) {
        assert_eq!(ext.get(i), Some(&BigRational::from_integer(a.clone())), "n = {i}");
    }
}

#[test]
fn level_two_g2_dirichlet_series() {
    let n = 2000usize;
    let f = g2_level(2, n + 1).unwrap();
    let s = 6;
    let partial: f64 = (1..=n)
        .rev()
        .map(|i| {
            let a = f.coeffs()[i].to_integer();
            let a: f64 = a.to_string().parse().unwrap();
            a * (i as f64).powi(-s)
        })
        .sum();
    let target = (1.0 - 2f64.powi(1 - s)) * zeta_f64(s as i64 - 1) * zeta_f64(s as i64);
    // a(n) ≤ σ₁(n) ≤ n(1 + ln n)
    let nf = n as f64;
    let tail = (1.0 + nf.ln()) / (4.0 * nf.powi(4)) + 1.0 / (16.0 * nf.powi(4));
    let err = (partial - target).abs();
    assert!(err <= tail + 1e-14, "err {err:e}, tail bound {tail:e}");
    assert!(partial < target);
}
