use critvals::assemble::sym_square_fixtures;
use critvals::numeric::{
    direct_dirichlet_sum, euler_convolution_check, g20_g22_exact_check, lvalue_level1, petersson_norm,
    sym_square_numeric, CuspForm,
};

#[test]
fn afe_matches_direct_sum_for_g20() {
    for w in 14..=19 {
        let afe = lvalue_level1(CuspForm::G20, w).unwrap();
        let direct = direct_dirichlet_sum(CuspForm::G20, w, 10_000).unwrap();
        let gap = (afe.value - direct.value).abs();
        assert!(gap <= afe.error_bound + direct.error_bound, "w = {w}: gap {gap:e}");
    }
}

#[test]
fn afe_matches_direct_sum_for_delta() {
    for w in 8..=11 {
        let afe = lvalue_level1(CuspForm::Delta, w).unwrap();
        let direct = direct_dirichlet_sum(CuspForm::Delta, w, 100_000).unwrap();
        let gap = (afe.value - direct.value).abs();
        assert!(gap <= afe.error_bound + direct.error_bound, "w = {w}: gap {gap:e}");
    }
}

#[test]
fn g20_norm_is_independent_of_l() {
    let v: Vec<f64> = [12, 14, 16].iter().map(|&l| petersson_norm(20, l).unwrap().value).collect();
    for x in &v[1..] {
        assert!((x / v[0] - 1.0).abs() < 1e-12, "{v:?}");
    }
}

#[test]
fn results_are_bit_reproducible() {
    let a = petersson_norm(12, 8).unwrap();
    let b = petersson_norm(12, 8).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    let x = sym_square_numeric(16).unwrap();
    let y = sym_square_numeric(16).unwrap();
    assert_eq!(x.value.to_bits(), y.value.to_bits());
}

#[test]
fn rankin_selberg_sums_match_fixtures() {
    let delta = petersson_norm(12, 8).unwrap();
    for f in sym_square_fixtures().into_iter().filter(|f| f.argument >= 14) {
        let numeric = sym_square_numeric(f.argument).unwrap();
        let exact = delta.scale(f.value.to_f64());
        let gap = (numeric.value - exact.value).abs();
        assert!(
            gap <= numeric.error_bound + exact.error_bound,
            "a = {}: gap {gap:e}",
            f.argument
        );
    }
}

#[test]
fn lemma_and_g22_expansion() {
    let report = euler_convolution_check(20, 120, 7);
    assert!(report.passed(), "{report:?}");
    assert_eq!(g20_g22_exact_check(60), Ok(()));
}
