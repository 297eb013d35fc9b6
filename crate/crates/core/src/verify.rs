//! Builds the report tables and compares them with the printed values,
//! the independent numerics and the functional equations.

use thiserror::Error;

use crate::assemble::{
    g20_fe_pair_check, g20_pair_value, g20_sign_flags, lookup, main_exact, main_table_row, pipeline_table,
    scaled_f64, standard_fe_check, sym_square_fe_pair_check, sym_square_value, trace_constant_check,
    AssembleError, FeCertificate, Norms,
};
use crate::exact::{format_rational, PiExact};
use crate::holproj::{
    a_coefficients, c_coefficients, k_coefficients, HolprojError, PoleConvention, ProjectionContext,
    CRITICAL_POINTS,
};
use crate::level2::{newforms, FormBasis, Level2Error};
use crate::numeric::{
    euler_convolution_check, g20_g22_exact_check, g20_g22_identity_at, g20_pair_numeric, main_numeric_product,
    petersson_norm, sym_square_numeric, NumericError,
};
use crate::qexp::g20;
use crate::reference;
use crate::report::{Diagnostic, RowRecord, Verdict};
use crate::theta::{normalized_coefficient, GramTarget, ThetaError, ThetaOptions};

pub const TABLES: [&str; 6] = ["main", "sym2", "product", "coeffs-c", "coeffs-a", "coeffs-k"];

/// Everything `verify` can check; the first six are the tables above.
pub const CHECKS: [&str; 14] = [
    "main", "sym2", "product", "coeffs-c", "coeffs-a", "coeffs-k", "inverse", "newforms", "g20", "trace",
    "norms", "numeric", "lemma", "theta",
];

const C_LABELS: [&str; 6] = ["C'0", "C''0", "C1", "C2", "C3", "C4"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error(transparent)]
    Assemble(#[from] AssembleError),
    #[error(transparent)]
    Holproj(#[from] HolprojError),
    #[error(transparent)]
    Level2(#[from] Level2Error),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub convention: PoleConvention,
    /// Relative tolerance for numeric comparisons whose error bound is small.
    pub tolerance: f64,
    pub theta: ThetaOptions,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            convention: PoleConvention::Tabulated,
            tolerance: 1e-6,
            theta: ThetaOptions::default(),
        }
    }
}

/// Looser tolerance used where a numeric bound exceeds a tenth of the strict one.
pub const LOOSE_TOLERANCE: f64 = 1e-5;
/// Significant-digit threshold for the printed `⟨Δ, Δ⟩`, as a relative distance.
pub const DELTA_NORM_TOLERANCE: f64 = 5e-12;
/// Mutual and printed agreement of the three `⟨g₂₀, g₂₀⟩` evaluations.
pub const G20_NORM_TOLERANCE: f64 = 1e-12;

/// `⟨Δ, Δ⟩` from `l = 8` and `⟨g₂₀, g₂₀⟩` from `l = 12`.
pub fn numeric_norms() -> Result<Norms, VerifyError> {
    Ok(Norms {
        delta: petersson_norm(12, 8)?.value,
        g20: petersson_norm(20, 12)?.value,
    })
}

fn ctx(s: i64, settings: &Settings) -> Result<ProjectionContext, HolprojError> {
    ProjectionContext::with_convention(s, settings.convention)
}

pub fn computed_table(name: &str, settings: &Settings, norms: Option<Norms>) -> Result<Vec<RowRecord>, VerifyError> {
    let mut rows = Vec::new();
    for s in CRITICAL_POINTS {
        match name {
            "main" => {
                let row = main_table_row(s, settings.convention, norms)?;
                let mut r = RowRecord::new(s, "R", &row.exact);
                r.numeric = row.numeric;
                r.flags = row.flags;
                rows.push(r);
            }
            "sym2" => {
                let v = sym_square_value(s)?;
                let mut r = RowRecord::new(s, "L", &v);
                r.numeric = norms.map(|n| scaled_f64(&v, &[n.delta]));
                rows.push(r);
            }
            "product" => {
                let v = g20_pair_value(s, settings.convention)?;
                let mut r = RowRecord::new(s, "P", &v);
                r.numeric = norms.map(|n| scaled_f64(&v, &[n.g20]));
                if v.signum() <= 0 {
                    r.flags.push("not-positive".into());
                }
                rows.push(r);
            }
            "coeffs-c" => {
                let c = c_coefficients(&ctx(s, settings)?)?.as_row();
                for (label, v) in C_LABELS.iter().zip(&c) {
                    rows.push(RowRecord::new(s, *label, v).with_numeric(v.to_f64()));
                }
            }
            "coeffs-a" => {
                let a = a_coefficients(&ctx(s, settings)?)?;
                for (i, v) in a.iter().enumerate() {
                    rows.push(RowRecord::new(s, format!("A{}", i + 1), v).with_numeric(v.to_f64()));
                }
            }
            "coeffs-k" => {
                let k = k_coefficients(&ctx(s, settings)?)?;
                for (i, v) in k.iter().enumerate() {
                    rows.push(RowRecord::new(s, format!("K{}", i + 1), v).with_numeric(v.to_f64()));
                }
            }
            other => return Err(VerifyError::UnknownTable(other.to_string())),
        }
    }
    Ok(rows)
}

pub fn printed_table(name: &str) -> Result<Vec<RowRecord>, VerifyError> {
    let mut rows = Vec::new();
    for s in CRITICAL_POINTS {
        let missing = || VerifyError::UnknownTable(name.to_string());
        match name {
            "main" => {
                let (v, x) = reference::main_row(s).ok_or_else(missing)?;
                rows.push(RowRecord::new(s, "R", &v).with_numeric(x));
            }
            "sym2" => rows.push(RowRecord::new(s, "L", &reference::sym2_value(s).ok_or_else(missing)?)),
            "product" => rows.push(RowRecord::new(s, "P", &reference::pair_value(s).ok_or_else(missing)?)),
            "coeffs-c" => {
                for (l, v) in C_LABELS.iter().zip(reference::c_row(s).ok_or_else(missing)?) {
                    rows.push(RowRecord::new(s, *l, &v));
                }
            }
            "coeffs-a" => {
                for (i, v) in reference::a_row(s).ok_or_else(missing)?.iter().enumerate() {
                    rows.push(RowRecord::new(s, format!("A{}", i + 1), v));
                }
            }
            "coeffs-k" => {
                for (i, v) in reference::k_row(s).ok_or_else(missing)?.iter().enumerate() {
                    rows.push(RowRecord::new(s, format!("K{}", i + 1), v));
                }
            }
            other => return Err(VerifyError::UnknownTable(other.to_string())),
        }
    }
    Ok(rows)
}

fn exact_text(r: &RowRecord) -> String {
    format!("{}·{}", r.rational_text(), r.pi_text())
}

/// Entry-by-entry exact comparison; the main table's numeric column is also
/// checked against the printed six decimals.
fn compare_table(name: &str, settings: &Settings) -> Result<Vec<Diagnostic>, VerifyError> {
    let norms = if name == "main" { Some(numeric_norms()?) } else { None };
    let computed = computed_table(name, settings, norms)?;
    let printed = printed_table(name)?;
    let mut out = Vec::new();
    for p in &printed {
        let c = computed
            .iter()
            .find(|c| c.s == p.s && c.entry == p.entry)
            .ok_or_else(|| VerifyError::UnknownTable(name.to_string()))?;
        let label = format!("{name} s={} {}", p.s, p.entry);
        let mut d = Diagnostic::compare(label.clone(), exact_text(p), exact_text(c));
        if d.verdict == Verdict::Mismatch && !c.rational.num.starts_with('0') && p.sign != 0 {
            let ratio = PiExact::new(
                crate::exact::parse_rational(&c.rational_text()).expect("own output")
                    / crate::exact::parse_rational(&p.rational_text()).expect("own output"),
                c.pi_half - p.pi_half,
            );
            d = d.with_certificate(format!("computed/printed = {ratio}"));
        }
        out.push(d);
        if let (Some(x), Some(y)) = (p.numeric, c.numeric) {
            let ok = (x - y).abs() <= 5e-7 + settings.tolerance * x.abs();
            out.push(Diagnostic::new(
                format!("{label} numeric"),
                format!("{x:.6}"),
                format!("{y:.6}"),
                if ok { Verdict::Pass } else { Verdict::Mismatch },
            ));
        }
    }
    Ok(out)
}

fn inverse_check() -> Vec<Diagnostic> {
    let inv = FormBasis::standard().inverse();
    let mut out = Vec::new();
    for i in 0..4 {
        let row = reference::k_inverse_row(i);
        for (j, expected) in row.iter().enumerate() {
            out.push(Diagnostic::compare(
                format!("inverse K{} A{}", i + 1, j + 1),
                format_rational(expected),
                format_rational(inv.get(i, j)),
            ));
        }
    }
    out
}

fn newform_check() -> Result<Vec<Diagnostic>, VerifyError> {
    let (h1, h2) = newforms(8)?;
    let mut out = Vec::new();
    for (name, f, printed) in [("h1", &h1, reference::NEWFORM_H1), ("h2", &h2, reference::NEWFORM_H2)] {
        for (n, want) in printed.iter().enumerate().skip(1) {
            out.push(Diagnostic::compare(
                format!("newforms {name} a({})", n + 1),
                want.to_string(),
                format_rational(&f.coeffs()[n + 1]),
            ));
        }
    }
    Ok(out)
}

fn g20_listing_check() -> Vec<Diagnostic> {
    let g = g20(6);
    let mut out = Vec::new();
    for (i, listing) in reference::G20_LISTINGS.iter().enumerate() {
        for (n, want) in listing.iter().enumerate() {
            out.push(Diagnostic::compare(
                format!("g20 listing {} a({})", i + 1, n + 1),
                want.to_string(),
                format_rational(&g.coeffs()[n + 1]),
            ));
        }
    }
    out
}

fn trace_check() -> Diagnostic {
    match trace_constant_check() {
        Ok(c) => Diagnostic::compare("trace constant", "19/65536".into(), format_rational(&c)),
        Err(e) => Diagnostic::new("trace constant", "19/65536", e.to_string(), Verdict::Mismatch),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn norm_check() -> Result<Vec<Diagnostic>, VerifyError> {
    let mut out = Vec::new();
    let delta = petersson_norm(12, 8)?;
    let printed: f64 = reference::DELTA_NORM.parse().expect("reference float");
    let r = rel(delta.value, printed);
    out.push(
        Diagnostic::new(
            "norm <Delta,Delta> vs printed",
            reference::DELTA_NORM,
            format!("{:.17e}", delta.value),
            if r <= DELTA_NORM_TOLERANCE { Verdict::Pass } else { Verdict::Mismatch },
        )
        .with_certificate(format!("relative difference {r:.2e}, error bound {:.1e}", delta.relative_error())),
    );
    let g: Vec<_> = reference::G20_NORMS
        .iter()
        .map(|&(l, p)| Ok((l, p, petersson_norm(20, l)?)))
        .collect::<Result<_, NumericError>>()?;
    for &(l, p, v) in &g {
        let r = rel(v.value, p.parse().expect("reference float"));
        out.push(Diagnostic::new(
            format!("norm <g20,g20> l={l} vs printed"),
            p,
            format!("{:.17e}", v.value),
            if r <= G20_NORM_TOLERANCE { Verdict::Pass } else { Verdict::Mismatch },
        ));
    }
    let spread = g.iter().map(|x| rel(x.2.value, g[0].2.value)).fold(0.0, f64::max);
    out.push(Diagnostic::new(
        "norm <g20,g20> l-independence",
        format!("<= {G20_NORM_TOLERANCE:e}"),
        format!("{spread:.2e}"),
        if spread <= G20_NORM_TOLERANCE { Verdict::Pass } else { Verdict::Mismatch },
    ));
    Ok(out)
}

/// Tolerance for a numeric value whose relative error bound is `bound`.
pub fn tolerance_for(bound: f64, settings: &Settings) -> f64 {
    if bound <= settings.tolerance / 10.0 {
        settings.tolerance
    } else {
        LOOSE_TOLERANCE
    }
}

/// Pipeline values against the approximate-functional-equation products.
pub fn numeric_adjudication(settings: &Settings) -> Result<Vec<Diagnostic>, VerifyError> {
    let norms = numeric_norms()?;
    let mut out = Vec::new();
    for s in CRITICAL_POINTS {
        let exact = scaled_f64(&g20_pair_value(s, settings.convention)?, &[norms.g20]);
        let num = g20_pair_numeric(s)?;
        let tol = tolerance_for(num.relative_error(), settings);
        let r = rel(exact, num.value);
        out.push(
            Diagnostic::new(
                format!("numeric s={s} L(s+10,g20)L(s+9,g20)"),
                format!("{:.10e}", num.value),
                format!("{exact:.10e}"),
                if r <= tol { Verdict::Pass } else { Verdict::Mismatch },
            )
            .with_certificate(format!("relative difference {r:.2e}, tolerance {tol:.0e}")),
        );
        let main = scaled_f64(&main_exact(s, settings.convention)?, &[norms.delta, norms.g20]);
        let (prod, src) = main_numeric_product(s)?;
        let tol = tolerance_for(prod.relative_error(), settings);
        let r = rel(main, prod.value);
        out.push(
            Diagnostic::new(
                format!("numeric s={s} L(s,F12,St)"),
                format!("{:.10e}", prod.value),
                format!("{main:.10e}"),
                if r <= tol { Verdict::Pass } else { Verdict::Mismatch },
            )
            .with_certificate(format!("relative difference {r:.2e}, tolerance {tol:.0e}, sym2 factor {src:?}")),
        );
    }
    for a in [14, 16, 18, 20] {
        let exact = scaled_f64(&sym_square_value(a - 11)?, &[norms.delta]);
        let num = sym_square_numeric(a)?;
        let tol = tolerance_for(num.relative_error(), settings);
        let r = rel(exact, num.value);
        out.push(Diagnostic::new(
            format!("numeric L({a},Delta x Delta)"),
            format!("{:.10e}", num.value),
            format!("{exact:.10e}"),
            if r <= tol { Verdict::Pass } else { Verdict::Mismatch },
        ));
    }
    Ok(out)
}

pub const LEMMA_TRIALS: usize = 100;
pub const LEMMA_TERMS: usize = 200;
pub const LEMMA_SEED: u64 = 20;

fn lemma_check() -> Result<Vec<Diagnostic>, VerifyError> {
    let rep = euler_convolution_check(LEMMA_TRIALS, LEMMA_TERMS, LEMMA_SEED);
    let mut out = vec![Diagnostic::new(
        "lemma random exact trials",
        format!("{LEMMA_TRIALS} of {LEMMA_TRIALS} to n={LEMMA_TERMS}"),
        format!("{} of {}", rep.trials - rep.failures.len(), rep.trials),
        if rep.passed() { Verdict::Pass } else { Verdict::Mismatch },
    )];
    let exact = g20_g22_exact_check(LEMMA_TERMS);
    out.push(Diagnostic::new(
        "lemma g20 x G2,2 exact expansion",
        format!("equal to n={LEMMA_TERMS}"),
        match exact {
            Ok(()) => format!("equal to n={LEMMA_TERMS}"),
            Err(n) => format!("differs at n={n}"),
        },
        if exact.is_ok() { Verdict::Pass } else { Verdict::Mismatch },
    ));
    let id = g20_g22_identity_at(19)?;
    out.push(Diagnostic::new(
        "lemma g20 x G2,2 identity at s=19",
        format!("{:.15e} ± {:.1e}", id.rhs.value, id.rhs.error_bound),
        format!("{:.15e} ± {:.1e}", id.lhs.value, id.lhs.error_bound),
        if id.holds() { Verdict::Pass } else { Verdict::Mismatch },
    ));
    Ok(out)
}

fn theta_check(settings: &Settings) -> Result<Vec<Diagnostic>, VerifyError> {
    let mut out = Vec::new();
    for (g, want) in reference::THETA_COEFFICIENTS {
        let t: GramTarget = g.parse()?;
        let got = normalized_coefficient(&t, settings.theta)?;
        out.push(Diagnostic::compare(format!("theta {g}"), want.to_string(), format_rational(&got)));
    }
    Ok(out)
}

pub fn run_check(name: &str, settings: &Settings) -> Result<Vec<Diagnostic>, VerifyError> {
    match name {
        n if TABLES.contains(&n) => compare_table(n, settings),
        "inverse" => Ok(inverse_check()),
        "newforms" => newform_check(),
        "g20" => Ok(g20_listing_check()),
        "trace" => Ok(vec![trace_check()]),
        "norms" => norm_check(),
        "numeric" => numeric_adjudication(settings),
        "lemma" => lemma_check(),
        "theta" => theta_check(settings),
        other => Err(VerifyError::UnknownTable(other.to_string())),
    }
}

fn certificate_diagnostic(c: &FeCertificate, source: &str) -> Diagnostic {
    let pi = if c.pi_balanced() {
        "π balanced".to_string()
    } else {
        format!("π^({}/2) left over", c.ratio.half_pi_exp)
    };
    let fact = c.factored().map(|f| f.to_string()).unwrap_or_else(|| "0".into());
    Diagnostic::new(
        format!("fe {} ({},{}) {source}", c.check, c.left, c.right),
        "1",
        format_rational(&c.ratio.coeff),
        if c.holds() { Verdict::Pass } else { Verdict::Report },
    )
    .with_certificate(format!("{fact}; {pi}; ≈ {:.6}", c.ratio.coeff_f64()))
}

/// All functional-equation certificates on the printed tables and on the
/// pipeline under both pole conventions.
pub fn fe_diagnostics() -> Result<Vec<Diagnostic>, VerifyError> {
    let mut out = Vec::new();
    let printed_main = |s| reference::main_row(s).map(|r| r.0);
    push_fe(&mut out, "printed", &reference::sym2_value, &reference::pair_value, &printed_main)?;
    for (conv, label) in [(PoleConvention::Tabulated, "tabulated"), (PoleConvention::Analytic, "analytic")] {
        let sym = pipeline_table(sym_square_value)?;
        let pair = pipeline_table(|s| g20_pair_value(s, conv))?;
        let main = pipeline_table(|s| main_exact(s, conv))?;
        push_fe(&mut out, label, &lookup(&sym), &lookup(&pair), &lookup(&main))?;
    }
    Ok(out)
}

fn push_fe(
    out: &mut Vec<Diagnostic>,
    source: &str,
    sym: &dyn Fn(i64) -> Option<PiExact>,
    pair: &dyn Fn(i64) -> Option<PiExact>,
    main: &dyn Fn(i64) -> Option<PiExact>,
) -> Result<(), VerifyError> {
    for c in sym_square_fe_pair_check(sym)? {
        out.push(certificate_diagnostic(&c, source));
    }
    for c in g20_fe_pair_check(pair)? {
        out.push(certificate_diagnostic(&c, source));
    }
    let flags = g20_sign_flags(pair);
    out.push(Diagnostic::new(
        format!("fe g20 positivity {source}"),
        "no rows",
        format!("{flags:?}"),
        if flags.is_empty() { Verdict::Pass } else { Verdict::Report },
    ));
    for c in standard_fe_check(main)? {
        out.push(certificate_diagnostic(&c, source));
    }
    Ok(())
}
