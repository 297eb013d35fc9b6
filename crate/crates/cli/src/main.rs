use std::io::Write as _;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use critvals::exact::format_rational;
use critvals::holproj::PoleConvention;
use critvals::numeric::petersson_norm;
use critvals::reference;
use critvals::report::{Diagnostic, ReportDocument, Verdict};
use critvals::theta::{fourier_coefficient, normalized_coefficient, GramMode, GramTarget, ThetaOptions};
use critvals::verify::{
    computed_table, fe_diagnostics, numeric_norms, printed_table, run_check, Settings, VerifyError, CHECKS,
};

#[derive(Parser, Debug)]
#[command(name = "critvals", version, about = "Critical values of the degree-7 standard L-function of F12")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one computed table (or the printed reference with --printed).
    Tables {
        #[arg(value_parser = ["main", "sym2", "product", "coeffs-c", "coeffs-a", "coeffs-k"])]
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Convention::Tabulated)]
        convention: Convention,
        /// Show the reference values instead of recomputing them.
        #[arg(long)]
        printed: bool,
    },
    /// Compare against the reference tables, numerics and printed constants.
    Verify {
        #[arg(long, conflicts_with = "table")]
        all: bool,
        #[arg(long, value_parser = CHECKS)]
        table: Vec<String>,
        /// Relative tolerance for numeric comparisons with tight error bounds.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Convention::Tabulated)]
        convention: Convention,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Petersson norms from Rankin's formula.
    Norms {
        #[arg(long, value_enum)]
        form: Option<Form>,
        #[arg(long)]
        l: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// One theta coefficient, normalized by the coefficient at [[2,1,1],[1,2,1],[1,1,2]].
    Theta {
        /// Gram matrix "a,b,c;b,d,e;c,e,f" of inner products.
        #[arg(long)]
        gram: String,
        /// Read --gram as the half-integral index matrix N (Gram = 2N).
        #[arg(long)]
        halves: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Diagnostics.
    Diag {
        #[command(subcommand)]
        which: DiagCommand,
    },
}

#[derive(Subcommand, Debug)]
enum DiagCommand {
    /// Functional-equation pairing certificates.
    Fe {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Convention {
    Tabulated,
    Analytic,
}

impl From<Convention> for PoleConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Tabulated => PoleConvention::Tabulated,
            Convention::Analytic => PoleConvention::Analytic,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    Delta,
    G20,
}

fn metadata(doc: &mut ReportDocument, convention: PoleConvention) {
    let m = &mut doc.metadata;
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    m.insert("convention".into(), format!("{convention:?}").to_lowercase());
    m.insert("float".into(), "f64 (53-bit)".into());
    m.insert("level2_basis_precision".into(), "32".into());
}

fn emit(doc: &ReportDocument, format: Format) {
    let text = match format {
        Format::Text => doc.to_text(),
        Format::Csv => doc.to_csv(),
        Format::Json => doc.to_json() + "\n",
    };
    write_out(&text);
}

// A closed pipe (`| head`) is not an error worth a panic.
fn write_out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Tables {
            name,
            format,
            convention,
            printed,
        } => {
            let settings = Settings {
                convention: convention.into(),
                ..Settings::default()
            };
            let rows = if printed {
                printed_table(&name)?
            } else {
                let norms = matches!(name.as_str(), "main" | "sym2" | "product")
                    .then(numeric_norms)
                    .transpose()?;
                computed_table(&name, &settings, norms)?
            };
            let mut doc = ReportDocument::default();
            doc.tables.insert(name, rows);
            metadata(&mut doc, settings.convention);
            emit(&doc, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            all: _,
            table,
            tolerance,
            format,
            convention,
            threads,
        } => {
            if !(tolerance > 0.0 && tolerance.is_finite()) {
                return Err(Failure::Usage(format!("tolerance must be positive, got {tolerance}")));
            }
            let settings = Settings {
                convention: convention.into(),
                tolerance,
                theta: ThetaOptions { threads, budget: None },
            };
            let names: Vec<String> = if table.is_empty() {
                CHECKS.iter().map(|s| s.to_string()).collect()
            } else {
                table
            };
            let mut doc = ReportDocument::default();
            for n in &names {
                doc.diagnostics.extend(run_check(n, &settings)?);
            }
            metadata(&mut doc, settings.convention);
            doc.metadata.insert("tolerance".into(), format!("{tolerance:e}"));
            emit(&doc, format);
            Ok(if doc.failures() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Norms { form, l, format } => {
            if form.is_none() && l.is_some() {
                return Err(Failure::Usage("--l needs --form".into()));
            }
            let mut pairs: Vec<(i64, i64)> = Vec::new();
            if !matches!(form, Some(Form::G20)) {
                pairs.push((12, l.unwrap_or(8)));
            }
            if !matches!(form, Some(Form::Delta)) {
                match l {
                    Some(l) => pairs.push((20, l)),
                    None => pairs.extend([12, 14, 16].map(|l| (20, l))),
                }
            }
            let mut doc = ReportDocument::default();
            for (k, l) in pairs {
                let v = petersson_norm(k, l).map_err(|e| Failure::Usage(e.to_string()))?;
                let printed = if k == 12 {
                    Some(reference::DELTA_NORM)
                } else {
                    reference::G20_NORMS.iter().find(|x| x.0 == l).map(|x| x.1)
                };
                let mut d = Diagnostic::new(
                    format!("norm k={k} l={l}"),
                    printed.unwrap_or("-"),
                    format!("{:.17e}", v.value),
                    Verdict::Report,
                );
                d.certificate = Some(format!("error bound {:.1e}", v.error_bound));
                doc.diagnostics.push(d);
            }
            metadata(&mut doc, PoleConvention::default());
            emit(&doc, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Theta {
            gram,
            halves,
            threads,
            budget,
            format,
        } => {
            let mode = if halves { GramMode::Halves } else { GramMode::Doubled };
            let target = GramTarget::parse(&gram, mode).map_err(|e| Failure::Usage(e.to_string()))?;
            if let Some(b) = budget {
                if !(b > 0.0 && b.is_finite()) {
                    return Err(Failure::Usage(format!("budget must be positive, got {b}")));
                }
            }
            let opts = ThetaOptions {
                threads,
                budget: budget.map(Duration::from_secs_f64),
            };
            let err = |e: critvals::theta::ThetaError| Failure::Runtime(e.to_string());
            let raw = fourier_coefficient(&target, opts).map_err(err)?;
            let norm = normalized_coefficient(&target, opts).map_err(err)?;
            let expected = reference::THETA_COEFFICIENTS
                .iter()
                .find(|x| x.0 == target.to_string())
                .map(|x| x.1.to_string());
            match format {
                Format::Text => write_out(&format!(
                    "gram {target}\nraw {}\nnormalized {}\n",
                    format_rational(&raw),
                    format_rational(&norm)
                )),
                _ => {
                    let mut doc = ReportDocument::default();
                    let verdict = match &expected {
                        Some(e) if *e == format_rational(&norm) => Verdict::Pass,
                        Some(_) => Verdict::Mismatch,
                        None => Verdict::Report,
                    };
                    doc.diagnostics.push(
                        Diagnostic::new(
                            format!("theta {target}"),
                            expected.unwrap_or_else(|| "-".into()),
                            format_rational(&norm),
                            verdict,
                        )
                        .with_certificate(format!("raw {}", format_rational(&raw))),
                    );
                    metadata(&mut doc, PoleConvention::default());
                    emit(&doc, format);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Diag {
            which: DiagCommand::Fe { format },
        } => {
            let mut doc = ReportDocument::default();
            doc.diagnostics = fe_diagnostics()?;
            metadata(&mut doc, PoleConvention::default());
            emit(&doc, format);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
