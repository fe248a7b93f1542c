//! Command-line front end. Exit codes: 0 success, 1 a validation or
//! verification failure, 2 a usage or input error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};

use crate::error::Error;

use super::catalog::{entries, find, load, Prepared};
use super::report::{
    emit, AnalyzeReport, CatalogList, CatalogShow, DcReport, Document, Format, LqpDocument, Report, ValidateReport,
    VerifyReport,
};

#[derive(Debug, Parser)]
#[command(name = "rumin", version, about = "Rumin complex of a nilpotent Lie algebra, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Jacobi identity, nilpotency and the stored gradings.
    Validate {
        /// Algebra file or catalog name.
        algebra: String,
        #[arg(long, value_enum, default_value = "text")]
        emit: Format,
    },
    /// Filtration, asymptotic weights and the spaces E_0.
    Analyze {
        algebra: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Format,
    },
    /// The Rumin differential on E_0^k.
    Dc {
        algebra: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        emit: Format,
    },
    /// Check every identity of the construction and Hodge duality.
    Verify {
        algebra: String,
        #[arg(long, value_enum, default_value = "text")]
        emit: Format,
    },
    /// Weight gaps and non-vanishing thresholds for a named grading.
    Lqp {
        algebra: String,
        #[arg(long)]
        grading: String,
        #[arg(long, value_enum, default_value = "text")]
        emit: Format,
    },
    /// Built-in and user catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, value_enum, default_value = "text")]
        emit: Format,
    },
    Show {
        name: String,
        #[arg(long, value_enum, default_value = "text")]
        emit: Format,
    },
}

/// Input problems exit 2; everything else the algebra itself gets wrong exits 1.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ParseError { .. }
        | Error::IndexOutOfRange { .. }
        | Error::DuplicateBracket(..)
        | Error::BadRational(_)
        | Error::InvalidInput(_)
        | Error::UnknownGrading(_)
        | Error::UnknownCatalogEntry(_)
        | Error::Io { .. } => 2,
        _ => 1,
    }
}

fn prepare(arg: &str) -> Result<Prepared, Error> {
    Prepared::new(load(arg)?.file)
}

struct Outcome {
    doc: Document,
    format: Format,
    code: i32,
    warnings: Vec<String>,
}

impl Outcome {
    fn ok(report: Report, format: Format) -> Outcome {
        Outcome {
            doc: Document::new(report),
            format,
            code: 0,
            warnings: Vec::new(),
        }
    }
}

fn execute(cmd: Command) -> Result<Outcome, Error> {
    Ok(match cmd {
        Command::Validate { algebra, emit } => {
            let r = ValidateReport::build(&load(&algebra)?.file)?;
            let code = if r.valid { 0 } else { 1 };
            Outcome {
                code,
                ..Outcome::ok(Report::Validate(r), emit)
            }
        }
        Command::Analyze { algebra, degree, emit } => {
            let p = prepare(&algebra)?;
            if let Some(k) = degree.filter(|&k| k > p.algebra.dim()) {
                return Err(Error::InvalidInput(format!("degree {k} above dimension {}", p.algebra.dim())));
            }
            Outcome::ok(Report::Analyze(AnalyzeReport::build(&p, degree)?), emit)
        }
        Command::Dc { algebra, degree, emit } => {
            let p = prepare(&algebra)?;
            if degree > p.algebra.dim() {
                return Err(Error::InvalidInput(format!(
                    "degree {degree} above dimension {}",
                    p.algebra.dim()
                )));
            }
            Outcome::ok(Report::Dc(DcReport::build(&p, degree)?), emit)
        }
        Command::Verify { algebra, emit } => {
            let r = VerifyReport::build(&prepare(&algebra)?)?;
            let mut warnings = Vec::new();
            for c in r.identities.iter().chain(&r.weight_monotonicity).chain(&r.carnot).filter(|c| !c.passed) {
                warnings.push(format!("check failed in degree {}: {}", c.degree, c.name));
            }
            for h in r.hodge.iter().filter(|h| !h.passed) {
                warnings.push(format!("Hodge duality fails in degree {}", h.degree));
            }
            for f in r.fixtures.iter().filter(|f| !f.passed) {
                warnings.push(format!("fixture {} differs", f.name));
            }
            Outcome {
                code: if r.passed { 0 } else { 1 },
                warnings,
                ..Outcome::ok(Report::Verify(r), emit)
            }
        }
        Command::Lqp { algebra, grading, emit } => {
            let r = LqpDocument::build(&prepare(&algebra)?, &grading)?;
            let warnings = r
                .lqp
                .degrees
                .iter()
                .filter(|d| !d.homogeneity_ok)
                .map(|d| format!("degree {}: E_0 forms are not weight-homogeneous under {grading}", d.degree))
                .collect();
            Outcome {
                warnings,
                ..Outcome::ok(Report::Lqp(r), emit)
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { emit } => Outcome::ok(Report::CatalogList(CatalogList::build(&entries()?)), emit),
            CatalogAction::Show { name, emit } => {
                let e = find(&name)?;
                Outcome::ok(
                    Report::CatalogShow(CatalogShow {
                        source: e.source,
                        entry: e.file,
                    }),
                    emit,
                )
            }
        },
    })
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command) {
        Ok(o) => {
            for w in &o.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let _ = out.write_all(emit(&o.doc, o.format).as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rumin").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&[]).0, 2);
        assert_eq!(call(&["dc", "n632"]).0, 2);
        let (code, _, err) = call(&["analyze", "missing.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("missing.json"));
        assert_eq!(call(&["lqp", "n632", "--grading", "V9"]).0, 2);
        assert_eq!(call(&["dc", "n632", "--degree", "7"]).0, 2);
    }

    #[test]
    fn lqp_v2_degree1() {
        let (code, out, _) = call(&["lqp", "n632", "--grading", "V2"]);
        assert_eq!(code, 0);
        assert!(out.contains("ℓ^{q,p}H^1(G) ≠ 0 for 1/p − 1/q < 1/10"), "{out}");
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }
}
