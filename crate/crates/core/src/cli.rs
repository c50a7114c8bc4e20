//! The `tdlab` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a pair is
//! rejected, 2 for unreadable input or bad flags.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::catalog::{self, AnyPair, DocField, Pair, SplitOutcome};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec, PrimeField};
use crate::report::{CertReport, Verdict};
use crate::tdcore::{
    build_from_verdict, check_structure, check_supertrid, d4_orbit, probe_conjecture,
    verify_tridiagonal_pair, AxiomVerdict, TdSystem,
};
use crate::{polybasis, tensorspace, Rationals};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tdlab", version, about = "Certify tridiagonal pairs in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Checks {
    Axioms,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Krawtchouk,
    Split,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the pair axioms and, with `--checks all`, every certificate.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "axioms")]
        checks: Checks,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the eight D4 relatives with their verdicts.
    Orbit {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write a generated pair document.
    Generate {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        d: Option<usize>,
        /// `rational` or `prime:P`
        #[arg(long, default_value = "rational")]
        field: String,
        /// Comma-separated eigenvalues of A.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// Comma-separated eigenvalues of A*.
        #[arg(long, allow_hyphen_values = true)]
        thetastar: Option<String>,
        /// Comma-separated superdiagonal of A*.
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        /// Output path; stdout when absent.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Dimensions of R and of its homogeneous components.
    Dims {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Runs the command line with the given arguments (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify {
            file,
            checks,
            format,
        } => load(&file).and_then(|p| verify(&p, checks, format, out)),
        Command::Orbit { file, format } => load(&file).and_then(|p| orbit(&p, format, out)),
        Command::Generate {
            family,
            d,
            field,
            theta,
            thetastar,
            phi,
            output,
        } => generate(family, d, &field, theta, thetastar, phi, output, out, err),
        Command::Dims { file, format } => load(&file).and_then(|p| dims(&p, format, out)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn load(path: &std::path::Path) -> Result<AnyPair> {
    catalog::load_file(path)
}

fn emit(report: &CertReport, format: Format, out: &mut dyn Write) -> i32 {
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    let _ = out.write_all(text.as_bytes());
    if report.summary {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn strings<F: Field>(xs: &[F::Elem]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn axiom_verdict<F: Field>(v: &AxiomVerdict<F>) -> Verdict {
    let details = json!({
        "accepted": v.accepted,
        "diameter": v.diameter,
        "shape": v.shape,
        "failures": v.failures,
        "orderingsA": v.orderings_a.iter().map(|o| strings::<F>(o)).collect::<Vec<_>>(),
        "orderingsAstar": v.orderings_astar.iter().map(|o| strings::<F>(o)).collect::<Vec<_>>(),
    });
    Verdict::new("axioms", v.accepted, details)
}

/// Verifies the pair; on acceptance also returns the system for the default
/// (first) standard orderings.
fn accepted_system<F: Field>(pair: &Pair<F>) -> Result<(AxiomVerdict<F>, Option<TdSystem<F>>)> {
    let verdict = verify_tridiagonal_pair(&pair.a, &pair.astar)?;
    if !verdict.accepted {
        return Ok((verdict, None));
    }
    let sys = build_from_verdict(&pair.a, &pair.astar, &verdict, 0, 0)?;
    Ok((verdict, Some(sys)))
}

fn system_report<F: Field>(pair: &Pair<F>, checks: Checks) -> Result<CertReport> {
    let mut report = CertReport::new(&pair.label);
    let (verdict, sys) = accepted_system(pair)?;
    report.push(axiom_verdict(&verdict));
    let Some(sys) = sys else {
        return Ok(report);
    };
    report.push(check_supertrid(&sys).verdict());
    if checks == Checks::All {
        report.push(check_structure(&sys).verdict());
        report.extend(polybasis::verdicts(&sys));
        report.extend(tensorspace::verdicts(&sys));
        report.push(probe_conjecture(&sys).verdict());
    }
    Ok(report)
}

/// The report `tdlab verify` prints for a loaded pair.
pub fn verify_report(pair: &AnyPair, all: bool) -> Result<CertReport> {
    let checks = if all { Checks::All } else { Checks::Axioms };
    match pair {
        AnyPair::Rational(p) => system_report(p, checks),
        AnyPair::Prime(p) => system_report(p, checks),
    }
}

fn verify(pair: &AnyPair, checks: Checks, format: Format, out: &mut dyn Write) -> Result<i32> {
    let report = verify_report(pair, checks == Checks::All)?;
    Ok(emit(&report, format, out))
}

fn orbit_report<F: Field>(pair: &Pair<F>) -> Result<CertReport> {
    let mut report = CertReport::new(&pair.label);
    let (verdict, sys) = accepted_system(pair)?;
    let Some(sys) = sys else {
        report.push(axiom_verdict(&verdict));
        return Ok(report);
    };
    for (g, rel) in d4_orbit(&sys) {
        // each relative must again be a tridiagonal system
        let v = verify_tridiagonal_pair(rel.a(), rel.astar())?;
        let ok = v.accepted && rel.validate().is_ok() && check_supertrid(&rel).pass();
        let details = json!({
            "theta": strings::<F>(rel.theta()),
            "thetastar": strings::<F>(rel.thetastar()),
            "shape": rel.rho(),
        });
        report.push(Verdict::new(format!("relative {g}"), ok, details));
    }
    Ok(report)
}

fn orbit(pair: &AnyPair, format: Format, out: &mut dyn Write) -> Result<i32> {
    let report = match pair {
        AnyPair::Rational(p) => orbit_report(p)?,
        AnyPair::Prime(p) => orbit_report(p)?,
    };
    Ok(emit(&report, format, out))
}

fn dims_report<F: Field>(pair: &Pair<F>) -> Result<(CertReport, Option<tensorspace::DimsReport>)> {
    let mut report = CertReport::new(&pair.label);
    let (verdict, sys) = accepted_system(pair)?;
    let Some(sys) = sys else {
        report.push(axiom_verdict(&verdict));
        return Ok((report, None));
    };
    let dims = tensorspace::TensorCertifier::new(&sys).dims();
    report.push(Verdict::new("tensor.dims", dims.pass(), &dims));
    Ok((report, Some(dims)))
}

fn dims(pair: &AnyPair, format: Format, out: &mut dyn Write) -> Result<i32> {
    let (report, table) = match pair {
        AnyPair::Rational(p) => dims_report(p)?,
        AnyPair::Prime(p) => dims_report(p)?,
    };
    let Some(dims) = table.filter(|_| format == Format::Text) else {
        return Ok(emit(&report, format, out));
    };
    let mut text = format!("dims: {}\n", report.label);
    text.push_str(&format!("{:>3}  {:>8}  {:>8}  {:>6}\n", "t", "dim R_t", "expected", "codim"));
    for s in &dims.slices {
        text.push_str(&format!("{:>3}  {:>8}  {:>8}  {:>6}\n", s.t, s.dim, s.expected, s.codim));
    }
    text.push_str(&format!(
        "dim R = {} (expected {}), codim R = {} (expected {})\n",
        dims.dim_r, dims.expected_dim_r, dims.codim_r, dims.expected_codim_r
    ));
    text.push_str(&format!("summary: {}\n", if report.summary { "pass" } else { "fail" }));
    let _ = out.write_all(text.as_bytes());
    Ok(if report.summary { EXIT_OK } else { EXIT_FAILED })
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    if s == "rational" {
        return Ok(FieldSpec::Rational);
    }
    let p = s
        .strip_prefix("prime:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Error::invalid(format!("--field must be 'rational' or 'prime:P', got '{s}'")))?;
    FieldSpec::prime(p)
}

fn parse_list<F: DocField>(field: &F, flag: &str, s: &str) -> Result<Vec<F::Elem>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            let v = serde_json::Value::String(x.trim().to_string());
            let parsed = field.decode(&v);
            // prime fields also take negative integers, reduced mod p
            let parsed = parsed.or_else(|m| {
                x.trim()
                    .parse::<i64>()
                    .map(|i| field.from_i64(i))
                    .map_err(|_| m)
            });
            parsed.map_err(|m| Error::invalid(format!("--{flag}: {m}")))
        })
        .collect()
}

fn split_pair<F: DocField>(
    field: &F,
    theta: &str,
    thetastar: &str,
    phi: &str,
) -> Result<std::result::Result<Pair<F>, CertReport>> {
    let th = parse_list(field, "theta", theta)?;
    let ths = parse_list(field, "thetastar", thetastar)?;
    let ph = parse_list(field, "phi", phi)?;
    match catalog::split_form(field, &th, &ths, &ph)? {
        SplitOutcome::Accepted(p) => Ok(Ok(p)),
        SplitOutcome::RejectedNotTD(v) => {
            let mut report = CertReport::new("split-form candidate");
            report.push(axiom_verdict(&v));
            Ok(Err(report))
        }
    }
}

impl From<Pair<Rationals>> for AnyPair {
    fn from(p: Pair<Rationals>) -> Self {
        AnyPair::Rational(p)
    }
}

impl From<Pair<PrimeField>> for AnyPair {
    fn from(p: Pair<PrimeField>) -> Self {
        AnyPair::Prime(p)
    }
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: Family,
    d: Option<usize>,
    field: &str,
    theta: Option<String>,
    thetastar: Option<String>,
    phi: Option<String>,
    output: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let spec = parse_field(field)?;
    let pair = match family {
        Family::Krawtchouk => {
            let d = d.ok_or_else(|| Error::invalid("krawtchouk needs --d"))?;
            catalog::gen_krawtchouk(d, spec)?
        }
        Family::Split => {
            let need = |v: Option<String>, flag: &str| {
                v.ok_or_else(|| Error::invalid(format!("split needs --{flag}")))
            };
            let (th, ths, ph) = (need(theta, "theta")?, need(thetastar, "thetastar")?, need(phi, "phi")?);
            let outcome = match spec {
                FieldSpec::Rational => split_pair(&Rationals::new(), &th, &ths, &ph)?.map(AnyPair::from),
                FieldSpec::Prime { p } => {
                    split_pair(&PrimeField::new(p)?, &th, &ths, &ph)?.map(AnyPair::from)
                }
            };
            match outcome {
                Ok(p) => p,
                Err(report) => {
                    let _ = err.write_all(report.to_text().as_bytes());
                    return Ok(EXIT_FAILED);
                }
            }
        }
    };
    let doc = pair.to_document();
    match output {
        Some(path) => std::fs::write(&path, doc)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let _ = out.write_all(doc.as_bytes());
        }
    }
    Ok(EXIT_OK)
}
