//! `hom3lie`: exact checks for 3-Hom-Lie algebras from JSON structure constants.
//!
//! Every command writes a JSON report to stdout (or `--out`) and a table to
//! stderr. Exit status is 0 when every check passes, 1 when one fails and 2
//! when the input cannot be used.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hom3lie::bialgebra::assemble_coboundary;
use hom3lie::document::{
    cobracket_coefficients, parse_params, AlgebraDocument, AlphaDocument, RMatrixDocument,
    ReportDocument,
};
use hom3lie::homlie::{
    hom_jacobi_residual, morphism_residual, multiplicative_residual, skew_residual,
};
use hom3lie::report::ResidualJson;
use hom3lie::solver::{solve, SolverConfig};
use hom3lie::verify::{verify_ex31, verify_ex32};
use hom3lie::ybe::{self, variant_brackets, RMatrix};
use hom3lie::{CheckEntry, Error, HomTriAlgebra, TwistMap, VerificationReport};

#[derive(Parser)]
#[command(
    name = "hom3lie",
    version,
    about = "Exact checks for 3-Hom-Lie algebras and bialgebras"
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Skip the table on stderr.
    #[arg(long, global = true)]
    json_only: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Skew-symmetry, Hom-Jacobi identity and multiplicativity of an algebra.
    CheckAlgebra { file: PathBuf },
    /// The classical Hom-Yang-Baxter bracket of an r-matrix and related residuals.
    Chybe { file: PathBuf, rfile: PathBuf },
    /// Builds the coboundary bialgebra of an r-matrix and checks every stage.
    Bialgebra { file: PathBuf, rfile: PathBuf },
    /// Twists a 3-Lie algebra by an endomorphism, optionally carrying a solution along.
    Twist {
        file: PathBuf,
        alphafile: PathBuf,
        /// Highest power of α applied to the r-matrix.
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// A solution in the untwisted algebra.
        #[arg(long)]
        r: Option<PathBuf>,
    },
    /// Searches the α-invariant skew subspace for exact solutions.
    Solve {
        file: PathBuf,
        /// Twist the algebra by this endomorphism first.
        #[arg(long)]
        alpha: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(long)]
        max_denominator: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Re-derives the claims of a bundled worked example.
    VerifyExample {
        which: Example,
        /// JSON object of parameter overrides, values as rational strings.
        #[arg(long)]
        params: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Ex31,
    Ex32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let doc = match run(&cli.command) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if !cli.json_only {
        eprint!("{}", render_table(&doc));
    }
    let mut text = doc.to_json();
    text.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(if doc.overall { 0 } else { 1 })
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load_algebra(path: &Path) -> Result<HomTriAlgebra, Error> {
    let text = read(path)?;
    in_file(
        path,
        AlgebraDocument::from_json(&text).and_then(|d| d.to_algebra()),
    )
}

fn load_r(path: &Path, dim: usize) -> Result<RMatrix, Error> {
    let text = read(path)?;
    let r = in_file(
        path,
        RMatrixDocument::from_json(&text).and_then(|d| d.to_rmatrix()),
    )?;
    if r.dim() != dim {
        return Err(Error::Dimension(format!(
            "{}: r-matrix has dim {}, algebra has dim {dim}",
            path.display(),
            r.dim()
        )));
    }
    Ok(r)
}

fn load_alpha(path: &Path, dim: usize) -> Result<TwistMap, Error> {
    let text = read(path)?;
    let a = in_file(
        path,
        AlphaDocument::from_json(&text).and_then(|d| d.to_twist_map()),
    )?;
    if a.dim() != dim {
        return Err(Error::Dimension(format!(
            "{}: twist map has dim {}, algebra has dim {dim}",
            path.display(),
            a.dim()
        )));
    }
    Ok(a)
}

fn document(command: &str, report: &VerificationReport) -> ReportDocument {
    ReportDocument::new(env!("CARGO_PKG_VERSION"), command, report)
}

fn algebra_report(alg: &HomTriAlgebra) -> VerificationReport {
    [
        skew_residual(alg.bracket()),
        hom_jacobi_residual(alg),
        multiplicative_residual(alg),
    ]
    .into_iter()
    .collect()
}

fn renamed(mut e: CheckEntry, name: impl Into<String>) -> CheckEntry {
    e.name = name.into();
    e
}

/// `(L, α∘[·,·,·], α)` whether or not α is a morphism.
fn twisted(alg: &HomTriAlgebra, alpha: &TwistMap) -> Result<HomTriAlgebra, Error> {
    HomTriAlgebra::new_unchecked(alg.bracket().compose_left(alpha.matrix()), alpha.clone())
}

/// The bracket of `alg` as a 3-Lie algebra: its identity check and α's morphism check.
fn base_checks(alg: &HomTriAlgebra, alpha: &TwistMap) -> Result<VerificationReport, Error> {
    let base = HomTriAlgebra::untwisted(alg.bracket().clone())?;
    let mut report = VerificationReport::new();
    report.push(renamed(hom_jacobi_residual(&base), "fundamental identity"));
    report.push(CheckEntry::exact(
        "morphism",
        morphism_residual(alg.bracket(), alpha.matrix()),
    ));
    Ok(report)
}

fn run(command: &Command) -> Result<ReportDocument, Error> {
    match command {
        Command::CheckAlgebra { file } => {
            let alg = load_algebra(file)?;
            Ok(document("check-algebra", &algebra_report(&alg)))
        }
        Command::Chybe { file, rfile } => {
            let alg = load_algebra(file)?;
            let r = load_r(rfile, alg.dim())?;
            let mut report = VerificationReport::new();
            report.push(ybe::skew_residual(&r));
            report.push(ybe::alpha_invariance_residual(&r, alg.alpha())?);
            let bracket = ybe::chybe_bracket(&r, &alg)?;
            report.push(CheckEntry::exact("chybe", bracket.max_magnitude()));
            let [v1, v2, v3] = variant_brackets(&r, &alg)?;
            report.push(CheckEntry::exact(
                "skew reduction 1",
                (&v1 - &bracket).max_magnitude(),
            ));
            report.push(CheckEntry::exact(
                "skew reduction 2",
                (&v2 + &bracket).max_magnitude(),
            ));
            report.push(CheckEntry::exact(
                "skew reduction 3",
                (&v3 - &bracket).max_magnitude(),
            ));
            report.push(ybe::ad_condition_residual(&r, &alg)?);
            Ok(document("chybe", &report))
        }
        Command::Bialgebra { file, rfile } => {
            let alg = load_algebra(file)?;
            let r = load_r(rfile, alg.dim())?;
            let b = assemble_coboundary(&alg, &r)?;
            let mut doc = document("bialgebra", &b.report);
            let [d1, d2, d3] = &b.components;
            doc.payload = Some(json!({
                "delta1": cobracket_coefficients(d1),
                "delta2": cobracket_coefficients(d2),
                "delta3": cobracket_coefficients(d3),
                "delta": cobracket_coefficients(b.delta()),
            }));
            Ok(doc)
        }
        Command::Twist {
            file,
            alphafile,
            n,
            r,
        } => {
            let alg = load_algebra(file)?;
            let alpha = load_alpha(alphafile, alg.dim())?;
            let r = r.as_deref().map(|p| load_r(p, alg.dim())).transpose()?;
            let mut report = base_checks(&alg, &alpha)?;
            let l_alpha = twisted(&alg, &alpha)?;
            report.extend_prefixed("L_alpha", algebra_report(&l_alpha));
            let mut payload = serde_json::Map::new();
            payload.insert(
                "algebra".into(),
                to_value(&AlgebraDocument::from_algebra(&l_alpha)),
            );
            if let Some(r) = r {
                let untwisted = HomTriAlgebra::untwisted(alg.bracket().clone())?;
                report.push(renamed(
                    ybe::chybe_residual(&r, &untwisted)?,
                    "chybe of r in L",
                ));
                let mut rs = Vec::new();
                for m in 0..=*n {
                    let rm = ybe::twisted_r(&r, &alpha, m)?;
                    let e = ybe::chybe_residual(&rm, &l_alpha)?;
                    report.push(renamed(
                        e,
                        format!("chybe of alpha^{m} r alpha^{m}T in L_alpha"),
                    ));
                    rs.push(to_value(&RMatrixDocument::from_rmatrix(&rm)));
                }
                payload.insert("twisted_r".into(), Value::Array(rs));
            }
            let mut doc = document("twist", &report);
            doc.payload = Some(Value::Object(payload));
            Ok(doc)
        }
        Command::Solve {
            file,
            alpha,
            tol,
            restarts,
            max_iters,
            max_denominator,
            seed,
        } => {
            let alg = load_algebra(file)?;
            let defaults = SolverConfig::default();
            let config = SolverConfig {
                tol: tol.unwrap_or(defaults.tol),
                restarts: restarts.unwrap_or(defaults.restarts),
                max_iters: max_iters.unwrap_or(defaults.max_iters),
                max_denominator: max_denominator.unwrap_or(defaults.max_denominator),
                seed: seed.unwrap_or(defaults.seed),
                ..defaults
            };
            let mut report = VerificationReport::new();
            let target = match alpha {
                Some(path) => {
                    let a = load_alpha(path, alg.dim())?;
                    report.extend(base_checks(&alg, &a)?);
                    twisted(&alg, &a)?
                }
                None => alg,
            };
            let outcome = solve(&target, &config)?;
            report.extend(outcome.report);
            let mut doc = document("solve", &report);
            let mut header = BTreeMap::new();
            header.insert(
                "algebra".into(),
                if alpha.is_some() { "L_alpha" } else { "input" }.into(),
            );
            for (k, v) in [
                ("tol", config.tol.to_string()),
                ("restarts", config.restarts.to_string()),
                ("max_iters", config.max_iters.to_string()),
                ("max_denominator", config.max_denominator.to_string()),
                ("seed", config.seed.to_string()),
            ] {
                header.insert(k.to_string(), v);
            }
            doc.header = Some(header);
            let rdocs = |rs: &[RMatrix]| -> Vec<Value> {
                rs.iter()
                    .map(|r| to_value(&RMatrixDocument::from_rmatrix(r)))
                    .collect()
            };
            doc.payload = Some(json!({
                "subspace": rdocs(outcome.param.basis()),
                "candidates": outcome.candidates.len(),
                "solutions": rdocs(&outcome.solutions),
            }));
            Ok(doc)
        }
        Command::VerifyExample { which, params } => {
            let given = match params {
                Some(p) => in_file(p, parse_params(&read(p)?))?,
                None => BTreeMap::new(),
            };
            let (name, ex) = match which {
                Example::Ex31 => ("ex31", verify_ex31(&given)?),
                Example::Ex32 => ("ex32", verify_ex32(&given)?),
            };
            let mut doc = document(&format!("verify-example {name}"), &ex.report);
            doc.header = Some(ex.header);
            doc.payload = Some(json!({
                "delta": cobracket_coefficients(ex.bialgebra.delta()),
            }));
            Ok(doc)
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("document serializes")
}

fn render_table(doc: &ReportDocument) -> String {
    let mut out = format!("{}\n", doc.command);
    if let Some(h) = &doc.header {
        for (k, v) in h {
            out.push_str(&format!("  {k}: {v}\n"));
        }
    }
    let width = doc
        .checks
        .iter()
        .map(|c| c.name.chars().count())
        .max()
        .unwrap_or(0);
    for c in &doc.checks {
        let residual = match &c.residual {
            ResidualJson::Exact(s) => s.clone(),
            ResidualJson::Float(x) => format!("{x:e}"),
        };
        let pad = width - c.name.chars().count();
        out.push_str(&format!(
            "  {}{}  {}  {}\n",
            c.name,
            " ".repeat(pad),
            if c.pass { "pass" } else { "FAIL" },
            residual
        ));
    }
    out.push_str(&format!(
        "overall: {}\n",
        if doc.overall { "pass" } else { "FAIL" }
    ));
    out
}
