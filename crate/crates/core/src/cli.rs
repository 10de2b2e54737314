//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::representation::Representation;
use crate::semigroup::NumericalSemigroup;
use crate::state::{BasisLabel, StateVector};
use crate::verifier::{self, CheckVerdict, SuiteConfig, CHECK_NAMES};

#[derive(Parser, Debug)]
#[command(name = "semishift")]
#[command(about = "Exact evaluation and verification for isometric representations of Z+ \\ {1}")]
#[command(version)]
pub struct Cli {
    #[command(flatten)]
    pub scope: ScopeArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ScopeArgs {
    /// Basis window size
    #[arg(long, global = true)]
    pub window: Option<usize>,

    /// Maximum word length for enumerations
    #[arg(long = "max-len", global = true)]
    pub max_len: Option<usize>,

    /// Residual tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Emit JSON
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomised checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Conjugation-limit normal form of a word, e.g. "3 2*"
    Normalize { word: String },
    /// Index (b − a) of a word
    Index { word: String },
    /// Apply a word to a basis vector
    Eval {
        /// Representation spec (JSON file)
        spec: PathBuf,
        word: String,
        /// Basis label, `n` or `branch:n`
        #[arg(long, default_value = "0")]
        label: String,
    },
    /// Run one named check
    Check {
        /// One of: lemma31, relations, pq, kernel, inverse, commute, cyclic,
        /// decompose, fingerprint, adjoint
        name: String,
        spec: PathBuf,
    },
    /// Run the full suite
    Report { spec: PathBuf },
    /// Print the unitary-invariant fingerprint
    Fingerprint { spec: PathBuf },
    /// Recover the multiplicities of pi0 and pi1
    Decompose { spec: PathBuf },
}

impl ScopeArgs {
    fn suite_config(&self) -> Result<SuiteConfig> {
        let mut cfg = SuiteConfig::default();
        if let Some(w) = self.window {
            if w == 0 {
                return Err(Error::OutOfRange("--window must be at least 1".into()));
            }
            cfg.checks.window = w;
            cfg.cyclic_window = w;
            cfg.fingerprint_window = w.max(20);
        }
        if let Some(l) = self.max_len {
            if l < 2 {
                return Err(Error::OutOfRange("--max-len must be at least 2".into()));
            }
            cfg.checks.max_len = l;
            cfg.cyclic_max_len = l;
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::OutOfRange("--tol must be positive".into()));
            }
            cfg.checks.tol = t;
        }
        if let Some(s) = self.seed {
            cfg.checks.seed = s;
        }
        Ok(cfg)
    }
}

pub fn load_spec(path: &Path) -> Result<Representation> {
    std::fs::read_to_string(path)?.parse()
}

fn parse_label(text: &str) -> Result<BasisLabel> {
    let bad = || Error::Parse {
        position: 0,
        message: format!("expected `n` or `branch:n`, found `{text}`"),
    };
    match text.split_once(':') {
        Some((b, n)) => Ok(BasisLabel::new(
            b.trim().parse().map_err(|_| bad())?,
            n.trim().parse().map_err(|_| bad())?,
        )),
        None => Ok(BasisLabel::single(text.trim().parse().map_err(|_| bad())?)),
    }
}

fn vector_json(v: &StateVector) -> serde_json::Value {
    serde_json::Value::Array(
        v.iter()
            .map(|(l, c)| json!({"label": l, "re": c.re, "im": c.im}))
            .collect(),
    )
}

fn print_verdict(out: &mut dyn Write, v: &CheckVerdict) -> Result<()> {
    let status = if v.passed { "PASS" } else { "FAIL" };
    let worst = v.residuals.iter().copied().fold(0.0, f64::max);
    writeln!(out, "[{status}] {:<12} max residual {worst:.3e}", v.name)?;
    for (k, val) in &v.details {
        if k != "fingerprint" {
            writeln!(out, "    {k}: {val}")?;
        }
    }
    if let Some(w) = &v.witness {
        let label = w.label.map(|l| format!(" at {l}")).unwrap_or_default();
        let note = w.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
        writeln!(out, "    witness: `{}`{label}, residual {:.3e}{note}", w.monomial, w.residual)?;
    }
    Ok(())
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<i32>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                write!(out, "{e}")?;
            }
            return Ok(code);
        }
    };
    let json_out = cli.scope.json;
    let semigroup = NumericalSemigroup::perforated();

    match &cli.command {
        Command::Normalize { word } => {
            let w = Monomial::parse(word, &semigroup)?;
            let nf = w.conj_limit_normal_form(&semigroup);
            if json_out {
                let value = json!({
                    "word": w,
                    "a": nf.pair.a,
                    "b": nf.pair.b,
                    "index": nf.index,
                    "c_min": nf.c_min,
                    "normal_form": nf.pair.to_monomial(),
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
            } else {
                writeln!(out, "(a={}, b={})", nf.pair.a, nf.pair.b)?;
                writeln!(out, "index: {:+}", nf.index)?;
                writeln!(out, "c_min: {}", nf.c_min)?;
                writeln!(out, "normal form: {}", nf.pair.to_monomial())?;
            }
            Ok(0)
        }
        Command::Index { word } => {
            let w = Monomial::parse(word, &semigroup)?;
            if json_out {
                writeln!(out, "{}", json!({"word": w, "index": w.index()}))?;
            } else {
                writeln!(out, "{:+}", w.index())?;
            }
            Ok(0)
        }
        Command::Eval { spec, word, label } => {
            let rep = load_spec(spec)?;
            let w = Monomial::parse(word, &semigroup)?;
            let label = parse_label(label)?;
            let image = rep.apply_monomial(&w, &StateVector::basis(label))?;
            if json_out {
                let value = json!({"word": w, "label": label, "result": vector_json(&image)});
                writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
            } else {
                writeln!(out, "{image}")?;
            }
            Ok(0)
        }
        Command::Check { name, spec } => {
            if !CHECK_NAMES.contains(&name.as_str()) {
                return Err(Error::UnknownCheck(name.clone()));
            }
            let cfg = cli.scope.suite_config()?;
            let rep = load_spec(spec)?;
            let verdict = verifier::run_check(name, &rep, &cfg)?;
            if json_out {
                writeln!(out, "{}", serde_json::to_string_pretty(&verdict)?)?;
            } else {
                print_verdict(out, &verdict)?;
            }
            Ok(if verdict.passed { 0 } else { 1 })
        }
        Command::Report { spec } => {
            let cfg = cli.scope.suite_config()?;
            let rep = load_spec(spec)?;
            let report = verifier::run_suite(&rep, &cfg)?;
            if json_out {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                writeln!(out, "representation: {}", rep.name())?;
                for v in &report.verdicts {
                    print_verdict(out, v)?;
                }
                let passed = report.verdicts.iter().filter(|v| v.passed).count();
                writeln!(
                    out,
                    "{passed}/{} checks passed in {} ms",
                    report.verdicts.len(),
                    report.elapsed_ms
                )?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Fingerprint { spec } => {
            let cfg = cli.scope.suite_config()?;
            let rep = load_spec(spec)?;
            let fp = verifier::fingerprint(&rep, cfg.fingerprint_window)?;
            if json_out {
                writeln!(out, "{}", serde_json::to_string_pretty(&fp)?)?;
            } else {
                for (&(n, m), norm) in verifier::FINGERPRINT_PAIRS.iter().zip(&fp.commutator_norms) {
                    writeln!(out, "||[P({n}),P({m})]|| = {norm:.12}")?;
                }
                writeln!(out, "||PQ - Q||      = {:.12}", fp.pq_residual)?;
                writeln!(out, "dim ker T*(2)T(3) = {}", fp.kernel_dim)?;
                writeln!(out, "window {} (stable: {})", fp.window, fp.stable)?;
            }
            Ok(if fp.stable { 0 } else { 1 })
        }
        Command::Decompose { spec } => {
            let cfg = cli.scope.suite_config()?;
            let rep = load_spec(spec)?;
            let d = verifier::decompose(&rep, &cfg.checks)?;
            if json_out {
                let value = json!({
                    "mult_pi0": d.mult_pi0,
                    "mult_pi1": d.mult_pi1,
                    "residual": d.residual,
                    "wandering_dim": d.wandering_dim,
                    "inverse": d.inverse,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
            } else {
                writeln!(out, "mult_pi0: {}", d.mult_pi0)?;
                writeln!(out, "mult_pi1: {}", d.mult_pi1)?;
                writeln!(out, "residual: {}", d.residual)?;
            }
            Ok(if d.residual { 1 } else { 0 })
        }
    }
}
