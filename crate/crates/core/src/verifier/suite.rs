use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::decompose::decompose;
use super::fingerprint::{fingerprint, Fingerprint};
use super::{CheckConfig, CheckVerdict, Scope, Witness};
use crate::error::{Error, Result};
use crate::representation::{Representation, RepresentationSpec};
use crate::state::StateVector;

/// Registry order; reports list verdicts in this order.
pub const CHECK_NAMES: [&str; 10] = [
    "lemma31",
    "relations",
    "pq",
    "kernel",
    "inverse",
    "commute",
    "cyclic",
    "decompose",
    "fingerprint",
    "adjoint",
];

const LEMMA31_N_MAX: u64 = 8;
const ADJOINT_SAMPLES: usize = 500;

/// Runs one named check. `decompose` and `fingerprint` fold their structured
/// results into the verdict details.
pub fn run_check(name: &str, rep: &Representation, cfg: &SuiteConfig) -> Result<CheckVerdict> {
    let base = &cfg.checks;
    match name {
        "lemma31" => check_lemma31_suite(rep, LEMMA31_N_MAX, base),
        "relations" => check_obvious_relations(rep, base),
        "pq" => check_pq(rep, base),
        "kernel" => check_kernel(rep, base),
        "inverse" => is_inverse_representation(rep, base),
        "commute" => check_commuting_projections(rep, base),
        "cyclic" => {
            let scoped = CheckConfig {
                window: cfg.cyclic_window,
                ..*base
            };
            let seed = StateVector::basis(rep.label_at(0));
            cyclicity_check(rep, &seed, cfg.cyclic_max_len, &scoped)
        }
        "decompose" => Ok(decompose_verdict(rep, base)),
        "fingerprint" => {
            let fp = fingerprint(rep, cfg.fingerprint_window)?;
            Ok(fingerprint_verdict(&fp, base))
        }
        "adjoint" => check_adjointness(rep, ADJOINT_SAMPLES, base),
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

fn decompose_verdict(rep: &Representation, cfg: &CheckConfig) -> CheckVerdict {
    let scope = Scope {
        word_length_bound: Some(cfg.max_len),
        window_size: cfg.window,
        tolerance: cfg.tol,
    };
    let mut verdict = CheckVerdict::new("decompose", scope);
    match decompose(rep, cfg) {
        Ok(d) => {
            verdict.detail("mult_pi0", d.mult_pi0);
            verdict.detail("mult_pi1", d.mult_pi1);
            verdict.detail("residual", d.residual);
            verdict.detail("wandering_dim", d.wandering_dim);
            if d.residual {
                verdict.fail(Witness {
                    monomial: Default::default(),
                    label: None,
                    residual: 1.0,
                    note: Some("window not exhausted by the recovered summands".into()),
                });
            }
        }
        Err(e) => {
            let inverse = is_inverse_representation(rep, cfg).ok();
            let mut witness = inverse.and_then(|v| v.witness).unwrap_or(Witness {
                monomial: Default::default(),
                label: None,
                residual: 0.0,
                note: None,
            });
            witness.note = Some(e.to_string());
            verdict.fail(witness);
        }
    }
    verdict
}

fn fingerprint_verdict(fp: &Fingerprint, cfg: &CheckConfig) -> CheckVerdict {
    let scope = Scope {
        word_length_bound: Some(8),
        window_size: fp.window,
        tolerance: cfg.tol,
    };
    let mut verdict = CheckVerdict::new("fingerprint", scope);
    verdict.residuals = fp.commutator_norms.clone();
    verdict.residuals.push(fp.pq_residual);
    verdict.detail("fingerprint", fp);
    if !fp.stable {
        verdict.fail(Witness {
            monomial: Default::default(),
            label: None,
            residual: 0.0,
            note: Some("fingerprint did not stabilise under window growth".into()),
        });
    }
    verdict
}

/// Scopes for a full suite run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub checks: CheckConfig,
    pub cyclic_max_len: usize,
    pub cyclic_window: usize,
    pub fingerprint_window: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            checks: CheckConfig::default(),
            cyclic_max_len: 8,
            cyclic_window: 20,
            fingerprint_window: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteReport {
    pub tool_version: String,
    pub rep_spec: RepresentationSpec,
    pub verdicts: Vec<CheckVerdict>,
    pub fingerprint: Option<Fingerprint>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

/// Runs every registered check; verdict order follows [`CHECK_NAMES`]
/// whatever order they finish in.
pub fn run_suite(rep: &Representation, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let verdicts = CHECK_NAMES
        .par_iter()
        .map(|name| run_check(name, rep, cfg))
        .collect::<Result<Vec<_>>>()?;
    let fingerprint = verdicts
        .iter()
        .find(|v| v.name == "fingerprint")
        .and_then(|v| v.details.get("fingerprint"))
        .and_then(|f| serde_json::from_value(f.clone()).ok());
    Ok(SuiteReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        rep_spec: rep.clone().into(),
        verdicts,
        fingerprint,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
