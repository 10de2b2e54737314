//! Bounded machine checks of operator identities and classification
//! criteria. Every check runs on a finite window of basis vectors and
//! reports its scope alongside the verdict.

mod checks;
mod decompose;
mod fingerprint;
mod suite;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::monomial::Monomial;
use crate::state::BasisLabel;

pub use checks::{
    check_adjointness, check_commuting_projections, check_identity, check_kernel,
    check_lemma31_suite, check_obvious_relations, check_pq, cyclicity_check,
    identity_residual, is_inverse_representation, kernel_basis, kernel_dim, projection_residuals,
};
pub use decompose::{decompose, Decomposition};
pub use fingerprint::{fingerprint, Fingerprint, FINGERPRINT_PAIRS};
pub use suite::{run_check, run_suite, SuiteConfig, SuiteReport, CHECK_NAMES};

/// Scope parameters shared by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub max_len: usize,
    pub window: usize,
    pub tol: f64,
    /// Largest argument used when enumerating words.
    pub arg_cap: u64,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            max_len: 6,
            window: 40,
            tol: 1e-10,
            arg_cap: 6,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scope {
    pub word_length_bound: Option<usize>,
    pub window_size: usize,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub monomial: Monomial,
    pub label: Option<BasisLabel>,
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckVerdict {
    pub name: String,
    pub passed: bool,
    pub scope: Scope,
    pub witness: Option<Witness>,
    pub residuals: Vec<f64>,
    /// Check-specific measurements (kernel dimensions, multiplicities, ...).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
}

impl CheckVerdict {
    fn new(name: impl Into<String>, scope: Scope) -> Self {
        Self {
            name: name.into(),
            passed: true,
            scope,
            witness: None,
            residuals: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    /// Records a residual; the first one at or above `tol` becomes the witness.
    fn record(&mut self, residual: f64, witness: impl FnOnce() -> Witness) {
        self.residuals.push(residual);
        if !(residual < self.scope.tolerance) {
            if self.passed {
                self.witness = Some(witness());
            }
            self.passed = false;
        }
    }

    fn fail(&mut self, witness: Witness) {
        if self.passed {
            self.witness = Some(witness);
        }
        self.passed = false;
    }

    fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(
            key.to_string(),
            serde_json::to_value(value).expect("detail values serialise"),
        );
    }
}
