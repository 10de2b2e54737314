//! Multiplicity recovery for inverse representations.
//!
//! A copy of `π₁` contributes `e₀` to `ker T*(2)T(3)`; a copy of `π₀`
//! contributes nothing there. The joint kernel `ker T*(2) ∩ ker T*(3)` (the
//! wandering space) receives `e₀` from each `π₁` copy and the pair `f₀, f₁`
//! from each `π₀` copy.

use serde::{Deserialize, Serialize};

use super::checks::{is_inverse_representation, kernel_basis};
use super::{CheckConfig, CheckVerdict};
use crate::error::{Error, Result};
use crate::linalg::{null_space, vector_from_coordinates, CMatrix, OrthoBasis, RANK_THRESHOLD};
use crate::monomial::Monomial;
use crate::representation::Representation;
use crate::state::StateVector;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub mult_pi0: usize,
    pub mult_pi1: usize,
    /// The window holds directions not generated from the wandering space.
    pub residual: bool,
    pub wandering_dim: usize,
    pub inverse: CheckVerdict,
}

fn word(text: &str) -> Monomial {
    text.parse().expect("built-in word")
}

pub fn decompose(rep: &Representation, cfg: &CheckConfig) -> Result<Decomposition> {
    let inverse = is_inverse_representation(rep, cfg)?;
    if !inverse.passed {
        let what = inverse
            .witness
            .as_ref()
            .map(|w| format!("word `{}` is not a projection", w.monomial))
            .unwrap_or_default();
        return Err(Error::NotInverse(what));
    }
    let window = cfg.window;

    let mult_pi1 = kernel_basis(rep, &word("2* 3"), window)?.len();

    let down2 = rep.operator_matrix(&word("2*"), window)?.matrix;
    let down3 = rep.operator_matrix(&word("3*"), window)?.matrix;
    let mut stacked = CMatrix::zeros(down2.nrows() + down3.nrows(), window);
    stacked.view_mut((0, 0), (down2.nrows(), window)).copy_from(&down2);
    stacked
        .view_mut((down2.nrows(), 0), (down3.nrows(), window))
        .copy_from(&down3);
    let wandering: Vec<StateVector> = null_space(&stacked, RANK_THRESHOLD)
        .iter()
        .map(|x| vector_from_coordinates(rep, x))
        .collect();
    let wandering_dim = wandering.len();

    if wandering_dim < mult_pi1 || (wandering_dim - mult_pi1) % 2 != 0 {
        return Err(Error::Decomposition(format!(
            "wandering space of dimension {wandering_dim} is inconsistent with {mult_pi1} copies of pi1"
        )));
    }
    let mult_pi0 = (wandering_dim - mult_pi1) / 2;

    // The shifts T(m), m ∈ {0} ∪ [2, reach], of the wandering space should
    // exhaust the window.
    let labels = rep.window_labels(window);
    let reach = labels.iter().map(|l| l.n).max().unwrap_or(0) + 2;
    let mut span = OrthoBasis::new(RANK_THRESHOLD);
    for h in &wandering {
        span.insert(h);
        for m in 2..=reach {
            span.insert(&rep.apply_iso(m, h)?);
        }
    }
    let residual = labels.iter().any(|&l| span.distance_to(l) > RANK_THRESHOLD);

    Ok(Decomposition {
        mult_pi0,
        mult_pi1,
        residual,
        wandering_dim,
        inverse,
    })
}
