use serde::{Deserialize, Serialize};

use super::checks::kernel_dim;
use crate::error::{Error, Result};
use crate::linalg::spectral_norm;
use crate::monomial::{Monomial, TrivialMonomial};
use crate::representation::Representation;
use crate::state::StateVector;

/// Pairs `(n, m)` whose range projections enter the commutator norms.
pub const FINGERPRINT_PAIRS: [(u64, u64); 4] = [(2, 3), (2, 4), (3, 4), (2, 5)];

const GROWTH: usize = 10;
const STABLE: f64 = 1e-10;
const MAX_GROWTH_STEPS: usize = 20;

/// Unitary invariants of a representation computed on a basis window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    /// `‖[P(n), P(m)]‖` over [`FINGERPRINT_PAIRS`].
    pub commutator_norms: Vec<f64>,
    /// `‖PQ − Q‖` for `P = T*(3)T(2)T*(2)T(3)`, `Q = T*(2)T(3)T*(3)T(2)`.
    pub pq_residual: f64,
    /// `dim ker T*(2)T(3)` on the window.
    pub kernel_dim: usize,
    /// Window the values were taken on.
    pub window: usize,
    /// Enlarging the window by 10 moved no norm by more than 1e-10.
    pub stable: bool,
}

impl Fingerprint {
    fn components(&self) -> Vec<f64> {
        let mut c = self.commutator_norms.clone();
        c.push(self.pq_residual);
        c.push(self.kernel_dim as f64);
        c
    }

    /// Largest componentwise difference.
    pub fn distance(&self, other: &Fingerprint) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn projection(n: u64) -> Monomial {
    Monomial::new(vec![TrivialMonomial::iso(n), TrivialMonomial::coiso(n)])
}

/// Windowed operator norm of `A − B`.
fn difference_norm(rep: &Representation, a: &Monomial, b: &Monomial, window: usize) -> Result<f64> {
    let columns = rep
        .basis_window(window)
        .iter()
        .map(|v| Ok(&rep.apply_monomial(a, v)? - &rep.apply_monomial(b, v)?))
        .collect::<Result<Vec<StateVector>>>()?;
    Ok(spectral_norm(&rep.columns_matrix(&columns, window)?.matrix))
}

fn measure(rep: &Representation, window: usize) -> Result<Fingerprint> {
    let commutator_norms = FINGERPRINT_PAIRS
        .iter()
        .map(|&(n, m)| {
            let (pn, pm) = (projection(n), projection(m));
            difference_norm(rep, &pn.concat(&pm), &pm.concat(&pn), window)
        })
        .collect::<Result<Vec<_>>>()?;
    let p: Monomial = "3* 2 2* 3".parse()?;
    let q: Monomial = "2* 3 3* 2".parse()?;
    let pq_residual = difference_norm(rep, &p.concat(&q), &q, window)?;
    let kernel_dim = kernel_dim(rep, &"2* 3".parse()?, window)?;
    Ok(Fingerprint {
        commutator_norms,
        pq_residual,
        kernel_dim,
        window,
        stable: false,
    })
}

/// Grows the window from `window` in steps of 10 until the fingerprint stops
/// moving.
pub fn fingerprint(rep: &Representation, window: usize) -> Result<Fingerprint> {
    if window < 20 {
        return Err(Error::OutOfRange("fingerprint window must be at least 20".into()));
    }
    let mut current = measure(rep, window)?;
    for _ in 0..MAX_GROWTH_STEPS {
        let larger = measure(rep, current.window + GROWTH)?;
        let moved = current.distance(&larger);
        if moved <= STABLE {
            current.stable = true;
            return Ok(current);
        }
        current = larger;
    }
    Ok(current)
}
