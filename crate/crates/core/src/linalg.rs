//! Dense helpers on windowed matrices: singular values, null spaces and
//! incremental orthonormal bases of finitely supported vectors.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::representation::Representation;
use crate::state::{BasisLabel, StateVector};

pub type CMatrix = DMatrix<Complex64>;

/// Singular values below this count as zero.
pub const RANK_THRESHOLD: f64 = 1e-8;

pub(crate) fn matrix_from_columns(
    rep: &Representation,
    columns: &[StateVector],
    min_rows: usize,
) -> Result<CMatrix> {
    let mut rows = min_rows;
    let mut placed = Vec::with_capacity(columns.len());
    for col in columns {
        let mut entries = Vec::with_capacity(col.support_len());
        for (label, c) in col.iter() {
            let pos = rep
                .label_position(label)
                .ok_or(Error::InvalidLabel { label })?;
            rows = rows.max(pos + 1);
            entries.push((pos, c));
        }
        placed.push(entries);
    }
    let mut m = CMatrix::zeros(rows, columns.len());
    for (j, entries) in placed.into_iter().enumerate() {
        for (i, c) in entries {
            m[(i, j)] = c;
        }
    }
    Ok(m)
}

/// Coordinates of `v` on the first `size` canonical basis vectors.
pub fn window_coordinates(rep: &Representation, v: &StateVector, size: usize) -> DVector<Complex64> {
    let mut out = DVector::zeros(size);
    for (label, c) in v.iter() {
        if let Some(p) = rep.label_position(label) {
            if p < size {
                out[p] = c;
            }
        }
    }
    out
}

/// Inverse of [`window_coordinates`].
pub fn vector_from_coordinates(rep: &Representation, coords: &DVector<Complex64>) -> StateVector {
    StateVector::from_entries(
        coords
            .iter()
            .enumerate()
            .map(|(p, &c)| (rep.label_at(p), c)),
    )
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Orthonormal basis of `{x : m x = 0}`, as columns.
pub fn null_space(m: &CMatrix, threshold: f64) -> Vec<DVector<Complex64>> {
    let n = m.ncols();
    if n == 0 {
        return Vec::new();
    }
    // Thin SVD only yields min(rows, n) right singular vectors.
    let padded = if m.nrows() < n {
        let mut p = CMatrix::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < threshold)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect()
}

pub fn rank(m: &CMatrix, threshold: f64) -> usize {
    singular_values(m).iter().filter(|&&s| s >= threshold).count()
}

/// Incrementally built orthonormal basis of a span of state vectors.
#[derive(Debug, Clone, Default)]
pub struct OrthoBasis {
    vectors: Vec<StateVector>,
    threshold: f64,
}

impl OrthoBasis {
    pub fn new(threshold: f64) -> Self {
        Self {
            vectors: Vec::new(),
            threshold,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    /// Component of `v` orthogonal to the span (two Gram–Schmidt passes).
    pub fn orthogonal_part(&self, v: &StateVector) -> StateVector {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &self.vectors {
                let c = r.inner(q);
                r.axpy(-c, q);
            }
        }
        r
    }

    /// Adds the direction of `v` if it leaves the span by more than the
    /// threshold (relative to `‖v‖`). Returns whether it was added.
    pub fn insert(&mut self, v: &StateVector) -> bool {
        let norm = v.norm();
        if norm == 0.0 {
            return false;
        }
        let r = self.orthogonal_part(&v.scale(Complex64::new(1.0 / norm, 0.0)));
        let rn = r.norm();
        if rn <= self.threshold {
            return false;
        }
        self.vectors.push(r.scale(Complex64::new(1.0 / rn, 0.0)));
        true
    }

    /// Distance from the basis vector `label` to the span.
    pub fn distance_to(&self, label: BasisLabel) -> f64 {
        self.orthogonal_part(&StateVector::basis(label)).norm()
    }
}
