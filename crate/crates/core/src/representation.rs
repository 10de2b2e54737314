//! Exact action of the concrete representations of `ℤ₊ \ {1}` on finitely
//! supported vectors.
//!
//! * `Pi0`: shift on `l²(ℤ₊)`, basis `f_n`.
//! * `Pi1`: shift on `l²(ℤ₊ \ {1})`, basis `e_n`, `n ≠ 1`.
//! * `TauBeta`: compression of `Pi0` to `H_β = ℂg_β ⊕ span{e_n : n ≥ 2}`
//!   with `g_β = βe₀ + te₁`. Label `n = 1` is `g_β`, label `0` is unused.
//! * `DirectSum`: one branch per part, optionally conjugated by a finitely
//!   supported unitary ("disguise") so that the summands are not visible in
//!   the label basis.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{matrix_from_columns, CMatrix};
use crate::monomial::{Kind, Monomial, TrivialMonomial};
use crate::state::{BasisLabel, StateVector};

const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RepresentationSpec", into = "RepresentationSpec")]
pub enum Representation {
    Pi0,
    Pi1,
    TauBeta {
        beta: Complex64,
        t: f64,
    },
    DirectSum {
        parts: Vec<Representation>,
        disguise: Option<Disguise>,
    },
}

/// A unitary on a finite set of labels: a permutation followed by plane
/// rotations applied in order. Identity off its support.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Disguise {
    /// `(i, j, θ)`: `|i⟩ ↦ cos θ|i⟩ + sin θ|j⟩`, `|j⟩ ↦ −sin θ|i⟩ + cos θ|j⟩`.
    #[serde(default)]
    pub rotations: Vec<(BasisLabel, BasisLabel, f64)>,
    /// `(from, to)` pairs; `from` and `to` each list the same labels once.
    #[serde(default)]
    pub permutation: Vec<(BasisLabel, BasisLabel)>,
}

impl Disguise {
    pub fn support(&self) -> BTreeSet<BasisLabel> {
        let mut s = BTreeSet::new();
        for &(i, j, _) in &self.rotations {
            s.insert(i);
            s.insert(j);
        }
        for &(a, b) in &self.permutation {
            s.insert(a);
            s.insert(b);
        }
        s
    }

    fn validate_shape(&self) -> Result<()> {
        let from: BTreeSet<_> = self.permutation.iter().map(|p| p.0).collect();
        let to: BTreeSet<_> = self.permutation.iter().map(|p| p.1).collect();
        if from.len() != self.permutation.len() || to.len() != self.permutation.len() || from != to {
            return Err(Error::InvalidRepresentation(
                "disguise permutation is not a bijection of its labels".into(),
            ));
        }
        if let Some((i, _, _)) = self.rotations.iter().find(|(i, j, _)| i == j) {
            return Err(Error::InvalidRepresentation(format!(
                "disguise rotation pairs label {i} with itself"
            )));
        }
        if self.rotations.iter().any(|r| !r.2.is_finite()) {
            return Err(Error::InvalidRepresentation("non-finite rotation angle".into()));
        }
        Ok(())
    }

    /// `U v`
    pub fn apply(&self, v: &StateVector) -> StateVector {
        let mut out = v.map_labels(|l| {
            self.permutation
                .iter()
                .find(|&&(from, _)| from == l)
                .map_or(l, |&(_, to)| to)
        });
        for &(i, j, theta) in &self.rotations {
            rotate(&mut out, i, j, theta);
        }
        out.prune();
        out
    }

    /// `U* v`
    pub fn apply_inverse(&self, v: &StateVector) -> StateVector {
        let mut out = v.clone();
        for &(i, j, theta) in self.rotations.iter().rev() {
            rotate(&mut out, i, j, -theta);
        }
        out.prune();
        out.map_labels(|l| {
            self.permutation
                .iter()
                .find(|&&(_, to)| to == l)
                .map_or(l, |&(from, _)| from)
        })
    }
}

fn branch_of(v: &StateVector) -> u32 {
    v.iter().next().map_or(0, |(l, _)| l.branch)
}

fn rotate(v: &mut StateVector, i: BasisLabel, j: BasisLabel, theta: f64) {
    let (s, c) = theta.sin_cos();
    let (xi, xj) = (v.get(i), v.get(j));
    let ni = xi * c - xj * s;
    let nj = xi * s + xj * c;
    v.add_at(i, ni - xi);
    v.add_at(j, nj - xj);
}

fn check_member(m: u64) -> Result<()> {
    if m == 1 {
        Err(Error::NotMember(1))
    } else {
        Ok(())
    }
}

impl Representation {
    /// `τ_β` with `t = sqrt(1 − |β|²)`.
    pub fn tau_beta(beta: Complex64) -> Result<Self> {
        let b2 = beta.norm_sqr();
        if !b2.is_finite() || b2 > 1.0 + UNITARY_TOL {
            return Err(Error::InvalidRepresentation(format!(
                "|beta| = {} exceeds 1",
                b2.sqrt()
            )));
        }
        // Snap to the unit circle so g_β has no spurious e₁ component.
        let t2 = 1.0 - b2;
        let t = if t2 < UNITARY_TOL { 0.0 } else { t2.sqrt() };
        Ok(Self::TauBeta { beta, t })
    }

    pub fn direct_sum(parts: Vec<Representation>, disguise: Option<Disguise>) -> Result<Self> {
        let rep = Self::DirectSum { parts, disguise };
        rep.validate()?;
        Ok(rep)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Pi0 | Self::Pi1 => Ok(()),
            Self::TauBeta { beta, t } => {
                if *t < 0.0 || (beta.norm_sqr() + t * t - 1.0).abs() > UNITARY_TOL {
                    return Err(Error::InvalidRepresentation(format!(
                        "tau_beta needs |beta|^2 + t^2 = 1 with t >= 0 (beta = {beta}, t = {t})"
                    )));
                }
                Ok(())
            }
            Self::DirectSum { parts, disguise } => {
                if parts.is_empty() {
                    return Err(Error::InvalidRepresentation("direct sum has no parts".into()));
                }
                for p in parts {
                    if matches!(p, Self::DirectSum { .. }) {
                        return Err(Error::InvalidRepresentation(
                            "nested direct sums are not supported; flatten the parts".into(),
                        ));
                    }
                    p.validate()?;
                }
                if let Some(d) = disguise {
                    d.validate_shape()?;
                    for label in d.support() {
                        if !self.is_valid_label(label) {
                            return Err(Error::InvalidLabel { label });
                        }
                    }
                    check_unitary(d)?;
                }
                Ok(())
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Pi0 => "pi0".into(),
            Self::Pi1 => "pi1".into(),
            Self::TauBeta { beta, .. } => format!("tau_beta({beta})"),
            Self::DirectSum { parts, disguise } => {
                let inner: Vec<_> = parts.iter().map(|p| p.name()).collect();
                let tag = if disguise.is_some() { " disguised" } else { "" };
                format!("direct_sum[{}]{tag}", inner.join(", "))
            }
        }
    }

    pub fn is_valid_label(&self, label: BasisLabel) -> bool {
        match self {
            Self::Pi0 => label.branch == 0,
            Self::Pi1 => label.branch == 0 && label.n != 1,
            Self::TauBeta { .. } => label.branch == 0 && label.n != 0,
            Self::DirectSum { parts, .. } => parts
                .get(label.branch as usize)
                .is_some_and(|p| p.is_valid_label(BasisLabel::single(label.n))),
        }
    }

    /// Position of `label` in the canonical basis order.
    pub fn label_position(&self, label: BasisLabel) -> Option<usize> {
        if !self.is_valid_label(label) {
            return None;
        }
        let n = label.n as usize;
        match self {
            Self::Pi0 => Some(n),
            Self::Pi1 => Some(if n == 0 { 0 } else { n - 1 }),
            Self::TauBeta { .. } => Some(n - 1),
            Self::DirectSum { parts, .. } => {
                let k = parts.len();
                let inner = parts[label.branch as usize].label_position(BasisLabel::single(label.n))?;
                Some(inner * k + label.branch as usize)
            }
        }
    }

    /// Inverse of [`Representation::label_position`].
    pub fn label_at(&self, position: usize) -> BasisLabel {
        match self {
            Self::Pi0 => BasisLabel::single(position as u64),
            Self::Pi1 => BasisLabel::single(if position == 0 { 0 } else { position as u64 + 1 }),
            Self::TauBeta { .. } => BasisLabel::single(position as u64 + 1),
            Self::DirectSum { parts, .. } => {
                let k = parts.len();
                let branch = position % k;
                let inner = parts[branch].label_at(position / k);
                BasisLabel::new(branch as u32, inner.n)
            }
        }
    }

    /// Labels of the first `size` basis vectors in canonical order.
    pub fn window_labels(&self, size: usize) -> Vec<BasisLabel> {
        (0..size).map(|p| self.label_at(p)).collect()
    }

    pub fn basis_window(&self, size: usize) -> Vec<StateVector> {
        self.window_labels(size)
            .into_iter()
            .map(StateVector::basis)
            .collect()
    }

    fn check_labels(&self, v: &StateVector) -> Result<()> {
        match v.labels().find(|&l| !self.is_valid_label(l)) {
            Some(label) => Err(Error::InvalidLabel { label }),
            None => Ok(()),
        }
    }

    pub fn apply_iso(&self, m: u64, v: &StateVector) -> Result<StateVector> {
        self.apply_trivial(TrivialMonomial::iso(m), v)
    }

    pub fn apply_coiso(&self, m: u64, v: &StateVector) -> Result<StateVector> {
        self.apply_trivial(TrivialMonomial::coiso(m), v)
    }

    pub fn apply_trivial(&self, t: TrivialMonomial, v: &StateVector) -> Result<StateVector> {
        check_member(t.arg)?;
        self.check_labels(v)?;
        Ok(self.act(t, v))
    }

    /// Applies `word` right to left.
    pub fn apply_monomial(&self, word: &Monomial, v: &StateVector) -> Result<StateVector> {
        for t in word.word() {
            check_member(t.arg)?;
        }
        self.check_labels(v)?;
        // U W U* = U (∏ letters) U*: conjugate once per word, not per letter.
        let disguise = match self {
            Self::DirectSum { disguise: Some(d), .. } => Some(d),
            _ => None,
        };
        let mut out = match disguise {
            Some(d) => d.apply_inverse(v),
            None => v.clone(),
        };
        for &t in word.word().iter().rev() {
            out = self.act_plain(t, &out);
            if out.is_zero() {
                break;
            }
        }
        Ok(match disguise {
            Some(d) => d.apply(&out),
            None => out,
        })
    }

    // Labels and argument already validated.
    fn act(&self, t: TrivialMonomial, v: &StateVector) -> StateVector {
        match self {
            Self::DirectSum { disguise: Some(d), .. } => d.apply(&self.act_plain(t, &d.apply_inverse(v))),
            _ => self.act_plain(t, v),
        }
    }

    /// Action with any disguise left out.
    fn act_plain(&self, t: TrivialMonomial, v: &StateVector) -> StateVector {
        let m = t.arg;
        if m == 0 {
            return v.clone();
        }
        match (self, t.kind) {
            (Self::Pi0, Kind::Iso) | (Self::Pi1, Kind::Iso) => {
                v.map_labels(|l| BasisLabel::new(l.branch, l.n + m))
            }
            (Self::Pi0, Kind::CoIso) => StateVector::from_entries(
                v.iter()
                    .filter(|(l, _)| l.n >= m)
                    .map(|(l, c)| (BasisLabel::new(l.branch, l.n - m), c)),
            ),
            (Self::Pi1, Kind::CoIso) => StateVector::from_entries(
                v.iter()
                    .filter(|(l, _)| l.n >= m && l.n - m != 1)
                    .map(|(l, c)| (BasisLabel::new(l.branch, l.n - m), c)),
            ),
            (Self::TauBeta { beta, t }, Kind::Iso) => {
                let at = |n| BasisLabel::new(branch_of(v), n);
                let mut out = StateVector::zero();
                for (l, c) in v.iter() {
                    if l.n == 1 {
                        // g_β = βf₀ + tf₁ lands on f_m, f_{m+1}, both inside H₀.
                        out.add_at(at(m), beta * c);
                        out.add_at(at(m + 1), c * *t);
                    } else {
                        out.add_at(at(l.n + m), c);
                    }
                }
                out.prune();
                out
            }
            (Self::TauBeta { beta, t }, Kind::CoIso) => {
                let at = |n| BasisLabel::new(branch_of(v), n);
                // Embed in l²(ℤ₊), shift down, project back onto H_β.
                let mut ambient: BTreeMap<u64, Complex64> = BTreeMap::new();
                for (l, c) in v.iter() {
                    if l.n == 1 {
                        *ambient.entry(0).or_default() += beta * c;
                        *ambient.entry(1).or_default() += c * *t;
                    } else {
                        *ambient.entry(l.n).or_default() += c;
                    }
                }
                let mut out = StateVector::zero();
                for (n, c) in ambient {
                    if n < m {
                        continue;
                    }
                    match n - m {
                        0 => out.add_at(at(1), c * beta.conj()),
                        1 => out.add_at(at(1), c * *t),
                        k => out.add_at(at(k), c),
                    }
                }
                out.prune();
                out
            }
            (Self::DirectSum { parts, .. }, _) => {
                // Entries are ordered by branch, so each part sees one contiguous run.
                let entries: Vec<_> = v.iter().collect();
                let mut out = StateVector::zero();
                for run in entries.chunk_by(|a, b| a.0.branch == b.0.branch) {
                    let part = &parts[run[0].0.branch as usize];
                    let image = part.act_plain(t, &StateVector::from_entries(run.iter().copied()));
                    for (l, c) in image.iter() {
                        out.add_at(l, c);
                    }
                }
                out
            }
        }
    }

    /// `τ_β` vectors in ambient `l²(ℤ₊)` coordinates (`g_β ↦ βf₀ + tf₁`);
    /// other representations are returned unchanged.
    pub fn ambient_coordinates(&self, v: &StateVector) -> StateVector {
        match self {
            Self::TauBeta { beta, t } => {
                let mut out = StateVector::zero();
                for (l, c) in v.iter() {
                    if l.n == 1 {
                        out.add_at(BasisLabel::single(0), beta * c);
                        out.add_at(BasisLabel::single(1), c * *t);
                    } else {
                        out.add_at(l, c);
                    }
                }
                out.prune();
                out
            }
            _ => v.clone(),
        }
    }

    /// Matrix of `word` on the first `domain_size` basis vectors. The
    /// codomain window is enlarged until it holds every image exactly.
    pub fn operator_matrix(&self, word: &Monomial, domain_size: usize) -> Result<OperatorMatrix> {
        let columns = self
            .basis_window(domain_size)
            .iter()
            .map(|b| self.apply_monomial(word, b))
            .collect::<Result<Vec<_>>>()?;
        self.columns_matrix(&columns, domain_size)
    }

    /// Stacks `columns` into a matrix over the canonical basis, with at least
    /// `min_rows` rows.
    pub fn columns_matrix(&self, columns: &[StateVector], min_rows: usize) -> Result<OperatorMatrix> {
        let matrix = matrix_from_columns(self, columns, min_rows)?;
        Ok(OperatorMatrix {
            domain: columns.len(),
            codomain: matrix.nrows(),
            matrix,
        })
    }
}

#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub matrix: CMatrix,
    pub domain: usize,
    pub codomain: usize,
}

fn check_unitary(d: &Disguise) -> Result<()> {
    let support: Vec<_> = d.support().into_iter().collect();
    for &i in &support {
        let ui = d.apply(&StateVector::basis(i));
        let back = d.apply_inverse(&ui);
        for &j in &support {
            let expected = if i == j { 1.0 } else { 0.0 };
            if (back.get(j) - Complex64::new(expected, 0.0)).norm() > UNITARY_TOL {
                return Err(Error::InvalidRepresentation("disguise is not unitary".into()));
            }
            let gram = ui.inner(&d.apply(&StateVector::basis(j)));
            if (gram - Complex64::new(expected, 0.0)).norm() > UNITARY_TOL {
                return Err(Error::InvalidRepresentation("disguise is not unitary".into()));
            }
        }
    }
    Ok(())
}

/// JSON form of a representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum RepresentationSpec {
    Pi0,
    Pi1,
    TauBeta {
        /// `[re, im]`
        beta: [f64; 2],
    },
    DirectSum {
        parts: Vec<RepresentationSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        disguise: Option<Disguise>,
    },
}

impl TryFrom<RepresentationSpec> for Representation {
    type Error = Error;

    fn try_from(spec: RepresentationSpec) -> Result<Self> {
        let rep = match spec {
            RepresentationSpec::Pi0 => Self::Pi0,
            RepresentationSpec::Pi1 => Self::Pi1,
            RepresentationSpec::TauBeta { beta } => Self::tau_beta(Complex64::new(beta[0], beta[1]))?,
            RepresentationSpec::DirectSum { parts, disguise } => Self::DirectSum {
                parts: parts
                    .into_iter()
                    .map(Self::try_from)
                    .collect::<Result<_>>()?,
                disguise,
            },
        };
        rep.validate()?;
        Ok(rep)
    }
}

impl From<Representation> for RepresentationSpec {
    fn from(rep: Representation) -> Self {
        match rep {
            Representation::Pi0 => Self::Pi0,
            Representation::Pi1 => Self::Pi1,
            Representation::TauBeta { beta, .. } => Self::TauBeta {
                beta: [beta.re, beta.im],
            },
            Representation::DirectSum { parts, disguise } => Self::DirectSum {
                parts: parts.into_iter().map(Self::from).collect(),
                disguise,
            },
        }
    }
}

impl std::str::FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spec: RepresentationSpec = serde_json::from_str(s)?;
        Self::try_from(spec)
    }
}
