//! Finitely supported vectors over labelled orthonormal bases.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Entries below this magnitude are dropped.
pub const PRUNE_EPS: f64 = 1e-15;

/// A basis vector: `n` indexes the ambient sequence space of summand `branch`.
///
/// For `τ_β` the label `n = 1` stands for the distinguished vector `g_β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u64)", into = "(u32, u64)")]
pub struct BasisLabel {
    pub branch: u32,
    pub n: u64,
}

impl BasisLabel {
    pub const fn new(branch: u32, n: u64) -> Self {
        Self { branch, n }
    }

    pub const fn single(n: u64) -> Self {
        Self { branch: 0, n }
    }
}

impl From<(u32, u64)> for BasisLabel {
    fn from((branch, n): (u32, u64)) -> Self {
        Self { branch, n }
    }
}

impl From<BasisLabel> for (u32, u64) {
    fn from(l: BasisLabel) -> Self {
        (l.branch, l.n)
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.branch, self.n)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct StateVector {
    amplitudes: BTreeMap<BasisLabel, Complex64>,
}

impl StateVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(label: BasisLabel) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(label, Complex64::new(1.0, 0.0));
        Self { amplitudes }
    }

    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (BasisLabel, Complex64)>,
    {
        let mut v = Self::zero();
        for (label, c) in entries {
            v.add_at(label, c);
        }
        v.prune();
        v
    }

    pub fn get(&self, label: BasisLabel) -> Complex64 {
        self.amplitudes.get(&label).copied().unwrap_or_default()
    }

    pub fn add_at(&mut self, label: BasisLabel, c: Complex64) {
        *self.amplitudes.entry(label).or_default() += c;
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisLabel, Complex64)> + '_ {
        self.amplitudes.iter().map(|(&l, &c)| (l, c))
    }

    pub fn labels(&self) -> impl Iterator<Item = BasisLabel> + '_ {
        self.amplitudes.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn prune(&mut self) {
        self.amplitudes.retain(|_, c| c.norm() >= PRUNE_EPS);
    }

    /// Linear in `self`, conjugate-linear in `other`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        let (small, large, flip) = if self.support_len() <= other.support_len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (label, c) in small.iter() {
            if let Some(&d) = large.amplitudes.get(&label) {
                acc += if flip { d * c.conj() } else { c * d.conj() };
            }
        }
        acc
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().fold(0.0, |acc, c| acc + c.norm_sqr())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self {
            amplitudes: self.amplitudes.iter().map(|(&l, &c)| (l, c * s)).collect(),
        };
        out.prune();
        out
    }

    /// `self += s * other`
    pub fn axpy(&mut self, s: Complex64, other: &StateVector) {
        for (label, c) in other.iter() {
            self.add_at(label, s * c);
        }
        self.prune();
    }

    /// Relabels every entry, summing collisions.
    pub fn map_labels(&self, mut f: impl FnMut(BasisLabel) -> BasisLabel) -> Self {
        Self::from_entries(self.iter().map(|(l, c)| (f(l), c)))
    }
}

impl Add for &StateVector {
    type Output = StateVector;

    fn add(self, rhs: &StateVector) -> StateVector {
        let mut out = self.clone();
        out.axpy(Complex64::new(1.0, 0.0), rhs);
        out
    }
}

impl Sub for &StateVector {
    type Output = StateVector;

    fn sub(self, rhs: &StateVector) -> StateVector {
        let mut out = self.clone();
        out.axpy(Complex64::new(-1.0, 0.0), rhs);
        out
    }
}

impl Mul<Complex64> for &StateVector {
    type Output = StateVector;

    fn mul(self, rhs: Complex64) -> StateVector {
        self.scale(rhs)
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (label, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}·|{label}⟩", c.re)?;
            } else {
                write!(f, "({}{:+}i)·|{label}⟩", c.re, c.im)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_products_of_basis_vectors() {
        let f2 = StateVector::basis(BasisLabel::single(2));
        let f3 = StateVector::basis(BasisLabel::single(3));
        assert_eq!(f2.inner(&f2), c(1.0, 0.0));
        assert_eq!(f2.inner(&f3), c(0.0, 0.0));
    }

    #[test]
    fn inner_is_conjugate_linear_in_second_argument() {
        let l = BasisLabel::single(0);
        let v = StateVector::from_entries([(l, c(1.0, 2.0))]);
        let w = StateVector::from_entries([(l, c(0.0, 1.0))]);
        // (1+2i) * conj(i) = (1+2i)(-i) = 2 - i
        assert_eq!(v.inner(&w), c(2.0, -1.0));
        assert_eq!(w.inner(&v), c(2.0, 1.0));
        let big = StateVector::from_entries([(l, c(0.0, 1.0)), (BasisLabel::single(4), c(3.0, 0.0))]);
        assert_eq!(v.inner(&big), c(2.0, -1.0));
        assert_eq!(big.inner(&v), c(2.0, 1.0));
        assert!((v.norm_sqr() - v.inner(&v).re).abs() < 1e-15);
    }

    #[test]
    fn pruning_and_arithmetic() {
        let l = BasisLabel::single(5);
        let v = StateVector::basis(l);
        assert!((&v - &v).is_zero());
        let mut w = v.clone();
        w.axpy(c(-1.0 + 1e-16, 0.0), &v);
        assert!(w.is_zero());
        assert_eq!((&v + &v).get(l), c(2.0, 0.0));
    }

    #[test]
    fn label_serde_is_a_pair() {
        let l = BasisLabel::new(1, 7);
        assert_eq!(serde_json::to_string(&l).unwrap(), "[1,7]");
        let back: BasisLabel = serde_json::from_str("[1,7]").unwrap();
        assert_eq!(back, l);
    }
}
