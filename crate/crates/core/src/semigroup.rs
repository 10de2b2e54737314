//! Numerical semigroups: finitely generated submonoids of the non-negative
//! integers with finite complement.
//!
//! Only membership, the divisibility-style order `a ≺ b ⇔ b − a ∈ S` and the
//! padding needed to realise a group element as a difference of members are
//! provided. The default semigroup is `⟨2, 3⟩ = ℤ₊ \ {1}`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An element of the Grothendieck group `Γ = S − S ≅ ℤ`.
pub type GroupIndex = i64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    gaps: BTreeSet<u64>,
    conductor: u64,
}

/// A value checked to be a member of some [`NumericalSemigroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemigroupElement(u64);

impl SemigroupElement {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for SemigroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `generators`.
    ///
    /// The generators must be positive with gcd 1, otherwise the complement
    /// is infinite and there is no conductor.
    pub fn new(generators: &[u64]) -> Result<Self> {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::InvalidSemigroup("no positive generators".into()));
        }
        if gens.iter().fold(0, |acc, &g| gcd(acc, g)) != 1 {
            return Err(Error::InvalidSemigroup(format!(
                "generators {gens:?} have gcd > 1"
            )));
        }

        // Sieve until `smallest` consecutive members appear; from there on every
        // integer is reachable by adding the smallest generator.
        let smallest = gens[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        let mut n = 0usize;
        while run < smallest {
            n += 1;
            let hit = gens
                .iter()
                .any(|&g| (g as usize) <= n && member[n - g as usize]);
            member.push(hit);
            run = if hit { run + 1 } else { 0 };
        }
        let conductor = (n + 1 - run) as u64;
        let gaps = (0..conductor).filter(|&k| !member[k as usize]).collect();

        Ok(Self {
            generators: gens,
            gaps,
            conductor,
        })
    }

    /// `ℤ₊ \ {1}`.
    pub fn perforated() -> Self {
        Self::new(&[2, 3]).expect("⟨2,3⟩ is a numerical semigroup")
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gaps(&self) -> &BTreeSet<u64> {
        &self.gaps
    }

    /// Least `c` such that every integer `≥ c` is a member.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= 0 && !self.gaps.contains(&(n as u64))
    }

    pub fn element(&self, n: i64) -> Result<SemigroupElement> {
        if self.contains(n) {
            Ok(SemigroupElement(n as u64))
        } else {
            Err(Error::NotMember(n))
        }
    }

    /// The natural order: `a ≺ b` iff `b = a + c` for some member `c`.
    pub fn precedes(&self, a: SemigroupElement, b: SemigroupElement) -> bool {
        self.contains(b.0 as i64 - a.0 as i64)
    }

    /// Least member `a` with `a + d` also a member.
    pub fn min_padding(&self, d: GroupIndex) -> SemigroupElement {
        let mut a = 0i64;
        loop {
            if self.contains(a) && self.contains(a + d) {
                return SemigroupElement(a as u64);
            }
            a += 1;
        }
    }
}

impl Default for NumericalSemigroup {
    fn default() -> Self {
        Self::perforated()
    }
}
