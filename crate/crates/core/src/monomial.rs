//! Words in the trivial monomials `T(a)` and `T*(a)`.
//!
//! Text form: whitespace separated tokens, `n` for `T(n)` and `n*` for
//! `T*(n)`, written in operator-product order (the rightmost token acts
//! first on a vector). The empty string is the identity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{GroupIndex, NumericalSemigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// `T(a)`
    Iso,
    /// `T*(a)`
    CoIso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrivialMonomial {
    pub kind: Kind,
    pub arg: u64,
}

impl TrivialMonomial {
    pub fn iso(arg: u64) -> Self {
        Self { kind: Kind::Iso, arg }
    }

    pub fn coiso(arg: u64) -> Self {
        Self { kind: Kind::CoIso, arg }
    }

    pub fn adjoint(self) -> Self {
        let kind = match self.kind {
            Kind::Iso => Kind::CoIso,
            Kind::CoIso => Kind::Iso,
        };
        Self { kind, arg: self.arg }
    }

    fn signed_arg(self) -> GroupIndex {
        match self.kind {
            Kind::Iso => self.arg as i64,
            Kind::CoIso => -(self.arg as i64),
        }
    }
}

impl fmt::Display for TrivialMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Iso => write!(f, "{}", self.arg),
            Kind::CoIso => write!(f, "{}*", self.arg),
        }
    }
}

/// A finite product of trivial monomials; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    word: Vec<TrivialMonomial>,
}

impl Monomial {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(word: Vec<TrivialMonomial>) -> Self {
        Self { word }
    }

    pub fn word(&self) -> &[TrivialMonomial] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Parses the text form and checks every argument against `semigroup`.
    pub fn parse(text: &str, semigroup: &NumericalSemigroup) -> Result<Self> {
        let mut word = Vec::new();
        let mut offset = 0;
        for raw in text.split_inclusive(char::is_whitespace) {
            let token = raw.trim_end();
            let position = offset;
            offset += raw.len();
            let token = token.trim_start();
            if token.is_empty() {
                continue;
            }
            let position = position + (raw.len() - raw.trim_start().len());
            let (digits, kind) = match token.strip_suffix('*') {
                Some(d) => (d, Kind::CoIso),
                None => (token, Kind::Iso),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse {
                    position,
                    message: format!("expected `<n>` or `<n>*`, found `{token}`"),
                });
            }
            let arg: u64 = digits.parse().map_err(|_| Error::Parse {
                position,
                message: format!("argument `{digits}` out of range"),
            })?;
            if !semigroup.contains(arg as i64) {
                return Err(Error::NotMember(arg as i64));
            }
            word.push(TrivialMonomial { kind, arg });
        }
        Ok(Self { word })
    }

    /// Every argument is a member of `semigroup`.
    pub fn validate(&self, semigroup: &NumericalSemigroup) -> Result<()> {
        match self.word.iter().find(|t| !semigroup.contains(t.arg as i64)) {
            Some(t) => Err(Error::NotMember(t.arg as i64)),
            None => Ok(()),
        }
    }

    /// Reverses the word and swaps `T` with `T*`.
    pub fn star(&self) -> Self {
        Self {
            word: self.word.iter().rev().map(|t| t.adjoint()).collect(),
        }
    }

    pub fn index(&self) -> GroupIndex {
        self.word.iter().map(|t| t.signed_arg()).sum()
    }

    pub fn concat(&self, other: &Monomial) -> Self {
        let mut word = Vec::with_capacity(self.len() + other.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&other.word);
        Self { word }
    }

    /// Rewrites with the identities valid in every isometric representation:
    /// `T(a)T(b) = T(a+b)`, `T*(a)T*(b) = T*(a+b)`, and `T*(a)T(b)` collapses
    /// to `T(b−a)` or `T*(a−b)` when that difference is a member. Factors with
    /// argument 0 are dropped. `T(b)T*(a)` is never rewritten.
    pub fn basic_reduce(&self, semigroup: &NumericalSemigroup) -> Self {
        let mut stack: Vec<TrivialMonomial> = Vec::with_capacity(self.len());
        for &t in &self.word {
            let mut cur = t;
            loop {
                if cur.arg == 0 {
                    break;
                }
                let Some(&top) = stack.last() else {
                    stack.push(cur);
                    break;
                };
                match combine(top, cur, semigroup) {
                    Some(merged) => {
                        stack.pop();
                        cur = merged;
                    }
                    None => {
                        stack.push(cur);
                        break;
                    }
                }
            }
        }
        Self { word: stack }
    }

    /// No rewrite rule of [`Monomial::basic_reduce`] applies.
    pub fn is_reduced(&self, semigroup: &NumericalSemigroup) -> bool {
        self.word.iter().all(|t| t.arg != 0)
            && self
                .word
                .windows(2)
                .all(|w| combine(w[0], w[1], semigroup).is_none())
    }

    /// The limit of `T*(c) V T(c)` along the net of members, canonicalised.
    pub fn conj_limit_normal_form(&self, semigroup: &NumericalSemigroup) -> NormalForm {
        // Offsets of the running argument of the formal `T(c + offset)` as the
        // word is absorbed right to left.
        let mut offsets = Vec::with_capacity(self.len() + 1);
        let mut offset = 0i64;
        offsets.push(offset);
        for t in self.word.iter().rev() {
            offset += t.signed_arg();
            offsets.push(offset);
        }
        let index = offset;

        let valid = |c: i64| offsets.iter().all(|&o| semigroup.contains(c + o));
        let lowest = offsets.iter().copied().min().unwrap_or(0);
        // Past this point every running value is at least the conductor.
        let upper = semigroup.conductor() as i64 - lowest;
        let mut c_min = upper;
        loop {
            let prev = (0..c_min).rev().find(|&c| semigroup.contains(c));
            match prev {
                Some(c) if valid(c) => c_min = c,
                _ => break,
            }
        }

        let a = semigroup.min_padding(index).value();
        NormalForm {
            pair: NormalFormPair {
                a,
                b: (a as i64 + index) as u64,
            },
            index,
            c_min: c_min as u64,
        }
    }
}

fn combine(
    left: TrivialMonomial,
    right: TrivialMonomial,
    semigroup: &NumericalSemigroup,
) -> Option<TrivialMonomial> {
    match (left.kind, right.kind) {
        (Kind::Iso, Kind::Iso) => Some(TrivialMonomial::iso(left.arg + right.arg)),
        (Kind::CoIso, Kind::CoIso) => Some(TrivialMonomial::coiso(left.arg + right.arg)),
        (Kind::CoIso, Kind::Iso) => {
            let d = right.arg as i64 - left.arg as i64;
            if semigroup.contains(d) {
                Some(TrivialMonomial::iso(d as u64))
            } else if semigroup.contains(-d) {
                Some(TrivialMonomial::coiso((-d) as u64))
            } else {
                None
            }
        }
        (Kind::Iso, Kind::CoIso) => None,
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses against `⟨2, 3⟩`.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, &NumericalSemigroup::perforated())
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical `(a, b)` standing for `T*(a)T(b)`, with `a` minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalFormPair {
    pub a: u64,
    pub b: u64,
}

impl NormalFormPair {
    pub fn index(&self) -> GroupIndex {
        self.b as i64 - self.a as i64
    }

    /// `T*(a) T(b)` with zero factors omitted.
    pub fn to_monomial(&self) -> Monomial {
        let mut word = Vec::with_capacity(2);
        if self.a != 0 {
            word.push(TrivialMonomial::coiso(self.a));
        }
        if self.b != 0 {
            word.push(TrivialMonomial::iso(self.b));
        }
        Monomial::new(word)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub pair: NormalFormPair,
    pub index: GroupIndex,
    /// Least member `c` such that for every member `c' ≥ c` the symbolic scan
    /// is valid, i.e. `T*(c')VT(c')` already equals the limit.
    pub c_min: u64,
}

/// Every reduced word of length at most `max_len` with arguments in
/// `S ∩ [1, arg_cap]` and index 0, by length and then lexicographically.
pub fn enumerate_index_zero(
    semigroup: &NumericalSemigroup,
    max_len: usize,
    arg_cap: u64,
) -> Vec<Monomial> {
    let letters: Vec<TrivialMonomial> = (1..=arg_cap)
        .filter(|&a| semigroup.contains(a as i64))
        .flat_map(|a| [TrivialMonomial::iso(a), TrivialMonomial::coiso(a)])
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let max_step = arg_cap as i64;

    let mut out = Vec::new();
    for len in 0..=max_len {
        let mut word = Vec::with_capacity(len);
        extend_words(semigroup, &letters, len, max_step, 0, &mut word, &mut out);
    }
    out
}

fn extend_words(
    semigroup: &NumericalSemigroup,
    letters: &[TrivialMonomial],
    remaining: usize,
    max_step: i64,
    index: i64,
    word: &mut Vec<TrivialMonomial>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        if index == 0 {
            out.push(Monomial::new(word.clone()));
        }
        return;
    }
    // The index cannot return to 0 from too far away.
    if index.abs() > remaining as i64 * max_step {
        return;
    }
    for &t in letters {
        if let Some(&last) = word.last() {
            if combine(last, t, semigroup).is_some() {
                continue;
            }
        }
        word.push(t);
        extend_words(
            semigroup,
            letters,
            remaining - 1,
            max_step,
            index + t.signed_arg(),
            word,
            out,
        );
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> Monomial {
        text.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let p = m("3* 2 2* 3");
        assert_eq!(
            p.word(),
            &[
                TrivialMonomial::coiso(3),
                TrivialMonomial::iso(2),
                TrivialMonomial::coiso(2),
                TrivialMonomial::iso(3)
            ]
        );
        assert_eq!(p.to_string(), "3* 2 2* 3");
        assert!(m("").is_empty());
        assert!(m("   ").is_empty());
        assert_eq!(m("  4   0* ").to_string(), "4 0*");
    }

    #[test]
    fn parse_errors() {
        let s = NumericalSemigroup::perforated();
        match Monomial::parse("1 2", &s) {
            Err(Error::NotMember(1)) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            Monomial::parse("1 2", &s).unwrap_err().to_string(),
            "1 is not in the semigroup"
        );
        match Monomial::parse("2 x3", &s) {
            Err(Error::Parse { position: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(Monomial::parse("2**", &s).is_err());
        assert!(Monomial::parse("*", &s).is_err());
        assert!(Monomial::parse("-2", &s).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(m("2 3*").star(), m("3 2*"));
        assert_eq!(m("").star(), m(""));
        assert_eq!(m("2* 3").star(), m("3* 2"));
        let p = m("3* 2 2* 3");
        assert_eq!(p.star(), p);
    }

    #[test]
    fn index_examples() {
        assert_eq!(m("2* 3").index(), 1);
        assert_eq!(m("").index(), 0);
        assert_eq!(m("3 2* 2 3*").index(), 0);
    }

    #[test]
    fn concat_examples() {
        assert_eq!(m("2").concat(&m("3")), m("2 3"));
        let v = m("4* 2 3");
        assert_eq!(m("").concat(&v), v);
        let w = m("2*").concat(&m("3"));
        assert_eq!(w, m("2* 3"));
        assert_eq!(w.index(), 1);
    }

    #[test]
    fn basic_reduce_examples() {
        let s = NumericalSemigroup::perforated();
        assert_eq!(m("2 3").basic_reduce(&s), m("5"));
        assert_eq!(m("2* 5").basic_reduce(&s), m("3"));
        assert_eq!(m("2* 3").basic_reduce(&s), m("2* 3"));
        assert_eq!(m("2* 2").basic_reduce(&s), m(""));
        assert_eq!(m("0 2 0*").basic_reduce(&s), m("2"));
        assert_eq!(m("5* 2").basic_reduce(&s), m("3*"));
        // merge cascades back into the stack
        assert_eq!(m("2* 3 2").basic_reduce(&s), m("3"));
        // T(b)T*(a) is left alone
        assert_eq!(m("2 2*").basic_reduce(&s), m("2 2*"));
    }

    #[test]
    fn normal_form_examples() {
        let s = NumericalSemigroup::perforated();
        let nf = m("3 2*").conj_limit_normal_form(&s);
        assert_eq!(nf.pair, NormalFormPair { a: 2, b: 3 });
        assert_eq!(nf.index, 1);

        let nf = m("2* 2").conj_limit_normal_form(&s);
        assert_eq!(nf.pair, NormalFormPair { a: 0, b: 0 });
        assert_eq!(nf.c_min, 0);

        let nf = m("2 3*").conj_limit_normal_form(&s);
        assert_eq!(nf.pair, NormalFormPair { a: 3, b: 2 });

        let nf = m("").conj_limit_normal_form(&s);
        assert_eq!((nf.pair, nf.c_min), (NormalFormPair { a: 0, b: 0 }, 0));
    }

    #[test]
    fn c_min_is_a_threshold() {
        // Running values for `3 2*` starting at c are c, c-2, c+1; c = 3 fails
        // (3 - 2 = 1) so the threshold is 4 even though c = 2 is valid.
        let s = NumericalSemigroup::perforated();
        assert_eq!(m("3 2*").conj_limit_normal_form(&s).c_min, 4);
        assert_eq!(m("2* 3").conj_limit_normal_form(&s).c_min, 2);
        assert_eq!(m("5*").conj_limit_normal_form(&s).c_min, 7);
    }

    #[test]
    fn enumeration_examples() {
        let s = NumericalSemigroup::perforated();
        assert_eq!(enumerate_index_zero(&s, 0, 6), vec![Monomial::identity()]);
        let two = enumerate_index_zero(&s, 2, 6);
        assert!(two.contains(&m("2 2*")));
        assert!(two.contains(&m("3 3*")));
        let four = enumerate_index_zero(&s, 4, 6);
        assert!(four.contains(&m("3* 2 2* 3")));
        assert!(four.contains(&m("2* 3 3* 2")));
        for w in &four {
            assert_eq!(w.index(), 0);
            assert!(w.is_reduced(&s));
            assert!(w.len() <= 4);
            assert!(w.word().iter().all(|t| t.arg <= 6));
        }
        // deterministic ordering, shortest first
        assert_eq!(four, enumerate_index_zero(&s, 4, 6));
        assert!(four.windows(2).all(|p| p[0].len() <= p[1].len()));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let s = NumericalSemigroup::perforated();
        let letters: Vec<TrivialMonomial> = [2, 3, 4]
            .iter()
            .flat_map(|&a| [TrivialMonomial::iso(a), TrivialMonomial::coiso(a)])
            .collect();
        let mut brute = vec![Monomial::identity()];
        let mut frontier = vec![Vec::<TrivialMonomial>::new()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &frontier {
                for &t in &letters {
                    let mut w2 = w.clone();
                    w2.push(t);
                    next.push(w2);
                }
            }
            for w in &next {
                let mono = Monomial::new(w.clone());
                if mono.index() == 0 && mono.is_reduced(&s) {
                    brute.push(mono);
                }
            }
            frontier = next;
        }
        let mut got = enumerate_index_zero(&s, 4, 4);
        got.sort();
        brute.sort();
        assert_eq!(got, brute);
    }
}
