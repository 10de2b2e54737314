#![allow(dead_code)]

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semishift::{BasisLabel, Disguise, Kind, Monomial, Representation, TrivialMonomial};

/// Hand-rolled shift action on basis indices, independent of the library:
/// `None` means the basis vector is sent to 0.
pub fn shift_oracle(word: &Monomial, n: u64, allowed: impl Fn(i64) -> bool) -> Option<u64> {
    let mut pos = n as i64;
    for t in word.word().iter().rev() {
        pos = match t.kind {
            Kind::Iso => pos + t.arg as i64,
            Kind::CoIso => pos - t.arg as i64,
        };
        if !allowed(pos) {
            return None;
        }
    }
    Some(pos as u64)
}

/// `π₀` on `f_n`.
pub fn pi0_oracle(word: &Monomial, n: u64) -> Option<u64> {
    shift_oracle(word, n, |p| p >= 0)
}

/// `π₁` on `e_n`.
pub fn pi1_oracle(word: &Monomial, n: u64) -> Option<u64> {
    shift_oracle(word, n, |p| p >= 0 && p != 1)
}

pub const ARGS: [u64; 6] = [0, 2, 3, 4, 5, 6];

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Monomial {
    let len = rng.gen_range(0..=max_len);
    Monomial::new(
        (0..len)
            .map(|_| {
                let arg = *ARGS.choose(rng).unwrap();
                if rng.gen_bool(0.5) {
                    TrivialMonomial::iso(arg)
                } else {
                    TrivialMonomial::coiso(arg)
                }
            })
            .collect(),
    )
}

pub fn tau(re: f64, im: f64) -> Representation {
    Representation::tau_beta(Complex64::new(re, im)).unwrap()
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A random finite-support unitary over the first `positions` canonical
/// positions of `rep` (which must be a direct sum).
pub fn random_disguise(rep: &Representation, rng: &mut ChaCha8Rng, positions: usize) -> Disguise {
    let labels: Vec<BasisLabel> = rep.window_labels(positions);
    let mut rotations = Vec::new();
    for _ in 0..8 {
        let i = *labels.choose(rng).unwrap();
        let j = *labels.choose(rng).unwrap();
        if i != j {
            rotations.push((i, j, rng.gen_range(-3.0..3.0)));
        }
    }
    let mut chosen: Vec<BasisLabel> = labels.choose_multiple(rng, 4.min(labels.len())).copied().collect();
    chosen.sort();
    let mut image = chosen.clone();
    image.shuffle(rng);
    Disguise {
        rotations,
        permutation: chosen.into_iter().zip(image).collect(),
    }
}

pub fn disguised(parts: Vec<Representation>, rng: &mut ChaCha8Rng, positions: usize) -> Representation {
    let plain = Representation::direct_sum(parts.clone(), None).unwrap();
    let d = random_disguise(&plain, rng, positions);
    Representation::direct_sum(parts, Some(d)).unwrap()
}

pub fn random_vector(rep: &Representation, rng: &mut ChaCha8Rng, window: usize) -> semishift::StateVector {
    let k = rng.gen_range(1..=8);
    semishift::StateVector::from_entries((0..k).map(|_| {
        (
            rep.label_at(rng.gen_range(0..window)),
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
    }))
}

/// The representation variants every generic property is run against.
pub fn variants(rng: &mut ChaCha8Rng) -> Vec<Representation> {
    vec![
        Representation::Pi0,
        Representation::Pi1,
        tau(0.6, 0.0),
        tau(0.3, -0.4),
        tau(0.0, 0.0),
        disguised(
            vec![Representation::Pi1, tau(0.5, 0.2), Representation::Pi0],
            rng,
            12,
        ),
    ]
}
