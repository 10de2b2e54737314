use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CheckConfig, CheckVerdict, Scope, Witness};
use crate::error::{Error, Result};
use crate::linalg::{null_space, vector_from_coordinates, OrthoBasis, RANK_THRESHOLD};
use crate::monomial::{enumerate_index_zero, Monomial, TrivialMonomial};
use crate::representation::Representation;
use crate::semigroup::NumericalSemigroup;
use crate::state::{BasisLabel, StateVector};

fn word(text: &str) -> Monomial {
    text.parse().expect("built-in word")
}

fn scope(cfg: &CheckConfig, len: Option<usize>) -> Scope {
    Scope {
        word_length_bound: len,
        window_size: cfg.window,
        tolerance: cfg.tol,
    }
}

fn check_window(window: usize) -> Result<()> {
    if window == 0 {
        return Err(Error::OutOfRange("window must be at least 1".into()));
    }
    Ok(())
}

/// Largest `‖(V − W) b‖` over the window, with the basis label attaining it.
pub fn identity_residual(
    rep: &Representation,
    v: &Monomial,
    w: &Monomial,
    window: usize,
) -> Result<(f64, BasisLabel)> {
    let mut worst = (0.0, rep.label_at(0));
    for label in rep.window_labels(window) {
        let b = StateVector::basis(label);
        let diff = &rep.apply_monomial(v, &b)? - &rep.apply_monomial(w, &b)?;
        let r = diff.norm();
        if r > worst.0 {
            worst = (r, label);
        }
    }
    Ok(worst)
}

pub fn check_identity(
    rep: &Representation,
    v: &Monomial,
    w: &Monomial,
    cfg: &CheckConfig,
) -> Result<CheckVerdict> {
    check_window(cfg.window)?;
    let mut verdict = CheckVerdict::new(format!("identity `{v}` = `{w}`"), scope(cfg, None));
    let (r, label) = identity_residual(rep, v, w, cfg.window)?;
    verdict.record(r, || Witness {
        monomial: v.clone(),
        label: Some(label),
        residual: r,
        note: Some(format!("differs from `{w}`")),
    });
    Ok(verdict)
}

fn record_identity(
    verdict: &mut CheckVerdict,
    rep: &Representation,
    v: &Monomial,
    w: &Monomial,
    window: usize,
) -> Result<f64> {
    let (r, label) = identity_residual(rep, v, w, window)?;
    if !(r < verdict.scope.tolerance) {
        verdict.fail(Witness {
            monomial: v.clone(),
            label: Some(label),
            residual: r,
            note: Some(format!("differs from `{w}`")),
        });
    }
    Ok(r)
}

/// `T*(n)T(n+1) = T*(n+1)T(n+2)` for `2 ≤ n ≤ n_max`, and
/// `T*(n)T(m) = T*(n+l)T(m+l)` for `2 ≤ n, m ≤ n_max`, `1 ≤ l ≤ 5`.
pub fn check_lemma31_suite(
    rep: &Representation,
    n_max: u64,
    cfg: &CheckConfig,
) -> Result<CheckVerdict> {
    check_window(cfg.window)?;
    if n_max < 2 {
        return Err(Error::OutOfRange("n_max must be at least 2".into()));
    }
    let mut verdict = CheckVerdict::new("lemma31", scope(cfg, Some(2)));
    let pair = |a: u64, b: u64| Monomial::new(vec![TrivialMonomial::coiso(a), TrivialMonomial::iso(b)]);

    let mut lemma_max = 0.0f64;
    for n in 2..=n_max {
        let r = record_identity(&mut verdict, rep, &pair(n, n + 1), &pair(n + 1, n + 2), cfg.window)?;
        lemma_max = lemma_max.max(r);
    }
    let mut corollary_max = 0.0f64;
    for n in 2..=n_max {
        for m in 2..=n_max {
            for l in 1..=5 {
                let r = record_identity(&mut verdict, rep, &pair(n, m), &pair(n + l, m + l), cfg.window)?;
                corollary_max = corollary_max.max(r);
            }
        }
    }
    verdict.residuals = vec![lemma_max, corollary_max];
    verdict.detail("n_max", n_max);
    verdict.detail("shift_max", 5);
    Ok(verdict)
}

/// Orthonormal basis of the kernel of `word` restricted to the window.
pub fn kernel_basis(rep: &Representation, word: &Monomial, window: usize) -> Result<Vec<StateVector>> {
    check_window(window)?;
    let m = rep.operator_matrix(word, window)?;
    Ok(null_space(&m.matrix, RANK_THRESHOLD)
        .iter()
        .map(|x| vector_from_coordinates(rep, x))
        .collect())
}

pub fn kernel_dim(rep: &Representation, word: &Monomial, window: usize) -> Result<usize> {
    Ok(kernel_basis(rep, word, window)?.len())
}

const KERNEL_CONSEQUENCES: [&str; 4] = ["2* 3", "2*", "3*", "3* 2"];

fn record_kernel(verdict: &mut CheckVerdict, rep: &Representation, window: usize) -> Result<()> {
    let kernel = kernel_basis(rep, &word("2* 3"), window)?;
    verdict.detail("kernel_dim", kernel.len());
    for text in KERNEL_CONSEQUENCES {
        let w = word(text);
        let mut worst = 0.0f64;
        for h in &kernel {
            let r = rep.apply_monomial(&w, h)?.norm();
            worst = worst.max(r);
            if !(r < verdict.scope.tolerance) {
                verdict.fail(Witness {
                    monomial: w.clone(),
                    label: None,
                    residual: r,
                    note: Some("does not annihilate a kernel vector of `2* 3`".into()),
                });
            }
        }
        verdict.residuals.push(worst);
    }
    Ok(())
}

/// The three relations used for initial vectors, plus the annihilation of
/// `ker T*(2)T(3)` by `T*(2)T(3)`, `T*(2)`, `T*(3)` and `T*(3)T(2)`.
pub fn check_obvious_relations(rep: &Representation, cfg: &CheckConfig) -> Result<CheckVerdict> {
    check_window(cfg.window)?;
    let mut verdict = CheckVerdict::new("relations", scope(cfg, Some(4)));
    for (lhs, rhs) in [("2*", "3* 2* 3"), ("3*", "4* 2* 3"), ("3* 2", "2* 2* 3")] {
        let r = record_identity(&mut verdict, rep, &word(lhs), &word(rhs), cfg.window)?;
        verdict.residuals.push(r);
    }
    record_kernel(&mut verdict, rep, cfg.window)?;
    Ok(verdict)
}

/// Kernel of `T*(2)T(3)` on the window and its annihilation consequences.
pub fn check_kernel(rep: &Representation, cfg: &CheckConfig) -> Result<CheckVerdict> {
    check_window(cfg.window)?;
    let mut verdict = CheckVerdict::new("kernel", scope(cfg, Some(2)));
    record_kernel(&mut verdict, rep, cfg.window)?;
    Ok(verdict)
}

/// `(self-adjointness, idempotence)` residuals of `w` on the window, each
/// with the basis label where it is attained.
pub fn projection_residuals(
    rep: &Representation,
    w: &Monomial,
    window: usize,
) -> Result<((f64, BasisLabel), (f64, BasisLabel))> {
    let labels = rep.window_labels(window);
    let images = labels
        .iter()
        .map(|&l| rep.apply_monomial(w, &StateVector::basis(l)))
        .collect::<Result<Vec<_>>>()?;

    // ⟨W b_i, b_j⟩ against conj ⟨W b_j, b_i⟩ on the compressed matrix.
    let mut adj = (0.0, labels[0]);
    for (i, wi) in images.iter().enumerate() {
        for (j, wj) in images.iter().enumerate().skip(i) {
            let r = (wi.get(labels[j]) - wj.get(labels[i]).conj()).norm();
            if r > adj.0 {
                adj = (r, labels[i]);
            }
        }
    }
    let mut idem = (0.0, labels[0]);
    for (i, wi) in images.iter().enumerate() {
        let r = (&rep.apply_monomial(w, wi)? - wi).norm();
        if r > idem.0 {
            idem = (r, labels[i]);
        }
    }
    Ok((adj, idem))
}

/// `P = T*(3)T(2)T*(2)T(3)` and `Q = T*(2)T(3)T*(3)T(2)` are orthogonal
/// projections with `PQ = Q`.
pub fn check_pq(rep: &Representation, cfg: &CheckConfig) -> Result<CheckVerdict> {
    check_window(cfg.window)?;
    let mut verdict = CheckVerdict::new("pq", scope(cfg, Some(8)));
    let p = word("3* 2 2* 3");
    let q = word("2* 3 3* 2");
    for (w, what) in [(&p, "P"), (&q, "Q")] {
        let ((adj, adj_at), (idem, idem_at)) = projection_residuals(rep, w, cfg.window)?;
        verdict.record(adj, || Witness {
            monomial: w.clone(),
            label: Some(adj_at),
            residual: adj,
            note: Some(format!("{what} is not self-adjoint")),
        });
        verdict.record(idem, || Witness {
            monomial: w.clone(),
            label: Some(idem_at),
            residual: idem,
            note: Some(format!("{what} is not idempotent")),
        });
    }
    let pq = p.concat(&q);
    let (r, at) = identity_residual(rep, &pq, &q, cfg.window)?;
    verdict.record(r, || Witness {
        monomial: pq.clone(),
        label: Some(at),
        residual: r,
        note: Some("PQ differs from Q".into()),
    });
    verdict.detail("pq_residual", r);
    Ok(verdict)
}

/// Semidecision: every reduced index-0 word up to `max_len` (arguments up to
/// `arg_cap`) acts as an orthogonal projection on the window.
pub fn is_inverse_representation(rep: &Representation, cfg: &CheckConfig) -> Result<CheckVerdict> {
    check_window(cfg.window)?;
    if cfg.max_len < 2 {
        return Err(Error::OutOfRange("max_len must be at least 2".into()));
    }
    let semigroup = NumericalSemigroup::perforated();
    let words = enumerate_index_zero(&semigroup, cfg.max_len, cfg.arg_cap);
    let results = words
        .par_iter()
        .map(|w| projection_residuals(rep, w, cfg.window))
        .collect::<Result<Vec<_>>>()?;

    let mut verdict = CheckVerdict::new("inverse", scope(cfg, Some(cfg.max_len)));
    let (mut adj_max, mut idem_max) = (0.0f64, 0.0f64);
    for (w, &((adj, adj_at), (idem, idem_at))) in words.iter().zip(&results) {
        adj_max = adj_max.max(adj);
        idem_max = idem_max.max(idem);
        if !(adj < cfg.tol) {
            verdict.fail(Witness {
                monomial: w.clone(),
                label: Some(adj_at),
                residual: adj,
                note: Some("index-0 word is not self-adjoint".into()),
            });
        } else if !(idem < cfg.tol) {
            verdict.fail(Witness {
                monomial: w.clone(),
                label: Some(idem_at),
                residual: idem,
                note: Some("index-0 word is not idempotent".into()),
            });
        }
    }
    verdict.residuals = vec![adj_max, idem_max];
    verdict.detail("words_checked", words.len());
    verdict.detail("arg_cap", cfg.arg_cap);
    Ok(verdict)
}

/// Elementary range projections `P(n) = T(n)T*(n)` commute pairwise for
/// `2 ≤ n < m ≤ arg_cap`.
pub fn check_commuting_projections(rep: &Representation, cfg: &CheckConfig) -> Result<CheckVerdict> {
    check_window(cfg.window)?;
    let mut verdict = CheckVerdict::new("commute", scope(cfg, Some(4)));
    let proj = |n: u64| Monomial::new(vec![TrivialMonomial::iso(n), TrivialMonomial::coiso(n)]);
    for n in 2..=cfg.arg_cap {
        for m in n + 1..=cfg.arg_cap {
            let r = record_identity(
                &mut verdict,
                rep,
                &proj(n).concat(&proj(m)),
                &proj(m).concat(&proj(n)),
                cfg.window,
            )?;
            verdict.residuals.push(r);
        }
    }
    Ok(verdict)
}

/// Whether the span of `{W·seed}` over words of length `≤ max_len` (letters
/// `T(a)`, `T*(a)`, `a ≤ arg_cap`) contains the whole window.
pub fn cyclicity_check(
    rep: &Representation,
    seed: &StateVector,
    max_len: usize,
    cfg: &CheckConfig,
) -> Result<CheckVerdict> {
    check_window(cfg.window)?;
    if seed.is_zero() {
        return Err(Error::OutOfRange("cyclicity seed must be nonzero".into()));
    }
    let letters: Vec<TrivialMonomial> = (2..=cfg.arg_cap)
        .flat_map(|a| [TrivialMonomial::iso(a), TrivialMonomial::coiso(a)])
        .collect();

    // Breadth-first over word length, keeping only vectors that enlarge the
    // span: images of dropped vectors lie in the span of images of kept ones.
    let mut span = OrthoBasis::new(RANK_THRESHOLD);
    span.insert(seed);
    let mut frontier = vec![seed.clone()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for v in &frontier {
            for &t in &letters {
                let image = rep.apply_trivial(t, v)?;
                if span.insert(&image) {
                    next.push(image);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    let labels = rep.window_labels(cfg.window);
    let leftovers: Vec<StateVector> = labels
        .iter()
        .map(|&l| span.orthogonal_part(&StateVector::basis(l)))
        .collect();
    let m = rep.columns_matrix(&leftovers, cfg.window)?;
    let missing = crate::linalg::rank(&m.matrix, RANK_THRESHOLD);
    let reached = cfg.window - missing;

    let mut verdict = CheckVerdict::new("cyclic", scope(cfg, Some(max_len)));
    verdict.scope.tolerance = RANK_THRESHOLD;
    let (worst_label, worst) = labels
        .iter()
        .zip(&leftovers)
        .map(|(&l, r)| (l, r.norm()))
        .fold((labels[0], 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    verdict.residuals.push(worst);
    if reached != cfg.window {
        verdict.fail(Witness {
            monomial: Monomial::identity(),
            label: Some(worst_label),
            residual: worst,
            note: Some(format!(
                "orbit span meets the window in dimension {reached} < {}",
                cfg.window
            )),
        });
    }
    verdict.detail("span_dim", span.dim());
    verdict.detail("window_dim_reached", reached);
    Ok(verdict)
}

fn random_vector(rep: &Representation, rng: &mut ChaCha8Rng, window: usize) -> StateVector {
    let k = rng.gen_range(1..=6);
    StateVector::from_entries((0..k).map(|_| {
        let label = rep.label_at(rng.gen_range(0..window));
        (label, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }))
}

/// Randomised: `‖T(m)v‖ = ‖v‖` and `⟨T(m)v, w⟩ = ⟨v, T*(m)w⟩`.
pub fn check_adjointness(rep: &Representation, samples: usize, cfg: &CheckConfig) -> Result<CheckVerdict> {
    check_window(cfg.window)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut verdict = CheckVerdict::new("adjoint", scope(cfg, Some(1)));
    verdict.scope.tolerance = 1e-12;
    let (mut iso_max, mut adj_max) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let m = *[0u64, 2, 3, 4, 5, 6, 7, 8, 9, 10].get(rng.gen_range(0..10)).unwrap();
        let v = random_vector(rep, &mut rng, cfg.window);
        let w = random_vector(rep, &mut rng, cfg.window);
        let tv = rep.apply_iso(m, &v)?;
        let tw = rep.apply_coiso(m, &w)?;
        let iso = (tv.norm() - v.norm()).abs();
        let adj = (tv.inner(&w) - v.inner(&tw)).norm();
        iso_max = iso_max.max(iso);
        adj_max = adj_max.max(adj);
        if !(iso < 1e-12 && adj < 1e-12) {
            verdict.fail(Witness {
                monomial: Monomial::new(vec![TrivialMonomial::iso(m)]),
                label: v.labels().next(),
                residual: iso.max(adj),
                note: Some("isometry or adjointness violated".into()),
            });
        }
    }
    verdict.residuals = vec![iso_max, adj_max];
    verdict.detail("samples", samples);
    verdict.detail("seed", cfg.seed);
    Ok(verdict)
}
