mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semishift::verifier::*;
use semishift::{BasisLabel, Monomial, NumericalSemigroup, Representation, StateVector};

fn w(text: &str) -> Monomial {
    text.parse().unwrap()
}

fn cfg() -> CheckConfig {
    CheckConfig::default()
}

#[test]
fn identity_checks() {
    let v = check_identity(&Representation::Pi0, &w("2* 3"), &w("3* 4"), &cfg()).unwrap();
    assert!(v.passed && v.witness.is_none());

    let small = CheckConfig { window: 10, ..cfg() };
    let v = check_identity(&Representation::Pi0, &w(""), &w(""), &small).unwrap();
    assert!(v.passed);

    let v = check_identity(&tau(0.6, 0.0), &w("2 2* 3 3*"), &w("3 3* 2 2*"), &cfg()).unwrap();
    assert!(!v.passed);
    let witness = v.witness.unwrap();
    assert!(witness.residual > 0.1);
    assert_eq!(witness.monomial, w("2 2* 3 3*"));
    assert!(witness.label.is_some());
}

#[test]
fn reduction_soundness_in_every_variant() {
    let s = NumericalSemigroup::perforated();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let small = CheckConfig { window: 15, ..cfg() };
    for rep in variants(&mut rng) {
        for _ in 0..40 {
            let v = random_word(&mut rng, 8);
            let verdict = check_identity(&rep, &v, &v.basic_reduce(&s), &small).unwrap();
            assert!(verdict.passed, "{} {v}", rep.name());
        }
    }
}

#[test]
fn lemma31_suite() {
    for rep in [Representation::Pi0, Representation::Pi1, tau(0.6, 0.0)] {
        let v = check_lemma31_suite(&rep, 8, &cfg()).unwrap();
        assert!(v.passed, "{}", rep.name());
        assert_eq!(v.residuals.len(), 2);
    }
    assert!(check_lemma31_suite(&Representation::Pi0, 1, &cfg()).is_err());
}

#[test]
fn obvious_relations() {
    let v = check_obvious_relations(&Representation::Pi0, &cfg()).unwrap();
    assert!(v.passed);
    assert_eq!(v.details["kernel_dim"], 0);

    let v = check_obvious_relations(&Representation::Pi1, &cfg()).unwrap();
    assert!(v.passed);
    assert_eq!(v.details["kernel_dim"], 1);
    let kernel = kernel_basis(&Representation::Pi1, &w("2* 3"), 40).unwrap();
    assert_eq!(kernel.len(), 1);
    assert!((kernel[0].get(BasisLabel::single(0)).norm() - 1.0).abs() < 1e-12);

    // recorded, not assumed
    let v = check_obvious_relations(&tau(0.6, 0.0), &cfg()).unwrap();
    assert_eq!(v.residuals.len(), 7);
    assert!(v.passed);
}

#[test]
fn pq_projections() {
    for rep in [Representation::Pi0, Representation::Pi1] {
        let v = check_pq(&rep, &cfg()).unwrap();
        assert!(v.passed, "{}", rep.name());
        assert!(v.residuals.iter().all(|&r| r < 1e-10));
    }
    // P = I and Q = I − |f₀⟩⟨f₀| in π₀
    assert!(check_identity(&Representation::Pi0, &w("3* 2 2* 3"), &w(""), &cfg()).unwrap().passed);
    let q = w("2* 3 3* 2");
    for n in 0..40u64 {
        let b = StateVector::basis(BasisLabel::single(n));
        let image = Representation::Pi0.apply_monomial(&q, &b).unwrap();
        if n == 0 {
            assert!(image.is_zero());
        } else {
            assert_eq!(image, b);
        }
    }

    let v = check_pq(&tau(0.6, 0.0), &cfg()).unwrap();
    assert!(!v.passed);
    assert!(v.witness.is_some());
}

#[test]
fn inverse_semidecision() {
    assert!(is_inverse_representation(&Representation::Pi0, &cfg()).unwrap().passed);
    assert!(is_inverse_representation(&Representation::Pi1, &cfg()).unwrap().passed);
    assert!(is_inverse_representation(&tau(0.0, 0.0), &cfg()).unwrap().passed);

    let v = is_inverse_representation(&tau(0.6, 0.0), &cfg()).unwrap();
    assert!(!v.passed);
    let witness = v.witness.unwrap();
    assert_eq!(witness.monomial.len(), 4);
    assert_eq!(witness.monomial.index(), 0);

    let short = CheckConfig { max_len: 1, ..cfg() };
    assert!(is_inverse_representation(&Representation::Pi0, &short).is_err());
}

#[test]
fn kernel_dimensions() {
    let k = w("2* 3");
    assert_eq!(kernel_dim(&Representation::Pi1, &k, 40).unwrap(), 1);
    assert_eq!(kernel_dim(&Representation::Pi0, &k, 40).unwrap(), 0);
    let sum = Representation::direct_sum(
        vec![Representation::Pi1, Representation::Pi1, Representation::Pi0],
        None,
    )
    .unwrap();
    assert_eq!(kernel_dim(&sum, &k, 60).unwrap(), 2);
}

#[test]
fn decomposition() {
    let cfg60 = CheckConfig { window: 60, ..cfg() };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sum = disguised(
        vec![Representation::Pi1, Representation::Pi1, Representation::Pi0],
        &mut rng,
        15,
    );
    let d = decompose(&sum, &cfg60).unwrap();
    assert_eq!((d.mult_pi1, d.mult_pi0, d.residual), (2, 1, false));

    let d = decompose(&Representation::Pi0, &cfg()).unwrap();
    assert_eq!((d.mult_pi1, d.mult_pi0, d.residual), (0, 1, false));
    let d = decompose(&Representation::Pi1, &cfg()).unwrap();
    assert_eq!((d.mult_pi1, d.mult_pi0, d.residual), (1, 0, false));

    match decompose(&tau(0.6, 0.0), &cfg()) {
        Err(semishift::Error::NotInverse(_)) => {}
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn fingerprints() {
    let fp = fingerprint(&Representation::Pi0, 40).unwrap();
    assert!(fp.stable);
    assert!(fp.commutator_norms.iter().all(|&n| n < 1e-10));
    assert!(fp.pq_residual < 1e-10);
    assert_eq!(fp.kernel_dim, 0);

    let fp = fingerprint(&Representation::Pi1, 40).unwrap();
    assert!(fp.commutator_norms.iter().all(|&n| n < 1e-10));
    assert_eq!(fp.kernel_dim, 1);

    let fp = fingerprint(&tau(0.6, 0.0), 40).unwrap();
    assert!(fp.commutator_norms.iter().any(|&n| n > 0.01));
    // P(2), P(3) differ only on span{e₂, e₃, e₄} where they reduce to
    // rank-one pieces with overlap β²: ‖[P(2),P(3)]‖ = β²·sqrt(1 − β⁴).
    let beta2 = 0.36f64;
    assert!((fp.commutator_norms[0] - beta2 * (1.0 - beta2 * beta2).sqrt()).abs() < 1e-12);
    // regression values from the first run
    assert!((fp.pq_residual - 0.058037096876).abs() < 1e-10);

    assert!(fingerprint(&Representation::Pi0, 10).is_err());
}

#[test]
fn cyclicity() {
    let c820 = CheckConfig { window: 20, ..cfg() };
    let g = StateVector::basis(BasisLabel::single(1));
    assert!(cyclicity_check(&tau(0.6, 0.0), &g, 8, &c820).unwrap().passed);

    let f0 = StateVector::basis(BasisLabel::single(0));
    assert!(cyclicity_check(&Representation::Pi0, &f0, 8, &c820).unwrap().passed);

    let sum = Representation::direct_sum(vec![Representation::Pi0, Representation::Pi0], None).unwrap();
    let seed = StateVector::basis(BasisLabel::new(0, 0));
    let v = cyclicity_check(&sum, &seed, 8, &c820).unwrap();
    assert!(!v.passed);
    assert_eq!(v.details["window_dim_reached"], 10);

    assert!(cyclicity_check(&sum, &StateVector::zero(), 8, &c820).is_err());
}

#[test]
fn commuting_projections_track_inverse_property() {
    for (rep, inverse) in [
        (Representation::Pi0, true),
        (Representation::Pi1, true),
        (tau(0.0, 0.0), true),
        (tau(0.6, 0.0), false),
        (tau(0.25, 0.0), false),
    ] {
        let commute = check_commuting_projections(&rep, &cfg()).unwrap().passed;
        assert_eq!(commute, inverse, "{}", rep.name());
        assert_eq!(is_inverse_representation(&rep, &cfg()).unwrap().passed, inverse);
    }
}

#[test]
fn verdict_json_shape() {
    let v = is_inverse_representation(&tau(0.6, 0.0), &cfg()).unwrap();
    let value = serde_json::to_value(&v).unwrap();
    for key in ["name", "passed", "scope", "witness", "residuals"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    assert_eq!(value["scope"]["window_size"], 40);
    assert!(value["witness"]["monomial"].is_string());
    let back: CheckVerdict = serde_json::from_value(value).unwrap();
    assert_eq!(back, v);

    let ok = check_pq(&Representation::Pi0, &cfg()).unwrap();
    assert!(serde_json::to_value(&ok).unwrap()["witness"].is_null());
}

#[test]
fn suite_order_is_the_registry_order() {
    let report = run_suite(&Representation::Pi0, &SuiteConfig::default()).unwrap();
    let names: Vec<&str> = report.verdicts.iter().map(|v| v.name.as_str()).collect();
    assert_eq!(names, CHECK_NAMES.to_vec());
    assert!(report.passed());
    assert!(report.fingerprint.is_some());
}
