use std::sync::Arc;

use fockb::algebra::matrix::spectral_norm;
use fockb::algebra::{rat, rat_int, Deform, PolyScalar, RMatrix};
use fockb::fock::ops::{annihilate, create, gauge, qt_annihilate, qt_gauge};
use fockb::fock::symmetrizer::{annihilator_matrix, free_annihilator_matrix, gauge_norm, r_operator, r_operator_norm};
use fockb::fock::{inner, FockVector, InnerFlavor, SpaceSpec};
use fockb::verify::{InstanceGen, FLOAT_SAMPLES};

fn spaces() -> Vec<SpaceSpec> {
    let swap = RMatrix::from_rows(vec![vec![rat_int(0), rat_int(1)], vec![rat_int(1), rat_int(0)]]).unwrap();
    vec![
        SpaceSpec::with_signature(&[1], 4).unwrap(),
        SpaceSpec::with_signature(&[-1], 4).unwrap(),
        SpaceSpec::with_signature(&[1, -1], 4).unwrap(),
        SpaceSpec::new(swap, 4).unwrap(),
    ]
}

fn random_level(gen: &mut InstanceGen, space: &Arc<SpaceSpec>, n: usize) -> FockVector {
    let mut v = FockVector::zero(space.clone());
    for w in space.level_words(n) {
        v.add_term(w, PolyScalar::constant(gen.rational()));
    }
    v
}

#[test]
fn creation_is_adjoint_to_annihilation() {
    let d = Deform::symbolic();
    let mut gen = InstanceGen::new(11);
    for space in spaces() {
        let sp = Arc::new(space);
        for n in 1..=3 {
            let x = gen.vector(sp.dim());
            let u = random_level(&mut gen, &sp, n - 1);
            let v = random_level(&mut gen, &sp, n);
            let lhs = inner(&create(&x, &u).unwrap(), &v, InnerFlavor::AlphaQ, &d).unwrap();
            let rhs = inner(&u, &annihilate(&x, &v, &d), InnerFlavor::AlphaQ, &d).unwrap();
            assert_eq!(lhs, rhs, "n={n} J={:?}", sp.involution());
        }
    }
}

#[test]
fn gauge_is_symmetric() {
    let d = Deform::symbolic();
    let mut gen = InstanceGen::new(12);
    for space in spaces() {
        let sp = Arc::new(space);
        for n in 1..=3 {
            let t = gen.symmetric(sp.dim());
            let u = random_level(&mut gen, &sp, n);
            let v = random_level(&mut gen, &sp, n);
            let lhs = inner(&gauge(&t, &u, &d), &v, InnerFlavor::AlphaQ, &d).unwrap();
            let rhs = inner(&u, &gauge(&t, &v, &d), InnerFlavor::AlphaQ, &d).unwrap();
            assert_eq!(lhs, rhs, "n={n}");
        }
    }
}

#[test]
fn annihilator_factors_through_r() {
    let d = Deform::symbolic();
    let mut gen = InstanceGen::new(13);
    for space in spaces() {
        for n in 1..=3 {
            let x = gen.vector(space.dim());
            let b = annihilator_matrix(n, &x, &space, &d).unwrap();
            let free = free_annihilator_matrix(n, &x, &space).unwrap();
            assert_eq!(b, free.try_mul(&r_operator(n, &space, &d).unwrap()).unwrap(), "n={n}");
        }
    }
}

#[test]
fn qt_operators_are_adjoint_and_symmetric() {
    let d = Deform::symbolic();
    let mut gen = InstanceGen::new(14);
    for dim in 1..=2 {
        let sp = Arc::new(SpaceSpec::trivial(dim, 4).unwrap());
        for n in 1..=3 {
            let x = gen.vector(dim);
            let t = gen.symmetric(dim);
            let u = random_level(&mut gen, &sp, n - 1);
            let v = random_level(&mut gen, &sp, n);
            let lhs = inner(&create(&x, &u).unwrap(), &v, InnerFlavor::Qt, &d).unwrap();
            let rhs = inner(&u, &qt_annihilate(&x, &v, &d), InnerFlavor::Qt, &d).unwrap();
            assert_eq!(lhs, rhs, "adjoint n={n}");
            let w = random_level(&mut gen, &sp, n);
            let lhs = inner(&qt_gauge(&t, &w, &d), &v, InnerFlavor::Qt, &d).unwrap();
            let rhs = inner(&w, &qt_gauge(&t, &v, &d), InnerFlavor::Qt, &d).unwrap();
            assert_eq!(lhs, rhs, "gauge n={n}");
        }
    }
}

#[test]
fn gauge_norm_bound() {
    let space = SpaceSpec::with_signature(&[1, -1], 4).unwrap();
    let t = RMatrix::from_rows(vec![vec![rat(1, 2), rat_int(2)], vec![rat_int(2), rat(-3, 4)]]).unwrap();
    let t_norm = spectral_norm(&t.to_f64());
    for (alpha, q) in FLOAT_SAMPLES {
        let bound = (1.0 + alpha.abs()) * f64::max(1.0, 1.0 / (1.0 - q.abs())) * t_norm;
        for n in 1..=4 {
            let norm = gauge_norm(n, &t, &space, alpha, q).unwrap();
            assert!(norm <= bound + 1e-9, "alpha={alpha} q={q} n={n}: {norm} > {bound}");
        }
    }
}

// (1 + q pi_1) on two letters has norm 1 + |q|, which exceeds [2]_q = 1 + q for q < 0.
#[test]
fn r_norm_at_negative_q_uses_absolute_value() {
    let space = SpaceSpec::trivial(2, 2).unwrap();
    let norm = r_operator_norm(2, &space, 0.0, -0.3).unwrap();
    assert!((norm - 1.3).abs() < 1e-12, "{norm}");
}

#[test]
fn vacuum_is_annihilated_and_gauge_fixed() {
    let d = Deform::symbolic();
    let sp = Arc::new(SpaceSpec::with_signature(&[1, -1], 2).unwrap());
    let omega = FockVector::vacuum(sp.clone());
    let x = vec![rat(1, 3), rat_int(2)];
    assert!(annihilate(&x, &omega, &d).is_zero());
    assert!(gauge(&RMatrix::identity(2), &omega, &d).is_zero());
    let one = create(&x, &omega).unwrap();
    assert_eq!(inner(&one, &one, InnerFlavor::AlphaQ, &d).unwrap(), "37/9 - 35/9*a".parse().unwrap());
    assert!(!inner(&omega, &omega, InnerFlavor::ZeroZero, &d).unwrap().is_zero());
}
