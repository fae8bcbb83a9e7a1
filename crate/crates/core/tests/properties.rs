use std::collections::HashMap;

use fockb::algebra::{qint, rat, rat_int, Deform, Monomial, PolyScalar, RMatrix, Rational};
use fockb::coxeter::{enumerate_group, SignedPermutation};
use fockb::fock::SpaceSpec;
use fockb::moments::{operator_moment, operator_vector, vector_formula, wick_moment, MomentProblem};
use fockb::partitions::{colored_stats, enumerate_colored, set_partitions, Eps, PartitionFilter};
use fockb::verify::InstanceGen;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = PolyScalar> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), small_rational()), 0..5)
        .prop_map(|terms| terms.into_iter().map(|((a, q, t), c)| PolyScalar::monomial(Monomial::new(a, q, t), c)).sum())
}

fn swap_space(n: usize) -> SpaceSpec {
    let swap = RMatrix::from_rows(vec![vec![rat_int(0), rat_int(1)], vec![rat_int(1), rat_int(0)]]).unwrap();
    SpaceSpec::new(swap, n).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, PolyScalar::zero());
        prop_assert_eq!(&a * &PolyScalar::one(), a.clone());
    }

    #[test]
    fn text_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<PolyScalar>().unwrap(), a);
    }

    #[test]
    fn eval_is_multiplicative(a in poly(), b in poly(), x in small_rational(), y in small_rational(), z in small_rational()) {
        prop_assert_eq!((&a * &b).eval(&x, &y, &z), a.eval(&x, &y, &z) * b.eval(&x, &y, &z));
    }

    #[test]
    fn q_integer_telescopes(n in 0u32..14) {
        let one_minus_q = PolyScalar::one() - PolyScalar::q();
        prop_assert_eq!(qint(n) * one_minus_q, PolyScalar::one() - PolyScalar::q().pow(n));
    }

    #[test]
    fn group_laws(n in 1usize..=5, i in 0usize..3840, j in 0usize..3840, k in 0usize..3840) {
        let table = enumerate_group(n).unwrap();
        let els = table.elements();
        let (a, b, c) = (&els[i % els.len()], &els[j % els.len()], &els[k % els.len()]);
        let ab_c = a.perm.compose(&b.perm).unwrap().compose(&c.perm).unwrap();
        let a_bc = a.perm.compose(&b.perm.compose(&c.perm).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.perm.compose(&a.perm.inverse()).unwrap().is_identity());
        prop_assert_eq!(table.length(&a.perm.inverse()), Some(a.length()));
        prop_assert_eq!(SignedPermutation::from_word(n, &a.reduced_word).unwrap(), a.perm.clone());
    }

    #[test]
    fn lambda_enters_affinely(seed in 0u64..1000, n in 1usize..=4, slot in 0usize..4) {
        let space = SpaceSpec::with_signature(&[1, -1], n).unwrap();
        let mut gen = InstanceGen::new(seed);
        let p = gen.problem(n, &space, false, false);
        let slot = slot % n;
        let d = Deform::symbolic();
        let with = |l: Rational| {
            let mut lambdas = p.lambdas.clone();
            lambdas[slot] = l;
            let q = MomentProblem::new(p.xs.clone(), p.ts.clone(), lambdas, space.clone()).unwrap();
            wick_moment(&q, &d).unwrap()
        };
        let (a, b) = (gen.rational(), gen.rational());
        let mid = (&a + &b) / rat_int(2);
        prop_assert_eq!(with(a) + with(b), with(mid).scale(&rat_int(2)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wick_with_swap_involution(seed in 0u64..10_000, n in 1usize..=4) {
        let space = swap_space(n);
        let p = InstanceGen::new(seed).problem(n, &space, false, false);
        let d = Deform::symbolic();
        prop_assert_eq!(operator_moment(&p, &d).unwrap(), wick_moment(&p, &d).unwrap());
    }

    #[test]
    fn vector_with_swap_involution(seed in 0u64..10_000, letters in prop::collection::vec(0u8..3, 1..=3)) {
        let eps: Vec<Eps> = letters.iter().map(|l| [Eps::Star, Eps::One, Eps::Prime][*l as usize]).collect();
        let space = swap_space(eps.len());
        let p = InstanceGen::new(seed).problem(eps.len(), &space, false, true);
        let d = Deform::symbolic();
        prop_assert_eq!(operator_vector(&eps, &p, &d).unwrap(), vector_formula(&eps, &p, &d).unwrap());
    }
}

#[test]
fn crossing_and_nesting_ignore_colors() {
    for n in 1..=6 {
        let mut seen: HashMap<String, (usize, usize)> = HashMap::new();
        for p in enumerate_colored(n, PartitionFilter::All).unwrap() {
            let shape: Vec<Vec<usize>> = p.blocks().iter().map(|b| b.elems.clone()).collect();
            let s = colored_stats(&p);
            let prev = seen.entry(format!("{shape:?}")).or_insert((s.rc, s.rarc));
            assert_eq!(*prev, (s.rc, s.rarc), "{p}");
        }
    }
}

#[test]
fn bell_numbers() {
    let bell = [1usize, 1, 2, 5, 15, 52, 203, 877];
    for (n, b) in bell.iter().enumerate() {
        assert_eq!(set_partitions(n).len(), *b);
    }
}

#[test]
fn l1_counts_negative_window_entries() {
    for n in 1..=5 {
        for rec in enumerate_group(n).unwrap().elements() {
            assert_eq!(rec.l1 as usize, rec.perm.negative_entries(), "{}", rec.perm);
        }
    }
}
