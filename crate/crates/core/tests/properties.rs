mod common;

use proptest::prelude::*;

use common::*;
use uniconj::conjugacy::{exponent_search_bound, uniform_conjugator, word_criterion, TuplePair};
use uniconj::geometry;
use uniconj::whitehead::{all_whitehead_auts, minimize, WhiteheadAut};
use uniconj::word::{commute, is_conjugate, primitive_root, reduce, Word};

fn raw(rank: i32, max: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(
        (1..=rank, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g }),
        0..=max,
    )
}

fn word(rank: i32, max: usize) -> impl Strategy<Value = Word> {
    raw(rank, max).prop_map(move |r| reduce(&r, rank as usize).expect("in rank"))
}

fn nontrivial(rank: i32, max: usize) -> impl Strategy<Value = Word> {
    word(rank, max).prop_filter("nontrivial", |w| !w.is_identity())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_matches_naive(r in raw(3, 24)) {
        prop_assert_eq!(v(&reduce(&r, 3).unwrap()), red(&r));
    }

    #[test]
    fn group_axioms(a in word(3, 10), b in word(3, 10), c in word(3, 10)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert_eq!(v(&a.mul(&b)), mul(&v(&a), &v(&b)));
    }

    #[test]
    fn text_round_trip(a in word(4, 16)) {
        prop_assert_eq!(Word::parse(&a.to_string(), 4).unwrap(), a);
    }

    #[test]
    fn cyclic_reduction(a in word(2, 14)) {
        let cw = a.cyclic_reduce();
        prop_assert_eq!(cw.reconstruct(), a.clone());
        prop_assert!(cw.core.is_cyclically_reduced());
        prop_assert!(cw.core.len() <= a.len());
        prop_assert_eq!(cw.core.len() == a.len(), a.is_cyclically_reduced());
        prop_assert_eq!(cw.core.len(), core(&v(&a)).len());
    }

    #[test]
    fn conjugacy_certificates(a in word(2, 8), z in word(2, 6), other in word(2, 8)) {
        let b = a.conjugate_by(&z);
        let g = is_conjugate(&a, &b).expect("conjugate by construction");
        prop_assert_eq!(a.conjugate_by(&g), b.clone());
        prop_assert!(g.len() <= z.len());
        prop_assert_eq!(is_conjugate(&a, &other).is_some(), conjugate(&v(&a), &v(&other)));
    }

    #[test]
    fn primitive_roots(a in nontrivial(2, 6), k in 1i64..4) {
        let (root, e) = primitive_root(&a.pow(k)).unwrap();
        prop_assert_eq!(root.pow(e as i64), a.pow(k));
        prop_assert!(commute(&root, &a));
        let (again, one) = primitive_root(&root).unwrap();
        prop_assert_eq!((again, one), (root, 1));
    }

    #[test]
    fn exponent_bound_covers_solution(a in nontrivial(2, 6), rho in nontrivial(2, 5), k in -25i64..=25) {
        let (rho, _) = primitive_root(&rho).unwrap();
        prop_assume!(!commute(&a, &rho));
        let t = a.conjugate_by(&rho.pow(k));
        // non-commuting: k is the unique solution, so it must lie inside the bound
        prop_assert!(k.abs() <= exponent_search_bound(&a, &t, &rho));
        let hits: Vec<i64> = (-60..=60).filter(|&j| a.conjugate_by(&rho.pow(j)) == t).collect();
        prop_assert_eq!(hits, vec![k]);
    }

    #[test]
    fn conjugating_the_right_tuple(left in prop::collection::vec(nontrivial(2, 5), 1..=3), z in word(2, 4), h in word(2, 4)) {
        let right: Vec<Word> = left.iter().map(|a| a.conjugate_by(&z)).collect();
        let tp = TuplePair::new(2, left.clone(), right.clone()).unwrap();
        let g = uniform_conjugator(&tp).expect("uniform by construction");
        let moved = TuplePair::new(2, left, right.iter().map(|b| b.conjugate_by(&h)).collect()).unwrap();
        let g2 = uniform_conjugator(&moved).expect("still uniform");
        prop_assert!(moved.verifies(&g.mul(&h)));
        prop_assert!(moved.verifies(&g2));
    }

    #[test]
    fn permuting_components(seed_left in prop::collection::vec(nontrivial(2, 4), 2..=3), zs in prop::collection::vec(word(2, 3), 3), rot in 0usize..3) {
        let right: Vec<Word> = seed_left.iter().zip(&zs).map(|(a, z)| a.conjugate_by(z)).collect();
        let tp = TuplePair::new(2, seed_left.clone(), right.clone()).unwrap();
        let n = seed_left.len();
        let perm = |xs: &[Word]| -> Vec<Word> { (0..n).map(|i| xs[(i + rot) % n].clone()).collect() };
        let permuted = TuplePair::new(2, perm(&seed_left), perm(&right)).unwrap();
        let (a, b) = (uniform_conjugator(&tp), uniform_conjugator(&permuted));
        prop_assert_eq!(a.is_some(), b.is_some());
        if let Some(g) = a {
            prop_assert!(permuted.verifies(&g));
        }
    }

    #[test]
    fn criterion_forward(left in prop::collection::vec(nontrivial(3, 5), 1..=3), z in word(3, 4)) {
        let right = left.iter().map(|a| a.conjugate_by(&z)).collect();
        let tp = TuplePair::new(3, left, right).unwrap();
        prop_assert!(word_criterion(&tp, 3).unwrap().passed());
    }

    #[test]
    fn whitehead_round_trip(a in word(3, 12), idx in any::<prop::sample::Index>()) {
        let auts = all_whitehead_auts(3).unwrap();
        let aut: &WhiteheadAut = idx.get(&auts);
        let image = aut.apply(&a, 3).unwrap();
        prop_assert_eq!(aut.inverse().apply(&image, 3).unwrap(), a.clone());
        let images = vs(aut.to_endomorphism(3).images());
        prop_assert_eq!(v(&image), subst(&images, &v(&a)));
    }

    #[test]
    fn minimization_is_monotone_and_stable(t in prop::collection::vec(nontrivial(2, 7), 1..=2)) {
        let before: usize = t.iter().map(Word::cyclic_length).sum();
        let (m, seq) = minimize(&t, 2).unwrap();
        let after: usize = m.iter().map(Word::len).sum();
        prop_assert!(after <= before);
        prop_assert_eq!(seq.is_empty(), after == before);
        let (m2, seq2) = minimize(&m, 2).unwrap();
        prop_assert_eq!(m2, m);
        prop_assert!(seq2.is_empty());
    }

    #[test]
    fn norm_is_a_conjugacy_invariant(g in nontrivial(2, 8), x in word(2, 6)) {
        prop_assert_eq!(geometry::norm(&g.conjugate_by(&x)), geometry::norm(&g));
        prop_assert_eq!(geometry::is_on_axis(&g, &x), g.conjugate_by(&x).len() == geometry::norm(&g));
    }
}
