//! Randomized invariants of the permutation engine and the embedding predicates.

use std::collections::{BTreeSet, HashSet, VecDeque};

use extclosed::embedding::{self, naive, ClosureKind};
use extclosed::lattice::all_subgroups;
use extclosed::subgroup::{conjugate_subgroup, normalizer};
use extclosed::{catalog, Limits, PermGroup, Permutation, Point};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as Point).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perms(degree: usize, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm(degree), count)
}

/// Breadth-first closure under right multiplication by generators.
fn closure(gens: &[Permutation], degree: usize) -> HashSet<Vec<Point>> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.images().to_vec()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.images().to_vec()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn key(h: &PermGroup) -> BTreeSet<Vec<Point>> {
    h.elements(&Limits::default()).unwrap().map(|x| x.images().to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative_with_inverses(v in (1usize..9).prop_flat_map(|d| perms(d, 3..4))) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a.compose(b).compose(c), a.compose(&b.compose(c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(b).inverse(), b.inverse().compose(&a.inverse()));
    }

    #[test]
    fn order_and_powers_agree(a in perm(9)) {
        let n = a.order();
        prop_assert!(a.pow(n as i64).is_identity());
        for k in 1..n {
            prop_assert!(!a.pow(k as i64).is_identity());
        }
        prop_assert_eq!(a.pow(-1), a.inverse());
        prop_assert_eq!(a.pow(n as i64 + 1), a.clone());
    }

    #[test]
    fn conjugation_is_an_automorphism(v in perms(7, 3..4)) {
        let (a, b, g) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a.compose(b).conjugate_by(g), a.conjugate_by(g).compose(&b.conjugate_by(g)));
        prop_assert_eq!(a.conjugate_by(g).order(), a.order());
        prop_assert_eq!(a.conjugate_by(g), g.inverse().compose(a).compose(g));
        let comm = a.commutator(b);
        prop_assert_eq!(comm, a.inverse().compose(&b.inverse()).compose(a).compose(b));
        prop_assert_eq!(a.commutes_with(b), a.compose(b) == b.compose(a));
    }

    #[test]
    fn cycle_text_round_trips(a in perm(10)) {
        let text = a.to_string();
        prop_assert_eq!(Permutation::parse_cycles(&text, Some(10)).unwrap(), a.clone());
        let cycles = a.cycles();
        prop_assert_eq!(Permutation::from_cycles(10, &cycles).unwrap(), a.clone());
        let moved: usize = cycles.iter().map(Vec::len).sum();
        prop_assert_eq!(moved + a.fixed_points(), 10);
    }

    #[test]
    fn schreier_sims_matches_closure(gens in perms(6, 1..4)) {
        let g = PermGroup::from_generators(&gens, 6).unwrap();
        let oracle = closure(&gens, 6);
        prop_assert_eq!(g.order(), oracle.len() as u64);
        prop_assert_eq!(720 % g.order(), 0);
        let listed: HashSet<Vec<Point>> = g.elements(&Limits::default()).unwrap().map(|x| x.images().to_vec()).collect();
        prop_assert_eq!(&listed, &oracle);
        for r in 0..g.order() {
            let x = g.unrank(r);
            prop_assert_eq!(g.rank(&x), Some(r));
        }
        for x in &gens {
            prop_assert!(g.contains(x).unwrap());
        }
    }

    #[test]
    fn membership_matches_closure(gens in perms(6, 1..3), probe in perm(6)) {
        let g = PermGroup::from_generators(&gens, 6).unwrap();
        let oracle = closure(&gens, 6);
        prop_assert_eq!(g.contains(&probe).unwrap(), oracle.contains(probe.images()));
        prop_assert_eq!(g.rank(&probe).is_some(), oracle.contains(probe.images()));
    }

    #[test]
    fn predicates_are_conjugation_invariant(hgens in perms(5, 1..3), x in perm(5)) {
        let l = Limits::default();
        let g = catalog::symmetric(5).unwrap();
        let h = PermGroup::from_generators(&hgens, 5).unwrap();
        let k = conjugate_subgroup(&h, &x).unwrap();
        for kind in [ClosureKind::Weak, ClosureKind::Strong, ClosureKind::Extreme] {
            prop_assert_eq!(
                embedding::is_closed_in_g(kind, &h, &g, &l).unwrap().holds,
                embedding::is_closed_in_g(kind, &k, &g, &l).unwrap().holds
            );
        }
        prop_assert_eq!(embedding::is_pronormal(&h, &g, &l).unwrap().holds, embedding::is_pronormal(&k, &g, &l).unwrap().holds);
        prop_assert_eq!(embedding::is_abnormal(&h, &g, &l).unwrap().holds, embedding::is_abnormal(&k, &g, &l).unwrap().holds);
        let nh = normalizer(&g, &h, &l).unwrap();
        let nk = normalizer(&g, &k, &l).unwrap();
        prop_assert_eq!(key(&conjugate_subgroup(&nh, &x).unwrap()), key(&nk));
    }

    #[test]
    fn closure_verdicts_match_oracle_and_witnesses_recheck(
        hgens in perms(5, 1..3),
        mgens in perms(5, 0..2),
        all_g in any::<bool>(),
    ) {
        let l = Limits::default();
        let g = catalog::symmetric(5).unwrap();
        let h = PermGroup::from_generators(&hgens, 5).unwrap();
        let m = h.extended(&mgens).unwrap();
        for kind in [ClosureKind::Weak, ClosureKind::Strong, ClosureKind::Extreme] {
            let r = embedding::is_closed(kind, &h, &m, &g, all_g, &l).unwrap();
            prop_assert_eq!(r.holds, naive::is_closed(kind, &h, &m, &g, all_g, &l).unwrap());
            match &r.witness_element {
                Some(w) => {
                    prop_assert!(!r.holds);
                    prop_assert!(embedding::witness_violates(kind, &h, &m, all_g, w, &l).unwrap());
                }
                None => prop_assert!(r.holds),
            }
        }
    }

    #[test]
    fn implication_chain_holds(hgens in perms(5, 1..3), mgens in perms(5, 0..2)) {
        let l = Limits::default();
        let g = catalog::symmetric(5).unwrap();
        let h = PermGroup::from_generators(&hgens, 5).unwrap();
        let m = h.extended(&mgens).unwrap();
        let t = embedding::classify_triple(&g, &m, &h, &l).unwrap();
        let ext = embedding::is_closed(ClosureKind::Extreme, &h, &m, &g, false, &l).unwrap().holds;
        let strong = embedding::is_closed(ClosureKind::Strong, &h, &m, &g, false, &l).unwrap().holds;
        let weak = embedding::is_closed(ClosureKind::Weak, &h, &m, &g, false, &l).unwrap().holds;
        if t.h_normal_in_m {
            prop_assert!(!t.special || ext);
            prop_assert!(!t.gamma || ext);
        }
        prop_assert!(!strong || weak);
        if t.h_normal_in_m && ext {
            prop_assert!(strong);
        }
        prop_assert_eq!(t.special, naive::is_special(&g, &m, &h, &l).unwrap());
        prop_assert_eq!(t.w_triple, naive::is_w_triple(&g, &m, &h, &l).unwrap());
        prop_assert_eq!(t.gamma, naive::is_gamma(&g, &m, &h, &l).unwrap());
    }
}

#[test]
fn lattice_subgroups_are_closed_and_distinct() {
    let l = Limits::default();
    let g = catalog::symmetric(4).unwrap();
    let subs = all_subgroups(&g, false, &l).unwrap();
    assert_eq!(subs.len(), 30);
    let keys: HashSet<_> = subs.iter().map(key).collect();
    assert_eq!(keys.len(), 30);
    let classes = all_subgroups(&g, true, &l).unwrap();
    assert_eq!(classes.len(), 11);
}
