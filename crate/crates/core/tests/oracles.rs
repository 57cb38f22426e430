//! Cross-checks of library routines against independent brute-force oracles.

use std::collections::BTreeSet;

use rqns::morphism::{brute_force_isomorphic, find_isomorphism, quotient_isomorphisms};
use rqns::numerical::enumerate_by_frobenius;
use rqns::presentation::{
    minimal_presentation, quotient_presentation, reduced_quotient_presentation, semigroup_from_presentation,
};
use rqns::quotient::{conductor_normalize, minimal_generating_system, nilpotency_class, power_layer};
use rqns::variety::{nilpotent_by_idempotents, nilpotent_by_powers};
use rqns::{FiniteSemigroup, Ideal, NumericalSemigroup, ReesQuotient};

fn semigroups_up_to(max_f: u64) -> Vec<NumericalSemigroup> {
    (1..=max_f).flat_map(|f| enumerate_by_frobenius(f).unwrap()).collect()
}

/// Members below `bound` of the closure of `gens` under addition.
fn closure(gens: &[u64], bound: u64) -> BTreeSet<u64> {
    let mut reach = vec![false; bound as usize];
    reach[0] = true;
    for x in 1..bound as usize {
        reach[x] = gens.iter().any(|&g| g as usize <= x && reach[x - g as usize]);
    }
    (1..bound).filter(|&x| reach[x as usize]).collect()
}

fn frobenius_of(gens: &[u64]) -> u64 {
    let bound = 4 * gens.iter().max().unwrap().pow(2) + 4;
    let members = closure(gens, bound);
    (1..bound).rev().find(|x| !members.contains(x)).unwrap_or(0)
}

#[test]
fn membership_matches_generator_closure() {
    for s in semigroups_up_to(12) {
        let bound = 2 * s.conductor() + 5;
        let members = closure(s.min_generators(), bound);
        for x in 1..bound {
            assert_eq!(s.contains(x), members.contains(&x), "{s} at {x}");
        }
        assert!(!s.contains(0) && s.contains_with_zero(0));
        assert_eq!(s.frobenius(), s.conductor() - 1);
        assert_eq!(s.genus() as u64, s.conductor() - 1 - s.small_elements().iter().filter(|&&x| x < s.conductor()).count() as u64);
    }
}

#[test]
fn irreducibility_matches_maximality() {
    // Irreducible exactly when no gap can be adjoined without moving F,
    // apart from F itself.
    for s in semigroups_up_to(10) {
        let f = s.frobenius();
        let maximal = s.gaps().into_iter().filter(|&x| x != f).all(|x| {
            let mut gens = s.min_generators().to_vec();
            gens.push(x);
            frobenius_of(&gens) != f
        });
        assert_eq!(s.is_irreducible().unwrap(), maximal, "{s}");
        let sym = s.is_symmetric().unwrap();
        let pseudo = s.is_pseudo_symmetric().unwrap();
        assert_eq!(sym, f % 2 == 1 && maximal, "{s}");
        assert_eq!(pseudo, f % 2 == 0 && maximal, "{s}");
    }
}

#[test]
fn apery_sets_determine_frobenius() {
    for s in semigroups_up_to(12).into_iter().filter(|s| !s.is_naturals()) {
        let m = s.multiplicity();
        let ap = s.apery_set(m).unwrap();
        assert_eq!(ap.len() as u64, m);
        let residues: BTreeSet<u64> = ap.iter().map(|w| w % m).collect();
        assert_eq!(residues.len() as u64, m);
        for &w in &ap {
            assert!(s.contains_with_zero(w) && (w < m || !s.contains_with_zero(w - m)));
        }
        assert_eq!(ap.iter().max().unwrap() - m, s.frobenius(), "{s}");
    }
    let s = NumericalSemigroup::from_generators(&[3, 5]).unwrap();
    assert_eq!(s.apery_set(3).unwrap(), vec![0, 5, 10]);
}

#[test]
fn small_element_constructor() {
    let s = NumericalSemigroup::from_small_elements(&[3, 6, 8, 9, 11], 11).unwrap();
    assert_eq!(s.min_generators(), &[3, 8, 13]);
    let t = NumericalSemigroup::from_small_elements(&[4, 6, 8], 8).unwrap();
    assert_eq!(t.min_generators(), &[4, 6, 9, 11]);
    assert!(NumericalSemigroup::from_small_elements(&[3, 4], 6).is_err());
}

#[test]
fn cutting_ideals_are_filters() {
    for s in semigroups_up_to(8).into_iter().filter(|s| !s.is_naturals()) {
        let c = s.conductor();
        for k in s.multiplicity() + 1..=c + 2 {
            let ideal = Ideal::cutting(&s, k).unwrap();
            for x in 1..c + 2 * k {
                assert_eq!(ideal.contains(x), s.contains(x) && x >= k, "{s} k={k} x={x}");
            }
            let gens = ideal.min_ideal_generators();
            for (i, &g) in gens.iter().enumerate() {
                assert!(gens[..i].iter().all(|&h| !s.contains(g - h)), "{s} k={k}");
            }
            if k >= c {
                assert_eq!(gens.len() as u64, s.multiplicity());
            }
            let q = ReesQuotient::cut(&s, k).unwrap();
            let expected: Vec<u64> = (1..k).filter(|&x| s.contains(x)).collect();
            assert_eq!(q.finite_part(), expected.as_slice());
        }
    }
}

#[test]
fn conductor_class_formula() {
    for s in semigroups_up_to(10).into_iter().filter(|s| s.conductor() > s.multiplicity()) {
        let q = ReesQuotient::at_conductor(&s).unwrap();
        let (m, c) = (s.multiplicity(), s.conductor());
        let least = (1..).find(|k| k * m >= c).unwrap() as usize;
        assert_eq!(nilpotency_class(q.table()).unwrap(), least, "{s}");
        assert_eq!(power_layer(q.table(), least), BTreeSet::from([q.table().zero()]));
        assert!(power_layer(q.table(), least - 1).len() > 1);
    }
}

#[test]
fn quotient_tables_are_commutative_nilpotent_and_cancellative() {
    for s in semigroups_up_to(8).into_iter().filter(|s| !s.is_naturals()) {
        for k in s.multiplicity() + 1..=s.conductor() + 2 {
            let q = ReesQuotient::cut(&s, k).unwrap();
            let t = q.table();
            assert!(t.is_commutative());
            assert!(nilpotent_by_powers(t) && nilpotent_by_idempotents(t));
            assert!(rqns::quotient::cancellation_holds(t).is_ok());
            for (i, &a) in q.finite_part().iter().enumerate() {
                for (j, &b) in q.finite_part().iter().enumerate() {
                    let expected = q.index_of_value(a + b).unwrap_or(t.zero());
                    assert_eq!(t.mul(i, j), expected);
                }
            }
            let gens: Vec<u64> = minimal_generating_system(t).iter().map(|&i| q.finite_part()[i]).collect();
            let indecomposable: Vec<u64> = q
                .finite_part()
                .iter()
                .copied()
                .filter(|&x| !q.finite_part().iter().any(|&a| a < x && s.contains(x - a)))
                .collect();
            assert_eq!(gens, indecomposable, "{s} k={k}");
        }
    }
}

#[test]
fn conductor_normalization_preserves_quotient() {
    for s in semigroups_up_to(6).into_iter().filter(|s| !s.is_naturals()) {
        for k in 2..=s.conductor() + 4 {
            if Ideal::cutting(&s, k).is_err() {
                continue;
            }
            let t = conductor_normalize(&s, k).unwrap();
            let a = ReesQuotient::cut(&s, k).unwrap();
            let b = ReesQuotient::at_conductor(&t).unwrap();
            assert!(!quotient_isomorphisms(&a, &b).unwrap().is_empty(), "{s} k={k} T={t}");
        }
    }
    let s = NumericalSemigroup::from_generators(&[3, 5]).unwrap();
    assert_eq!(conductor_normalize(&s, 10).unwrap().small_element_notation(), "{6,10,12,16,18,20^>}");
    assert_eq!(conductor_normalize(&s, s.conductor()).unwrap(), s);
}

#[test]
fn minimal_presentations_hold_and_respect_bound() {
    for s in semigroups_up_to(12) {
        let p = minimal_presentation(&s);
        let gens = s.min_generators();
        for (u, v) in &p.relations {
            assert_eq!(u.evaluate(gens), v.evaluate(gens), "{s}");
        }
        assert!(p.zero_relations.is_empty());
        let (m, e) = (s.multiplicity() as i64, s.embedding_dimension() as i64);
        if e >= 2 {
            let bound = (2 * m - e + 1) * (e - 2) / 2 + 1;
            assert!(p.relation_count() as i64 <= bound, "{s}: {} > {bound}", p.relation_count());
        } else {
            assert_eq!(p.relation_count(), 0);
        }
    }
}

#[test]
fn presented_semigroups_match_quotients() {
    for s in semigroups_up_to(8).into_iter().filter(|s| s.conductor() > s.multiplicity()) {
        let q = ReesQuotient::at_conductor(&s).unwrap();
        let full = quotient_presentation(&s, q.ideal()).unwrap();
        let reduced = reduced_quotient_presentation(&s, q.ideal()).unwrap();
        let a = semigroup_from_presentation(&full, 4 * q.len()).unwrap();
        let b = semigroup_from_presentation(&reduced, 4 * q.len()).unwrap();
        assert_eq!(a.len(), q.len(), "{s}");
        assert!(find_isomorphism(&a, q.table()).unwrap().is_some(), "{s}");
        assert!(find_isomorphism(&a, &b).unwrap().is_some(), "{s}");
    }
}

#[test]
fn generator_search_agrees_with_brute_force() {
    let tables: Vec<FiniteSemigroup> = semigroups_up_to(7)
        .into_iter()
        .filter(|s| s.conductor() > s.multiplicity())
        .map(|s| ReesQuotient::at_conductor(&s).unwrap().into_table())
        .filter(|t| t.len() <= 8)
        .collect();
    for a in &tables {
        for b in &tables {
            let fast = find_isomorphism(a, b).unwrap().is_some();
            let slow = brute_force_isomorphic(a, b).unwrap().is_some();
            assert_eq!(fast, slow);
        }
    }
}
