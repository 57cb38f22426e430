use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;

use rqns::decider::{decide_rqns, default_label_bound, realization_rebuilds};
use rqns::morphism::{automorphism_group, find_isomorphism, is_homomorphism};
use rqns::presentation::{reduced_quotient_presentation, semigroup_from_presentation};
use rqns::quotient::{direct_product, minimal_generating_system, nilpotency_class, quotient_by_congruence};
use rqns::variety::{find_violation, is_nilpotent, nilpotent_by_idempotents, nilpotent_by_powers, separating_index, separation_bound};
use rqns::{FiniteSemigroup, Identity, NumericalSemigroup, Presentation, ReesQuotient};

fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
    prop::collection::vec(2u64..=11, 1..=4)
        .prop_filter("gcd 1", |g| g.iter().fold(0, |a, &b| a.gcd(&b)) == 1)
        .prop_map(|g| NumericalSemigroup::from_generators(&g).unwrap())
}

/// A semigroup with a cut `k` such that `I_k` is proper.
fn cut_quotient() -> impl Strategy<Value = ReesQuotient> {
    (semigroup(), 0u64..12).prop_map(|(s, extra)| {
        let k = s.multiplicity() + 1 + extra % (s.conductor() + 3);
        ReesQuotient::cut(&s, k).unwrap()
    })
}

fn small_cut_quotient() -> impl Strategy<Value = ReesQuotient> {
    cut_quotient().prop_filter("at most 10 elements", |q| q.len() <= 10)
}

fn identity() -> impl Strategy<Value = Identity> {
    (1usize..=3, prop::bool::ANY)
        .prop_flat_map(|(n, zero)| {
            (
                Just(n),
                Just(zero),
                prop::collection::vec(0u32..=3, n),
                prop::collection::vec(0u32..=3, n),
            )
        })
        .prop_filter_map("well-formed nontrivial identity", |(n, zero, u, v)| {
            let vars: Vec<String> = ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect();
            let id = if zero { Identity::zero(vars, u) } else { Identity::equation(vars, u, v) };
            id.ok().filter(|id| !id.is_trivial())
        })
}

/// Index in `quotient` of the class containing element `x` of `q`.
fn projection(q: &FiniteSemigroup, quotient: &FiniteSemigroup) -> Vec<usize> {
    (0..q.len())
        .map(|x| {
            let label = q.label(x);
            (0..quotient.len())
                .find(|&c| {
                    let l = quotient.label(c);
                    l == label || l.trim_matches(|ch| ch == '{' || ch == '}').split(',').any(|m| m == label)
                })
                .unwrap_or(quotient.zero())
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn semigroup_notations_round_trip(s in semigroup()) {
        let by_gens: NumericalSemigroup = s.generator_notation().parse().unwrap();
        let by_smalls: NumericalSemigroup = s.small_element_notation().parse().unwrap();
        prop_assert_eq!(&by_gens, &s);
        prop_assert_eq!(&by_smalls, &s);
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<NumericalSemigroup>(&json).unwrap(), s);
    }

    #[test]
    fn table_json_round_trips(q in cut_quotient()) {
        let json = serde_json::to_string(q.table()).unwrap();
        let back: FiniteSemigroup = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, q.table());
    }

    #[test]
    fn reduced_presentation_round_trips(q in cut_quotient()) {
        let p = reduced_quotient_presentation(q.ambient(), q.ideal()).unwrap();
        let text: Presentation = p.to_string().parse().unwrap();
        prop_assert_eq!(&text, &p);
        let json: Presentation = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(&json, &p);
        let presented = semigroup_from_presentation(&p, 4 * q.len()).unwrap();
        prop_assert_eq!(presented.len(), q.len());
        prop_assert!(find_isomorphism(&presented, q.table()).unwrap().is_some());
    }

    #[test]
    fn automorphisms_form_a_group(q in small_cut_quotient()) {
        let t = q.table();
        let group = automorphism_group(t);
        let set: BTreeSet<Vec<usize>> = group.iter().map(|f| f.assignment.clone()).collect();
        prop_assert!(set.contains(&(0..t.len()).collect::<Vec<_>>()));
        for f in &group {
            prop_assert!(is_homomorphism(&f.assignment, t, t) && f.is_bijective(t.len()));
            prop_assert!(set.contains(&f.inverse().unwrap().assignment));
            for g in &group {
                prop_assert!(set.contains(&f.compose(g).assignment));
            }
        }
    }

    #[test]
    fn congruence_quotients_stay_nilpotent(
        q in cut_quotient(),
        raw in prop::collection::vec((0usize..64, 0usize..64), 0..3),
    ) {
        let t = q.table();
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(a, b)| (a % t.len(), b % t.len())).collect();
        let r = quotient_by_congruence(t, &pairs);
        prop_assert!(r.len() <= t.len() && r.is_commutative());
        let class = is_nilpotent(&r);
        prop_assert!(class.is_some() && class.unwrap() <= nilpotency_class(t).unwrap());
        prop_assert!(nilpotent_by_powers(&r) && nilpotent_by_idempotents(&r));
        let pi = projection(t, &r);
        prop_assert!(is_homomorphism(&pi, t, &r));
        // A surjection carries a generating set onto one containing every
        // minimal generator of the image.
        let images: BTreeSet<usize> = minimal_generating_system(t).iter().map(|&g| pi[g]).collect();
        for g in minimal_generating_system(&r) {
            prop_assert!(images.contains(&g));
        }
        if pairs.is_empty() {
            prop_assert_eq!(&r, t);
        }
    }

    #[test]
    fn nilpotency_tests_agree_on_products(a in small_cut_quotient(), b in small_cut_quotient(), monoid in prop::bool::ANY) {
        let left = if monoid {
            FiniteSemigroup::new(vec!["1".into(), "0".into()], 1, vec![vec![0, 1], vec![1, 1]]).unwrap()
        } else {
            a.table().clone()
        };
        let p = direct_product(&left, b.table());
        prop_assert!(p.is_commutative());
        let class = is_nilpotent(&p);
        prop_assert_eq!(class.is_some(), nilpotent_by_powers(&p));
        prop_assert_eq!(class.is_some(), nilpotent_by_idempotents(&p));
        prop_assert_eq!(class.is_some(), !monoid);
        if !monoid {
            let expected = nilpotency_class(a.table()).unwrap().max(nilpotency_class(b.table()).unwrap());
            prop_assert_eq!(class.unwrap(), expected);
        }
    }

    #[test]
    fn separating_index_is_least(id in identity()) {
        let sep = separating_index(&id).unwrap();
        prop_assert!(sep.r >= 2 && sep.r <= separation_bound(&id));
        for r in 2..sep.r {
            prop_assert!(find_violation(ReesQuotient::naturals_cut(r).unwrap().table(), &id).is_none());
        }
        // Q_r is a quotient of Q_{r+1}, so failures persist upward.
        for r in sep.r..sep.r + 3 {
            prop_assert!(find_violation(ReesQuotient::naturals_cut(r).unwrap().table(), &id).is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quotients_are_recognized(q in small_cut_quotient()) {
        let cert = decide_rqns(q.table(), default_label_bound(q.table()));
        prop_assert!(cert.is_in_class());
        prop_assert!(realization_rebuilds(q.table(), cert.realization.as_ref().unwrap()));
    }
}
