use num_bigint::BigUint;
use proptest::prelude::*;

use gqscreen::action::{act, ActionSpec, OrbitalProfile, Provenance};
use gqscreen::benson::{benson_consistent, BensonData};
use gqscreen::gq::{self, GqOrder};
use gqscreen::perm::PermGroup;
use gqscreen::screen::{screen_candidate, subset_sum_feasible, CandidateRow, ProfileData, Verdict};

fn brute(values: &[u64], target: u64) -> bool {
    (0u32..1 << values.len())
        .any(|mask| values.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v).sum::<u64>() == target)
}

proptest! {
    #[test]
    fn subset_sum_matches_exhaustive(values in prop::collection::vec(1u64..200, 0..=16), target in 0u64..1500) {
        let dp = subset_sum_feasible(&values, target);
        prop_assert_eq!(dp.is_some(), brute(&values, target));
        if let Some(w) = dp {
            prop_assert_eq!(w.iter().sum::<u64>(), target);
            let mut pool = values.clone();
            for x in w {
                let i = pool.iter().position(|&y| y == x);
                prop_assert!(i.is_some(), "witness uses a value too often");
                pool.swap_remove(i.unwrap());
            }
        }
    }

    #[test]
    fn divisibility_forms_agree(s in 2u64..5000, t in 2u64..5000) {
        let o = GqOrder::new(s, t);
        prop_assert_eq!(gq::divisibility_ok(o).unwrap(), gq::divisibility_ok_alt(o).unwrap());
    }

    #[test]
    fn point_line_duality(s in 1u64..=100, t in 1u64..=100) {
        prop_assert_eq!(gq::point_count(GqOrder::new(s, t)), gq::line_count(GqOrder::new(t, s)));
    }

    #[test]
    fn benson_period(s in 2u64..60, t in 2u64..60, f in 0u64..50, g in 0u64..50) {
        let o = GqOrder::new(s, t);
        let v = gq::point_count(o);
        prop_assume!(BigUint::from(g + s + t) <= v);
        let a = benson_consistent(&BensonData::new(o, f, g).unwrap()).unwrap();
        let b = benson_consistent(&BensonData::new(o, f, g + s + t).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    /// Extra subdegrees can only turn a subset-sum elimination into survival.
    #[test]
    fn screening_is_monotone(
        (s, t) in (2u64..40, 2u64..40).prop_filter("feasible", |&(s, t)| gq::is_feasible(GqOrder::new(s, t))),
        base in prop::collection::vec(1u64..400, 1..8),
        extra in prop::collection::vec(1u64..400, 1..4),
    ) {
        let order = GqOrder::new(s, t);
        let degree = gq::point_count(order);
        let row = CandidateRow {
            group: "G".into(),
            stabiliser: "H".into(),
            index: degree.clone(),
            order,
            profile_ref: "p".into(),
        };
        let d: u64 = degree.try_into().unwrap();
        let profile = |subs: Vec<u64>| ProfileData::Transcribed(OrbitalProfile::new(d, subs, Provenance::TranscribedFromPaper));
        let before = screen_candidate(&row, Some(&profile(base.clone())));
        let mut more = base.clone();
        more.extend(extra);
        let after = screen_candidate(&row, Some(&profile(more)));
        if let Verdict::Eliminated { reason } = &before {
            prop_assert_eq!(reason.stage(), 2);
            match &after {
                Verdict::Eliminated { reason } => prop_assert_eq!(reason.stage(), 2),
                Verdict::Survives { pending, .. } => prop_assert!(*pending),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }
    }
}

#[test]
fn enumerate_contains_every_feasible_order() {
    for s in 2..=100 {
        for t in 2..=100 {
            let o = GqOrder::new(s, t);
            if gq::is_feasible(o) {
                assert!(gq::enumerate_orders(&gq::point_count(o)).contains(&o), "{o}");
                assert!(gq::useful_bounds(o).is_ok(), "{o}");
            }
        }
    }
}

#[test]
fn srg_feasible_whenever_divisible() {
    for s in 2..=100 {
        for t in 2..=100 {
            let o = GqOrder::new(s, t);
            if gq::divisibility_ok(o).unwrap() {
                assert!(gq::srg_params(o).is_ok(), "{o}");
            }
        }
    }
}

/// Orbit counting from stabiliser generators against orbits of the group
/// on ordered pairs, over small subset and partition actions.
#[test]
fn schreier_and_pair_orbits_agree() {
    for n in 4..=9 {
        for (name, group) in [("S", PermGroup::symmetric(n)), ("A", PermGroup::alternating(n))] {
            let mut specs: Vec<String> = (1..n / 2 + 1).map(|k| format!("subsets:{k}")).collect();
            for a in 2..n {
                if n % a == 0 && n / a >= 2 {
                    specs.push(format!("partitions:{a}x{}", n / a));
                }
            }
            for spec in specs {
                let action = act(ActionSpec::parse(&spec, n).unwrap(), &group).unwrap();
                let profile = action.subdegrees().unwrap();
                assert_eq!(action.subdegrees_by_pair_orbits().unwrap(), profile.subdegrees, "{name}{n} {spec}");
                assert!(profile.sums_to_degree());
            }
        }
    }
}

#[test]
fn alternating_orders() {
    let mut fact = BigUint::from(1u32);
    for n in 1..=12u32 {
        fact *= n;
        if n >= 5 {
            assert_eq!(PermGroup::alternating(n as usize).order().unwrap(), &fact / 2u32);
        }
    }
}

/// The subdegree multiset does not depend on the base point.
#[test]
fn subdegrees_independent_of_base_point() {
    for (group, spec) in [
        (PermGroup::symmetric(7), "subsets:3"),
        (PermGroup::alternating(8), "partitions:2x4"),
        (PermGroup::alternating(9), "partitions:3x3"),
    ] {
        let n = group.degree();
        let action = act(ActionSpec::parse(spec, n).unwrap(), &group).unwrap();
        let want = action.subdegrees().unwrap().subdegrees;
        for p in [1, action.degree() / 2, action.degree() - 1] {
            let stab = action.stabiliser_generators(p, group.generators()).unwrap();
            let mut got: Vec<u64> = action
                .orbits_of(&stab)
                .unwrap()
                .into_iter()
                .filter(|o| !o.contains(&p))
                .map(|o| o.len() as u64)
                .collect();
            got.sort_unstable();
            assert_eq!(got, want, "{spec} at {p}");
        }
    }
}
