use gqscreen::gq::{self, GqOrder};
use gqscreen::graph::is_strongly_regular;
use gqscreen::incidence::{self, axiom_form, graph_form, IncidenceStructure};
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Mutation {
    DropLine(usize),
    /// Replace a point of a line by another point.
    MovePoint { line: usize, slot: usize, to: usize },
    AddLine(Vec<usize>),
    MergeLines(usize, usize),
}

fn mutation(points: usize) -> impl Strategy<Value = Mutation> {
    prop_oneof![
        (0..64usize).prop_map(Mutation::DropLine),
        (0..64usize, 0..8usize, 0..points).prop_map(|(line, slot, to)| Mutation::MovePoint { line, slot, to }),
        prop::collection::btree_set(0..points, 2..5).prop_map(|s| Mutation::AddLine(s.into_iter().collect())),
        (0..64usize, 0..64usize).prop_map(|(a, b)| Mutation::MergeLines(a, b)),
    ]
}

fn apply(base: &IncidenceStructure, muts: &[Mutation]) -> Option<IncidenceStructure> {
    let mut lines: Vec<Vec<usize>> = base.lines().to_vec();
    for m in muts {
        if lines.is_empty() {
            return None;
        }
        let n = lines.len();
        match m {
            Mutation::DropLine(i) => {
                lines.remove(i % n);
            }
            Mutation::MovePoint { line, slot, to } => {
                let l = &mut lines[line % n];
                let k = slot % l.len();
                l[k] = *to;
            }
            Mutation::AddLine(l) => lines.push(l.clone()),
            Mutation::MergeLines(a, b) => {
                let (a, b) = (a % n, b % n);
                if a != b {
                    let extra = lines[b].clone();
                    lines[a].extend(extra);
                    lines[a].sort_unstable();
                    lines[a].dedup();
                    lines.remove(b);
                }
            }
        }
    }
    IncidenceStructure::new(base.point_count(), lines).ok()
}

fn base(kind: u8) -> IncidenceStructure {
    match kind {
        0 => incidence::build_w2(),
        1 => incidence::dual(&incidence::build_w2()).unwrap(),
        2 => IncidenceStructure::grid(3, 3).unwrap(),
        _ => IncidenceStructure::grid(3, 4).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn axiom_and_graph_forms_agree(kind in 0u8..4, muts in prop::collection::vec(mutation(15), 0..4)) {
        let b = base(kind);
        let muts: Vec<Mutation> = muts
            .into_iter()
            .map(|m| match m {
                Mutation::MovePoint { line, slot, to } => Mutation::MovePoint { line, slot, to: to % b.point_count() },
                Mutation::AddLine(l) => Mutation::AddLine(l.into_iter().filter(|&p| p < b.point_count()).collect()),
                other => other,
            })
            .collect();
        if let Some(st) = apply(&b, &muts) {
            prop_assert_eq!(axiom_form(&st).is_ok(), graph_form(&st).is_ok(), "{:?}", muts);
            if muts.is_empty() {
                prop_assert!(axiom_form(&st).is_ok());
            }
        }
    }
}

#[test]
fn unmutated_bases() {
    assert_eq!(incidence::validate_gq(&base(0)), Ok(GqOrder::new(2, 2)));
    assert_eq!(incidence::validate_gq(&base(1)), Ok(GqOrder::new(2, 2)));
    // grids pass both forms but are thin
    for k in [2, 3] {
        assert!(axiom_form(&base(k)).is_ok() && graph_form(&base(k)).is_ok());
        assert!(incidence::validate_gq(&base(k)).is_err());
    }
}

#[test]
fn w2_srg_matches_formula() {
    let w2 = incidence::build_w2();
    let measured = is_strongly_regular(&incidence::collinearity_graph(&w2)).unwrap();
    assert_eq!(measured, gq::srg_params(GqOrder::new(2, 2)).unwrap());
}

#[test]
fn w2_is_self_dual() {
    let w2 = incidence::build_w2();
    let d = incidence::dual(&w2).unwrap();
    assert!(incidence::find_isomorphism(&w2, &d).unwrap().is_some());
}

#[test]
fn json_round_trip() {
    let w2 = incidence::build_w2();
    let text = serde_json::to_string(&w2).unwrap();
    let back: IncidenceStructure = serde_json::from_str(&text).unwrap();
    assert_eq!(back, w2);
    assert!(serde_json::from_str::<IncidenceStructure>(r#"{"points":3,"lines":[[0,5]]}"#).is_err());
}
