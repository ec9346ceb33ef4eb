//! Screening candidate (group, stabiliser, order) rows: feasibility of the
//! order, then whether some union of suborbits can be the collinearity
//! neighbourhood of a point, then (for computed actions) whether that union
//! gives a strongly regular graph with the right parameters.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::action::{Action, OrbitalProfile};
use crate::gq::{self, GqError, GqOrder};
use crate::graph::{is_strongly_regular, SimpleGraph};

/// Witness subsets beyond this count leave a row unresolved.
pub const WITNESS_LIMIT: usize = 10_000;

/// Size of the collinearity neighbourhood of a point, `s(t+1)`.
pub fn neighbourhood_target(order: GqOrder) -> Result<u64, GqError> {
    if !order.is_thick() {
        return Err(GqError::NotThick { s: order.s, t: order.t });
    }
    order
        .s
        .checked_mul(order.t + 1)
        .ok_or(GqError::BoundViolated { which: "s(t+1) fits in 64 bits", s: order.s, t: order.t })
}

/// A subset of `values` (each entry used at most once) summing to
/// `target` with as few entries as possible, as a sorted list of values;
/// `None` if there is none.
pub fn subset_sum_feasible(values: &[u64], target: u64) -> Option<Vec<u64>> {
    let t = usize::try_from(target).ok()?;
    // entries larger than the target can never take part
    let items: Vec<usize> = values
        .iter()
        .filter_map(|&v| usize::try_from(v).ok())
        .filter(|&v| v >= 1 && v <= t)
        .collect();
    const NONE: u32 = u32::MAX;
    let mut best = vec![NONE; t + 1];
    best[0] = 0;
    // take[i][s]: item i was used to improve sum s
    let mut take = vec![vec![false; t + 1]; items.len()];
    for (i, &v) in items.iter().enumerate() {
        for s in (v..=t).rev() {
            if best[s - v] != NONE && best[s - v] + 1 < best[s] {
                best[s] = best[s - v] + 1;
                take[i][s] = true;
            }
        }
    }
    if best[t] == NONE {
        return None;
    }
    let mut out = Vec::new();
    let mut s = t;
    for i in (0..items.len()).rev() {
        if s > 0 && take[i][s] {
            out.push(items[i] as u64);
            s -= items[i];
        }
    }
    debug_assert_eq!(s, 0);
    out.sort_unstable();
    Some(out)
}

/// Every index subset of `values` summing to `target`, in lex order of
/// index lists; `None` if there are more than `limit`.
pub fn all_subset_witnesses(values: &[u64], target: u64, limit: usize) -> Option<Vec<Vec<usize>>> {
    fn rec(
        values: &[u64],
        suffix: &[u128],
        i: usize,
        left: u64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> bool {
        if left == 0 {
            if out.len() == limit {
                return false;
            }
            out.push(cur.clone());
            return true;
        }
        if i == values.len() || suffix[i] < left as u128 {
            return true;
        }
        if values[i] <= left {
            cur.push(i);
            let ok = rec(values, suffix, i + 1, left - values[i], cur, out, limit);
            cur.pop();
            if !ok {
                return false;
            }
        }
        rec(values, suffix, i + 1, left, cur, out, limit)
    }
    let mut suffix = vec![0u128; values.len() + 1];
    for i in (0..values.len()).rev() {
        suffix[i] = suffix[i + 1] + values[i] as u128;
    }
    let mut out = Vec::new();
    if target == 0 {
        return Some(vec![Vec::new()]);
    }
    rec(values, &suffix, 0, target, &mut Vec::new(), &mut out, limit).then_some(out)
}

/// Why a row was eliminated. `code()` is the machine-readable tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "kebab-case")]
pub enum Elimination {
    IndexMismatch {
        #[serde(with = "crate::dec")]
        index: BigUint,
        #[serde(with = "crate::dec")]
        points: BigUint,
    },
    NotThick,
    Higman,
    Divisibility,
    SubsetSum { target: u64 },
    NoSelfPairedUnion { target: u64, witnesses: usize },
    NotStronglyRegular { target: u64, witnesses: usize },
}

impl Elimination {
    pub fn code(&self) -> &'static str {
        match self {
            Elimination::IndexMismatch { .. } => "index-mismatch",
            Elimination::NotThick => "not-thick",
            Elimination::Higman => "higman",
            Elimination::Divisibility => "divisibility",
            Elimination::SubsetSum { .. } => "subset-sum",
            Elimination::NoSelfPairedUnion { .. } => "no-self-paired-union",
            Elimination::NotStronglyRegular { .. } => "not-strongly-regular",
        }
    }

    /// 1 = order arithmetic, 2 = subset sum, 3 = orbital graphs.
    pub fn stage(&self) -> u8 {
        match self {
            Elimination::IndexMismatch { .. }
            | Elimination::NotThick
            | Elimination::Higman
            | Elimination::Divisibility => 1,
            Elimination::SubsetSum { .. } => 2,
            Elimination::NoSelfPairedUnion { .. } | Elimination::NotStronglyRegular { .. } => 3,
        }
    }
}

impl fmt::Display for Elimination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elimination::IndexMismatch { index, points } => {
                write!(f, "index-mismatch: index {index} but the order gives {points} points")
            }
            Elimination::SubsetSum { target } => write!(f, "subset-sum: no subset sums to {target}"),
            Elimination::NoSelfPairedUnion { target, witnesses } => {
                write!(f, "no-self-paired-union: none of {witnesses} unions summing to {target} is self-paired")
            }
            Elimination::NotStronglyRegular { target, witnesses } => {
                write!(f, "not-strongly-regular: none of {witnesses} unions summing to {target} gives the SRG")
            }
            other => f.write_str(other.code()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Eliminated { reason: Elimination },
    /// `pending` when the profile is transcribed and the graph test could
    /// not run.
    Survives { pending: bool, witness: Vec<u64> },
    Unresolved { missing: String },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Eliminated { .. } => "eliminated",
            Verdict::Survives { pending: true, .. } => "survives-pending",
            Verdict::Survives { .. } => "survives",
            Verdict::Unresolved { .. } => "unresolved",
        }
    }

    pub fn reason_text(&self) -> String {
        match self {
            Verdict::Eliminated { reason } => reason.to_string(),
            Verdict::Survives { witness, .. } => {
                let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
                format!("witness {{{}}}", w.join(","))
            }
            Verdict::Unresolved { missing } => format!("missing {missing}"),
        }
    }
}

/// Subdegree data behind a row. Computed profiles keep their action so the
/// graph stage can run.
#[derive(Debug, Clone)]
pub enum ProfileData {
    Transcribed(OrbitalProfile),
    Computed { profile: OrbitalProfile, action: Box<Action> },
}

impl ProfileData {
    pub fn profile(&self) -> &OrbitalProfile {
        match self {
            ProfileData::Transcribed(p) => p,
            ProfileData::Computed { profile, .. } => profile,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRow {
    pub group: String,
    pub stabiliser: String,
    #[serde(with = "crate::dec")]
    pub index: BigUint,
    pub order: GqOrder,
    /// `-` when no profile is attached.
    pub profile_ref: String,
}

fn stage_one(row: &CandidateRow) -> Option<Elimination> {
    let order = row.order;
    if !order.is_thick() {
        return Some(Elimination::NotThick);
    }
    let points = gq::point_count(order);
    if points != row.index {
        return Some(Elimination::IndexMismatch { index: row.index.clone(), points });
    }
    if !gq::higman_ok(order).unwrap_or(false) {
        return Some(Elimination::Higman);
    }
    if !gq::divisibility_ok(order).unwrap_or(false) {
        return Some(Elimination::Divisibility);
    }
    None
}

/// Suborbits whose union, with point 0, could be the neighbourhood: unions
/// summing to the target that are closed under pairing.
fn graph_stage(action: &Action, order: GqOrder, target: u64) -> Result<Verdict, String> {
    let suborbits = action.suborbits().map_err(|e| e.to_string())?;
    let lengths: Vec<u64> = suborbits.iter().map(|o| o.len() as u64).collect();
    let Some(witnesses) = all_subset_witnesses(&lengths, target, WITNESS_LIMIT) else {
        return Ok(Verdict::Unresolved { missing: format!("more than {WITNESS_LIMIT} witness subsets") });
    };
    let expected = gq::srg_params(order).map_err(|e| e.to_string())?;
    let mut owner = vec![usize::MAX; action.degree()];
    for (i, o) in suborbits.iter().enumerate() {
        for &x in o {
            owner[x] = i;
        }
    }
    // orbital pairs and the paired suborbit, computed on first use
    let mut orbitals: Vec<Option<(Vec<(usize, usize)>, usize)>> = vec![None; suborbits.len()];
    let mut paired_unions = 0;
    for w in &witnesses {
        for &i in w {
            if orbitals[i].is_none() {
                let (pairs, _) = action.orbital(suborbits[i][0]).map_err(|e| e.to_string())?;
                let partner = pairs.iter().find(|p| p.1 == 0).map(|p| owner[p.0]).expect("orbital meets 0");
                orbitals[i] = Some((pairs, partner));
            }
        }
        if !w.iter().all(|&i| w.contains(&orbitals[i].as_ref().unwrap().1)) {
            continue;
        }
        paired_unions += 1;
        let mut union = SimpleGraph::empty(action.degree());
        for &i in w {
            for &(a, b) in &orbitals[i].as_ref().unwrap().0 {
                union.add_edge(a, b);
            }
        }
        if is_strongly_regular(&union).is_ok_and(|p| p == expected) {
            let mut witness: Vec<u64> = w.iter().map(|&i| lengths[i]).collect();
            witness.sort_unstable();
            return Ok(Verdict::Survives { pending: false, witness });
        }
    }
    let reason = if paired_unions == 0 {
        Elimination::NoSelfPairedUnion { target, witnesses: witnesses.len() }
    } else {
        Elimination::NotStronglyRegular { target, witnesses: witnesses.len() }
    };
    Ok(Verdict::Eliminated { reason })
}

/// First failing stage decides the verdict.
pub fn screen_candidate(row: &CandidateRow, profile: Option<&ProfileData>) -> Verdict {
    if let Some(reason) = stage_one(row) {
        return Verdict::Eliminated { reason };
    }
    let Some(data) = profile else {
        return Verdict::Unresolved { missing: "subdegree profile".into() };
    };
    let target = neighbourhood_target(row.order).expect("thick after stage one");
    let Some(witness) = subset_sum_feasible(&data.profile().subdegrees, target) else {
        return Verdict::Eliminated { reason: Elimination::SubsetSum { target } };
    };
    match data {
        ProfileData::Transcribed(_) => Verdict::Survives { pending: true, witness },
        ProfileData::Computed { action, .. } => {
            graph_stage(action, row.order, target).unwrap_or_else(|e| Verdict::Unresolved { missing: e })
        }
    }
}

/// A row with everything needed for the verdict table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreenedRow {
    #[serde(flatten)]
    pub row: CandidateRow,
    pub provenance: Option<String>,
    pub target: Option<u64>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

pub const TSV_HEADER: &str = "group\tstabiliser\tindex\ts\tt\tprofile_ref";
pub const VERDICT_HEADER: &str = "group\tstabiliser\tindex\ts\tt\tprofile_ref\tprovenance\ttarget\tverdict\treason";

/// Reads a candidate table. Blank lines and `#` comments are skipped; the
/// header line is optional.
pub fn parse_candidates(text: &str) -> Result<Vec<CandidateRow>, String> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') || line == TSV_HEADER {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 6 {
            return Err(format!("line {}: expected 6 tab-separated fields, got {}", lineno + 1, f.len()));
        }
        let num = |s: &str, what: &str| -> Result<u64, String> {
            s.trim().parse().map_err(|_| format!("line {}: bad {what} '{s}'", lineno + 1))
        };
        let index: BigUint =
            f[2].trim().parse().map_err(|_| format!("line {}: bad index '{}'", lineno + 1, f[2]))?;
        rows.push(CandidateRow {
            group: f[0].to_string(),
            stabiliser: f[1].to_string(),
            index,
            order: GqOrder::new(num(f[3], "s")?, num(f[4], "t")?),
            profile_ref: f[5].trim().to_string(),
        });
    }
    Ok(rows)
}

pub fn verdicts_tsv(rows: &[ScreenedRow]) -> String {
    let mut out = String::from(VERDICT_HEADER);
    out.push('\n');
    for r in rows {
        let c = &r.row;
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            c.group,
            c.stabiliser,
            c.index,
            c.order.s,
            c.order.t,
            c.profile_ref,
            r.provenance.as_deref().unwrap_or("-"),
            r.target.map_or("-".to_string(), |t| t.to_string()),
            r.verdict.tag(),
            r.verdict.reason_text(),
        ));
    }
    out
}

/// Screens every row, resolving profile references with `resolve`.
pub fn screen_table(
    rows: &[CandidateRow],
    resolve: &dyn Fn(&str) -> Result<Option<ProfileData>, String>,
) -> Vec<ScreenedRow> {
    rows.iter()
        .map(|row| {
            let target = neighbourhood_target(row.order).ok();
            let (verdict, provenance) = match resolve(&row.profile_ref) {
                Ok(data) => {
                    let prov = data.as_ref().map(|d| d.profile().provenance.to_string());
                    (screen_candidate(row, data.as_ref()), prov)
                }
                Err(e) => match stage_one(row) {
                    Some(reason) => (Verdict::Eliminated { reason }, None),
                    None => (Verdict::Unresolved { missing: e }, None),
                },
            };
            ScreenedRow { row: row.clone(), provenance, target, verdict }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{act, ActionSpec, Provenance};
    use crate::perm::PermGroup;

    const RU: [u64; 11] = [63, 756, 2016, 2016, 2016, 16128, 16128, 21504, 24192, 48384, 55296];
    const A10: [u64; 6] = [20, 60, 80, 160, 240, 384];

    #[test]
    fn targets() {
        assert_eq!(neighbourhood_target(GqOrder::new(57, 57)).unwrap(), 3306);
        assert_eq!(neighbourhood_target(GqOrder::new(9, 3)).unwrap(), 36);
        assert_eq!(neighbourhood_target(GqOrder::new(8, 13)).unwrap(), 112);
        assert!(neighbourhood_target(GqOrder::new(1, 3)).is_err());
    }

    #[test]
    fn subset_sums() {
        assert_eq!(subset_sum_feasible(&RU, 3306), None);
        assert_eq!(subset_sum_feasible(&A10, 112), None);
        assert_eq!(subset_sum_feasible(&A10, 80), Some(vec![80]));
        assert_eq!(subset_sum_feasible(&[14], 6), None);
        assert_eq!(subset_sum_feasible(&[2, 2, 3], 4), Some(vec![2, 2]));
        assert_eq!(subset_sum_feasible(&[2, 3], 4), None);
        assert_eq!(subset_sum_feasible(&[], 0), Some(vec![]));
        assert_eq!(RU.iter().sum::<u64>() + 1, 188500);
    }

    #[test]
    fn witness_enumeration() {
        let w = all_subset_witnesses(&[1, 2, 3, 4], 5, 100).unwrap();
        assert_eq!(w, vec![vec![0, 3], vec![1, 2]]);
        assert!(all_subset_witnesses(&[1; 20], 10, 5).is_none());
    }

    fn row(group: &str, index: u64, s: u64, t: u64) -> CandidateRow {
        CandidateRow {
            group: group.into(),
            stabiliser: "H".into(),
            index: BigUint::from(index),
            order: GqOrder::new(s, t),
            profile_ref: "-".into(),
        }
    }

    #[test]
    fn rudvalis_row() {
        let p = ProfileData::Transcribed(OrbitalProfile::new(188500, RU.to_vec(), Provenance::TranscribedFromAtlas));
        let v = screen_candidate(&row("Ru", 188500, 57, 57), Some(&p));
        assert_eq!(v, Verdict::Eliminated { reason: Elimination::SubsetSum { target: 3306 } });
    }

    #[test]
    fn m11_row() {
        let p = ProfileData::Transcribed(OrbitalProfile::new(2520, vec![110, 330, 495, 1584], Provenance::TranscribedFromPaper));
        let v = screen_candidate(&row("A11", 2520, 11, 19), Some(&p));
        assert_eq!(v, Verdict::Eliminated { reason: Elimination::SubsetSum { target: 220 } });
    }

    #[test]
    fn a9_partitions_not_srg() {
        let a = act(ActionSpec::UniformPartitions { n: 9, a: 3, b: 3 }, &PermGroup::alternating(9)).unwrap();
        let profile = a.subdegrees().unwrap();
        let data = ProfileData::Computed { profile, action: Box::new(a) };
        let v = screen_candidate(&row("A9", 280, 9, 3), Some(&data));
        assert!(
            matches!(v, Verdict::Eliminated { reason: Elimination::NotStronglyRegular { target: 36, .. } }),
            "{v:?}"
        );
    }

    #[test]
    fn duads_survive() {
        // S6 on duads really is GQ(2,2)
        let a = act(ActionSpec::KSubsets { n: 6, k: 2 }, &PermGroup::symmetric(6)).unwrap();
        let profile = a.subdegrees().unwrap();
        let data = ProfileData::Computed { profile, action: Box::new(a) };
        let v = screen_candidate(&row("S6", 15, 2, 2), Some(&data));
        assert_eq!(v, Verdict::Survives { pending: false, witness: vec![6] });
    }

    #[test]
    fn stage_one_reasons() {
        assert_eq!(screen_candidate(&row("X", 15, 2, 2), None), Verdict::Unresolved { missing: "subdegree profile".into() });
        assert!(matches!(
            screen_candidate(&row("X", 16, 2, 2), None),
            Verdict::Eliminated { reason: Elimination::IndexMismatch { .. } }
        ));
        let p = gq::point_count(GqOrder::new(2, 7));
        let r = CandidateRow { index: p, ..row("X", 0, 2, 7) };
        assert_eq!(screen_candidate(&r, None), Verdict::Eliminated { reason: Elimination::Higman });
    }

    #[test]
    fn tsv_round_trip() {
        let text = format!("{TSV_HEADER}\nRu\t2^6:U3(3):2\t188500\t57\t57\tRu\n\n# comment\n");
        let rows = parse_candidates(&text).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].order, GqOrder::new(57, 57));
        assert!(parse_candidates("a\tb\n").is_err());
        assert!(parse_candidates("").unwrap().is_empty());
    }
}
