//! The full reproduction suite: a fixed manifest of checks, each producing
//! a status, a one-line summary, notes and (for table checks) a diff.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use similar::TextDiff;

use crate::action::{act, ActionSpec, OrbitalProfile};
use crate::benson::{benson_consistent, BensonData};
use crate::casework::{self, ThresholdStatus};
use crate::data::{self, DataSource};
use crate::gq::{self, GqOrder};
use crate::graph::is_strongly_regular;
use crate::incidence::{self, FixedSubstructureClass};
use crate::perm::GroupSpec;
use crate::screen::{self, Elimination, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Discrepancy,
    Fail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Discrepancy => "DISCREPANCY",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub produced: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
}

impl Outcome {
    fn new(ok: bool, summary: impl Into<String>) -> Self {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            summary: summary.into(),
            notes: Vec::new(),
            produced: None,
            expected: None,
            diff: None,
        }
    }

    fn fail(summary: impl Into<String>) -> Self {
        Outcome::new(false, summary)
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

/// Compares a produced table with the expected file, byte for byte.
fn table_outcome(what: &str, produced: String, expected: String) -> Outcome {
    let same = produced == expected;
    let rows = produced.lines().filter(|l| !l.is_empty()).count().saturating_sub(1);
    let mut o = Outcome::new(
        same,
        if same {
            format!("{what}: {rows} rows, identical to the expected table")
        } else {
            format!("{what}: differs from the expected table")
        },
    );
    if !same {
        let diff = TextDiff::from_lines(&expected, &produced)
            .unified_diff()
            .context_radius(2)
            .header("expected", "produced")
            .to_string();
        o.diff = Some(diff);
    }
    o.produced = Some(produced);
    o.expected = Some(expected);
    o
}

pub struct Ctx {
    pub data: DataSource,
}

impl Ctx {
    fn read(&self, name: &str) -> Result<String, String> {
        self.data.read(name).map_err(|e| e.to_string())
    }
}

type CheckFn = fn(&Ctx) -> Result<Outcome, String>;

pub struct Check {
    pub name: &'static str,
    /// Acceptance criterion covered, 0 for supporting checks.
    pub criterion: u8,
    run: CheckFn,
}

/// Report order is this order, whatever the selection.
pub const MANIFEST: &[Check] = &[
    Check { name: "data-checksums", criterion: 0, run: data_checksums },
    Check { name: "w2-geometry", criterion: 1, run: w2_geometry },
    Check { name: "w2-automorphisms", criterion: 1, run: w2_automorphisms },
    Check { name: "benson-w2", criterion: 1, run: benson_w2 },
    Check { name: "subdegrees-partitions-2x5", criterion: 2, run: subdegrees_2x5 },
    Check { name: "subdegrees-a9-3x3", criterion: 2, run: subdegrees_a9 },
    Check { name: "two-point-orbits", criterion: 0, run: two_point_orbits },
    Check { name: "smalldegree-filter", criterion: 3, run: smalldegree_filter },
    Check { name: "screen-tables", criterion: 3, run: screen_tables },
    Check { name: "imprim-enumeration", criterion: 4, run: imprim_enumeration },
    Check { name: "orders-75075", criterion: 4, run: orders_75075 },
    Check { name: "sporadic-table", criterion: 4, run: sporadic_table },
    Check { name: "strange6", criterion: 4, run: strange6 },
    Check { name: "rudvalis", criterion: 4, run: rudvalis },
    Check { name: "threshold-lines-exist", criterion: 5, run: lines_exist },
    Check { name: "threshold-points-off-line", criterion: 5, run: points_off_line },
    Check { name: "threshold-grid-case", criterion: 5, run: grid_case },
    Check { name: "threshold-imprim-bound", criterion: 5, run: imprim_bound },
    Check { name: "wreath", criterion: 5, run: wreath },
    Check { name: "maroti", criterion: 5, run: maroti },
    Check { name: "nagell-ljunggren", criterion: 5, run: nagell_ljunggren },
    Check { name: "intransitive", criterion: 5, run: intransitive },
    Check { name: "coprime-sweep", criterion: 6, run: coprime_sweep },
    Check { name: "divisibility-forms", criterion: 6, run: divisibility_forms },
    Check { name: "subset-sum-oracle", criterion: 6, run: subset_sum_oracle },
    Check { name: "schreier-vs-pairs", criterion: 6, run: schreier_vs_pairs },
    Check { name: "bound-n", criterion: 6, run: bound_n },
    Check { name: "pa-survey", criterion: 6, run: pa_survey },
    Check { name: "profile-sums", criterion: 6, run: profile_sums },
    Check { name: "onan-scott", criterion: 0, run: onan_scott },
];

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub criterion: u8,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub data: String,
    pub checks: Vec<CheckResult>,
    pub counts: BTreeMap<Status, usize>,
    /// Only filled when timings are requested, so reports stay
    /// byte-identical between runs by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, u128>>,
}

/// A check is selected when its name contains one of the tokens, or a
/// token is `criterion:N` for its criterion.
pub fn selected(check: &Check, only: &[String]) -> bool {
    only.is_empty()
        || only.iter().any(|tok| {
            check.name.contains(tok.as_str())
                || tok.strip_prefix("criterion:").is_some_and(|n| n.parse() == Ok(check.criterion))
        })
}

pub fn run(data: DataSource, only: &[String], timings: bool) -> ReportBundle {
    let ctx = Ctx { data };
    // checks are independent; results are collected back in manifest order
    let checks: Vec<CheckResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = MANIFEST
            .iter()
            .filter(|c| selected(c, only))
            .map(|check| {
                let ctx = &ctx;
                let h = scope.spawn(move || {
                    let start = Instant::now();
                    let outcome = (check.run)(ctx).unwrap_or_else(|e| Outcome::fail(format!("error: {e}")));
                    CheckResult { name: check.name, criterion: check.criterion, outcome, elapsed: start.elapsed() }
                });
                (check, h)
            })
            .collect();
        handles
            .into_iter()
            .map(|(check, h)| {
                h.join().unwrap_or_else(|_| CheckResult {
                    name: check.name,
                    criterion: check.criterion,
                    outcome: Outcome::fail("check panicked"),
                    elapsed: Duration::ZERO,
                })
            })
            .collect()
    });
    let mut counts = BTreeMap::new();
    for c in &checks {
        *counts.entry(c.outcome.status).or_insert(0) += 1;
    }
    let timings_ms = timings.then(|| checks.iter().map(|c| (c.name, c.elapsed.as_millis())).collect());
    ReportBundle { data: ctx.data.describe(), checks, counts, timings_ms }
}

impl ReportBundle {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.outcome.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "data: {}", self.data);
        for c in &self.checks {
            let _ = writeln!(out, "{:<12} {:<28} {}", c.outcome.status.label(), c.name, c.outcome.summary);
            if let Some(t) = &self.timings_ms {
                let _ = writeln!(out, "{:<12} {:<28} {} ms", "", "", t[c.name]);
            }
            for n in &c.outcome.notes {
                let _ = writeln!(out, "{:<12} {:<28} note: {n}", "", "");
            }
            if let Some(d) = &c.outcome.diff {
                for line in d.lines() {
                    let _ = writeln!(out, "    | {line}");
                }
            }
        }
        let disc: Vec<&CheckResult> =
            self.checks.iter().filter(|c| c.outcome.status == Status::Discrepancy).collect();
        if !disc.is_empty() {
            let _ = writeln!(out, "discrepancies:");
            for c in disc {
                let _ = writeln!(out, "  {}: {}", c.name, c.outcome.summary);
            }
        }
        let count = |s| self.counts.get(&s).copied().unwrap_or(0);
        let _ = writeln!(
            out,
            "{} checks: {} pass, {} discrepancy, {} fail",
            self.checks.len(),
            count(Status::Pass),
            count(Status::Discrepancy),
            count(Status::Fail)
        );
        out
    }
}

// ---------------------------------------------------------------------------

fn data_checksums(ctx: &Ctx) -> Result<Outcome, String> {
    let report = data::checksum_report(&ctx.data);
    let bad: Vec<String> = report
        .iter()
        .filter(|(_, want, got)| got.as_ref() != Ok(want))
        .map(|(name, _, got)| match got {
            Ok(sum) => format!("{name}: checksum {sum} differs from the recorded one"),
            Err(e) => format!("{name}: {e}"),
        })
        .collect();
    let mut o = Outcome::new(bad.is_empty(), format!("{} files, {} mismatched", report.len(), bad.len()));
    o.notes = bad;
    Ok(o)
}

fn w2_geometry(_: &Ctx) -> Result<Outcome, String> {
    let w2 = incidence::build_w2();
    let order = incidence::validate_gq(&w2).map_err(|e| e.to_string())?;
    let srg = is_strongly_regular(&incidence::collinearity_graph(&w2)).map_err(|w| format!("{w:?}"))?;
    let want = gq::srg_params(GqOrder::new(2, 2)).map_err(|e| e.to_string())?;
    let ok = order == GqOrder::new(2, 2) && srg == want && srg.vklm() == (15, 6, 1, 3);
    Ok(Outcome::new(ok, format!("order {order}, collinearity graph SRG{:?}", srg.vklm())))
}

fn w2_automorphisms(_: &Ctx) -> Result<Outcome, String> {
    let w2 = incidence::build_w2();
    let group = incidence::automorphism_group(&w2).map_err(|e| e.to_string())?;
    let all = incidence::all_automorphisms(&w2, 10_000).map_err(|e| e.to_string())?;
    let ok = group.order == BigUint::from(720u32) && all.len() == 720;
    Ok(Outcome::new(
        ok,
        format!(
            "group order {} from basic orbits {:?}; {} automorphisms enumerated",
            group.order,
            group.basic_orbit_lengths.iter().filter(|&&l| l > 1).collect::<Vec<_>>(),
            all.len()
        ),
    ))
}

fn benson_w2(_: &Ctx) -> Result<Outcome, String> {
    let w2 = incidence::build_w2();
    let order = GqOrder::new(2, 2);
    let all = incidence::all_automorphisms(&w2, 10_000).map_err(|e| e.to_string())?;
    let mut classes: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut bad = Vec::new();
    for aut in &all {
        let (f, g) = incidence::fixed_point_statistics(&w2, aut);
        let data = BensonData::new(order, f, g).map_err(|e| e.to_string())?;
        if !benson_consistent(&data).map_err(|e| e.to_string())? {
            bad.push(format!("f={f}, g={g} breaks the congruence"));
        }
        match incidence::classify_fixed(&w2, aut) {
            Ok(c) => *classes.entry(c.tag()).or_insert(0) += 1,
            Err(e) => bad.push(e.to_string()),
        }
    }
    // the identity fixes everything and is the one improper subquadrangle
    let identity_ok = matches!(
        incidence::classify_fixed(&w2, &incidence::GeometryAutomorphism::identity(&w2)),
        Ok(FixedSubstructureClass::Subquadrangle { proper: false, .. })
    );
    let hist: Vec<String> = classes.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut o = Outcome::new(
        bad.is_empty() && all.len() == 720 && identity_ok,
        format!("{} automorphisms satisfy the congruence and classify: {}", all.len(), hist.join(", ")),
    );
    o.notes = bad.into_iter().take(10).collect();
    Ok(o)
}

fn profile_of(group: &str, action: &str) -> Result<(crate::action::Action, OrbitalProfile), String> {
    let g = GroupSpec::parse(group).and_then(|g| g.build()).map_err(|e| e.to_string())?;
    let spec = ActionSpec::parse(action, g.degree()).map_err(|e| e.to_string())?;
    let a = act(spec, &g).map_err(|e| e.to_string())?;
    let p = a.subdegrees().map_err(|e| e.to_string())?;
    Ok((a, p))
}

fn subdegrees_2x5(_: &Ctx) -> Result<Outcome, String> {
    let want = [20, 60, 80, 160, 240, 384];
    let mut parts = Vec::new();
    let mut ok = true;
    for g in ["A10", "S10"] {
        let (_, p) = profile_of(g, "partitions:2x5")?;
        ok &= p.degree == 945 && p.subdegrees == want;
        parts.push(format!("{g}: {:?}", p.subdegrees));
    }
    Ok(Outcome::new(ok, format!("degree 945; {}", parts.join("; "))))
}

fn subdegrees_a9(_: &Ctx) -> Result<Outcome, String> {
    let (a, p) = profile_of("A9", "partitions:3x3")?;
    let sub = a.suborbits().map_err(|e| e.to_string())?;
    let Some(o36) = sub.iter().find(|o| o.len() == 36) else {
        return Ok(Outcome::fail(format!("no suborbit of length 36 in {:?}", p.subdegrees)));
    };
    let g = a.orbital_graph(o36[0]).map_err(|e| e.to_string())?;
    let diameter = g.diameter();
    let srg = is_strongly_regular(&g);
    let ok = p.degree == 280 && diameter == Some(2) && srg.is_err();
    Ok(Outcome::new(
        ok,
        format!(
            "degree 280, subdegrees {:?}; the 36-orbital graph has diameter {} and is {}",
            p.subdegrees,
            diameter.map_or("infinite".into(), |d| d.to_string()),
            if srg.is_ok() { "strongly regular" } else { "not strongly regular" }
        ),
    ))
}

fn two_point_orbits(_: &Ctx) -> Result<Outcome, String> {
    let cases: [(&str, &str, &str, &str, &[u64]); 4] = [
        ("PSL2:19", "projline", "0", "inf", &[9, 9]),
        ("PGL2:19", "projline", "0", "inf", &[18]),
        ("S6", "natural", "0", "1", &[4]),
        ("A20", "natural", "0", "1", &[18]),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (g, act_spec, p, q, want) in cases {
        let (a, _) = profile_of(g, act_spec)?;
        let (p, q) = (a.parse_point(p).map_err(|e| e.to_string())?, a.parse_point(q).map_err(|e| e.to_string())?);
        let got = a.two_point_stabiliser_orbits(p, q).map_err(|e| e.to_string())?;
        ok &= got == want;
        parts.push(format!("{g}: {got:?}"));
    }
    Ok(Outcome::new(ok, format!("nontrivial two-point stabiliser orbits: {}", parts.join("; "))))
}

fn smalldegree_filter(ctx: &Ctx) -> Result<Outcome, String> {
    let rows = casework::parse_table4(&ctx.read("table4_groups.tsv")?).map_err(|e| e.to_string())?;
    let out = casework::smalldegree_filter(&rows);
    let mut o = table_outcome(
        &format!("{} subgroup pairs filtered", rows.len()),
        casework::smalldegree_tsv(&out.kept),
        ctx.read("expected_smalldegree.tsv")?,
    );
    if !out.unresolved.is_empty() {
        o.status = Status::Fail;
        o.notes.extend(out.unresolved.iter().map(|u| format!("unresolved: {u}")));
    }
    Ok(o)
}

/// Every bundled candidate table, screened in order, as one verdict table.
pub fn screen_bundled(src: &DataSource) -> Result<Vec<screen::ScreenedRow>, String> {
    let mut all = Vec::new();
    for name in ["candidates_smalldegree.tsv", "candidates_sporadic.tsv", "candidates_imprimitive.tsv"] {
        let rows = screen::parse_candidates(&src.read(name).map_err(|e| e.to_string())?)?;
        all.extend(screen::screen_table(&rows, &|r| data::resolve_profile(src, r)));
    }
    Ok(all)
}

fn screen_tables(ctx: &Ctx) -> Result<Outcome, String> {
    let rows = screen_bundled(&ctx.data)?;
    let mut o = table_outcome("verdicts", screen::verdicts_tsv(&rows), ctx.read("expected_screen.tsv")?);
    let subset_target = |r: &screen::ScreenedRow| match &r.verdict {
        Verdict::Eliminated { reason: Elimination::SubsetSum { target } } => Some(*target),
        _ => None,
    };
    let small: Vec<Option<u64>> =
        rows.iter().filter(|r| r.row.group.starts_with(['A', 'S']) && r.row.profile_ref != "-")
            .filter(|r| !r.row.profile_ref.starts_with("action:"))
            .map(subset_target)
            .collect();
    let ru: Vec<Option<u64>> = rows.iter().filter(|r| r.row.group == "Ru").map(subset_target).collect();
    let want_small = [6, 6, 220, 220, 220, 220].map(Some);
    if small != want_small || ru != [Some(3306)] {
        o.status = Status::Fail;
        o.notes.push(format!("subset-sum targets: small degree {small:?}, Ru {ru:?}"));
    } else {
        o.summary.push_str("; small-degree targets 6/6/220/220/220/220 and Ru 3306 eliminated by subset sum");
    }
    Ok(o)
}

fn imprim_enumeration(_: &Ctx) -> Result<Outcome, String> {
    let rows = casework::imprim_enumeration(36, false).map_err(|e| e.to_string())?;
    let got: Vec<(u64, u64, u64, u64, u64)> = rows.iter().map(|r| (r.n, r.s, r.t, r.a, r.b)).collect();
    let want = vec![(6, 2, 2, 2, 3), (9, 9, 3, 3, 3), (10, 8, 13, 2, 5), (16, 76, 449, 4, 4)];
    let wider = casework::imprim_enumeration(36, true).map_err(|e| e.to_string())?;
    let extra: Vec<String> = wider
        .iter()
        .filter(|r| !rows.contains(r))
        .map(|r| format!("({},{},{},{},{})", r.n, r.s, r.t, r.a, r.b))
        .collect();
    let feasible = rows.iter().all(|r| gq::is_feasible(GqOrder::new(r.s, r.t)));
    let superset = rows.iter().all(|r| wider.contains(r));
    Ok(Outcome::new(got == want && feasible && superset, format!("(n,s,t,a,b) = {got:?}"))
        .note(format!("with b = 2 allowed the extra rows are: {}", if extra.is_empty() { "none".into() } else { extra.join(", ") })))
}

fn orders_75075(_: &Ctx) -> Result<Outcome, String> {
    let o = gq::enumerate_orders(&BigUint::from(75075u32));
    let st1 = 76u64 * 449 + 1;
    Ok(Outcome::new(o.is_empty() && st1 < 75075, format!("feasible orders on 75075 points: {o:?}; st+1 = {st1} < 75075")))
}

fn sporadic_table(ctx: &Ctx) -> Result<Outcome, String> {
    let rows = casework::parse_sporadic(&ctx.read("sporadic_maximal_indices.tsv")?).map_err(|e| e.to_string())?;
    let t5 = casework::sporadic_filter(&rows);
    Ok(table_outcome(
        &format!("{} maximal subgroups scanned", rows.len()),
        casework::table5_tsv(&t5),
        ctx.read("expected_table5.tsv")?,
    ))
}

fn strange6(_: &Ctx) -> Result<Outcome, String> {
    let r = casework::strange6_check();
    let admissible: Vec<(u64, Vec<GqOrder>)> = r.into_iter().filter(|(_, o)| !o.is_empty()).collect();
    let ok = admissible == vec![(45, vec![GqOrder::new(4, 2)])];
    let text: Vec<String> = admissible
        .iter()
        .map(|(i, o)| format!("{i} -> {}", o.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    Ok(Outcome::new(ok, format!("of indices 45, 36, 10 only {} admits an order", text.join(", "))))
}

fn rudvalis(ctx: &Ctx) -> Result<Outcome, String> {
    let rows = casework::parse_sporadic(&ctx.read("sporadic_maximal_indices.tsv")?).map_err(|e| e.to_string())?;
    let t5 = casework::sporadic_filter(&rows);
    let Some(screen::ProfileData::Transcribed(p)) = data::resolve_profile(&ctx.data, "ru")? else {
        return Err("profile 'ru' missing".into());
    };
    let rep = casework::rudvalis_elimination(&t5, &p);
    let ok = rep.dual_pairs == vec![("Ru".to_string(), GqOrder::new(57, 57))]
        && rep.profile_total == 188500
        && rep.degree == 188500
        && rep.verdict == Verdict::Eliminated { reason: Elimination::SubsetSum { target: 3306 } };
    Ok(Outcome::new(
        ok,
        format!(
            "self-dual rows {}; 1 + sum = {}; verdict {}",
            rep.dual_pairs.iter().map(|(g, o)| format!("{g} {o}")).collect::<Vec<_>>().join(", "),
            rep.profile_total,
            rep.verdict.reason_text()
        ),
    ))
}

fn threshold_outcome(ts: Vec<casework::Threshold>) -> Outcome {
    let mut worst = Status::Pass;
    let mut parts = Vec::new();
    let mut notes = Vec::new();
    for t in &ts {
        let (st, tag) = match t.status() {
            ThresholdStatus::Match => (Status::Pass, "match"),
            ThresholdStatus::Discrepancy { note } => {
                notes.push(format!("discrepancy: {note}"));
                (Status::Discrepancy, "discrepancy")
            }
            ThresholdStatus::Mismatch { note } => {
                notes.push(format!("mismatch: {note}"));
                (Status::Fail, "mismatch")
            }
        };
        worst = worst.max(st);
        let show = |x: Option<u64>| x.map_or("none".into(), |n| n.to_string());
        parts.push(format!("{} {} (quoted {}, {tag})", t.class, show(t.computed), show(t.quoted)));
    }
    let mut o = Outcome::new(true, parts.join("; "));
    o.status = worst;
    o.notes = notes;
    o
}

fn lines_exist(_: &Ctx) -> Result<Outcome, String> {
    Ok(threshold_outcome(casework::lines_exist_thresholds()))
}

fn points_off_line(_: &Ctx) -> Result<Outcome, String> {
    Ok(threshold_outcome(casework::points_off_line_thresholds()))
}

fn grid_case(_: &Ctx) -> Result<Outcome, String> {
    Ok(threshold_outcome(vec![casework::grid_case_bound()]))
}

fn imprim_bound(_: &Ctx) -> Result<Outcome, String> {
    Ok(threshold_outcome(casework::imprim_bound_thresholds()))
}

fn wreath(_: &Ctx) -> Result<Outcome, String> {
    let got = casework::wreath_check();
    let ok = got == vec![casework::WreathCandidate { m: 5, k: 2 }];
    let text: Vec<String> = got.iter().map(|w| format!("({},{})", w.m, w.k)).collect();
    Ok(Outcome::new(ok, format!("pairs with (m!)^(6k)(k!)^6 >= (m^k)!/2: {}", text.join(", "))))
}

fn maroti(_: &Ctx) -> Result<Outcome, String> {
    let n0 = casework::maroti_bound_check();
    let spot47 = !casework::maroti_holds(47, 6);
    let spot107 = casework::maroti_holds(107, 12);
    Ok(Outcome::new(
        n0 == 48 && spot47 && spot107,
        format!("sixth-power bound holds for all n in [{n0}, {}]; fails at 47: {spot47}; twelfth power holds at 107: {spot107}", casework::MAROTI_SCAN_MAX),
    ))
}

fn nagell_ljunggren(_: &Ctx) -> Result<Outcome, String> {
    let got = gq::nagell_ljunggren_scan(100_000);
    let want = vec![(7, BigUint::from(20u32), 2)];
    let text: Vec<String> = got.iter().map(|(s, d, k)| format!("(s={s}, delta={d}, k={k})")).collect();
    Ok(Outcome::new(got == want, format!("perfect powers (s+1)(s^2+1) with s <= 100000: {}", text.join(", "))))
}

fn intransitive(_: &Ctx) -> Result<Outcome, String> {
    let got = casework::intransitive_final_check();
    let c62 = gq::point_count(GqOrder::new(2, 2)) == crate::arith::binomial(6, 2);
    Ok(Outcome::new(got == vec![2] && c62, format!("k with C(3k,k) <= 27: {got:?}; C(6,2) = 15 points of order (2,2)")))
}

fn coprime_sweep(_: &Ctx) -> Result<Outcome, String> {
    let got = gq::coprime_sweep(200);
    Ok(Outcome::new(got.is_empty(), format!("nested coprime feasible orders with s,t <= 200: {}", got.len())))
}

fn divisibility_forms(_: &Ctx) -> Result<Outcome, String> {
    let mut disagree = Vec::new();
    for s in 2..=300 {
        for t in 2..=300 {
            let o = GqOrder::new(s, t);
            if gq::divisibility_ok(o).map_err(|e| e.to_string())? != gq::divisibility_ok_alt(o).map_err(|e| e.to_string())? {
                disagree.push(o);
            }
        }
    }
    Ok(Outcome::new(disagree.is_empty(), format!("two divisibility forms agree on s,t <= 300 ({} disagreements)", disagree.len())))
}

/// Exhaustive oracle over all `2^m` subsets.
fn subset_sum_brute(values: &[u64], target: u64) -> bool {
    let m = values.len();
    (0u32..1 << m).any(|mask| (0..m).filter(|i| mask >> i & 1 == 1).map(|i| values[i]).sum::<u64>() == target)
}

fn subset_sum_oracle(ctx: &Ctx) -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_100_101);
    let mut cases: Vec<(Vec<u64>, u64)> = Vec::new();
    for name in data::FILES.iter().map(|(n, _)| *n).filter(|n| n.starts_with("profiles/")) {
        let stem = name.trim_start_matches("profiles/").trim_end_matches(".json");
        if let Some(p) = data::resolve_profile(&ctx.data, stem)? {
            let sub = p.profile().subdegrees.clone();
            for target in [6, 220, 3306, 112, 36] {
                cases.push((sub.clone(), target));
            }
            for _ in 0..20 {
                let t: u64 = sub.iter().filter(|_| rng.gen_bool(0.5)).sum();
                cases.push((sub.clone(), t + rng.gen_range(0..2)));
            }
        }
    }
    for _ in 0..400 {
        let m = rng.gen_range(0..=20);
        let values: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=60)).collect();
        let total: u64 = values.iter().sum();
        cases.push((values, rng.gen_range(0..=total + 2)));
    }
    let mut bad = Vec::new();
    for (values, target) in &cases {
        let dp = screen::subset_sum_feasible(values, *target);
        let brute = subset_sum_brute(values, *target);
        let witness_ok = dp.as_ref().is_none_or(|w| w.iter().sum::<u64>() == *target);
        if dp.is_some() != brute || !witness_ok {
            bad.push(format!("{values:?} -> {target}"));
        }
    }
    let mut o = Outcome::new(bad.is_empty(), format!("{} instances with at most 20 entries agree with exhaustive search", cases.len()));
    o.notes = bad.into_iter().take(5).collect();
    Ok(o)
}

/// Transitive actions of degree at most 10^4 compared by both methods.
pub const SCHREIER_CASES: &[(&str, &str)] = &[
    ("A7", "natural"),
    ("S6", "subsets:2"),
    ("A6", "partitions:2x3"),
    ("A8", "partitions:2x4"),
    ("S8", "subsets:3"),
    ("S9", "subsets:2"),
    ("A9", "partitions:3x3"),
    ("A10", "partitions:2x5"),
    ("S10", "partitions:2x5"),
    ("A11", "subsets:4"),
    ("S12", "subsets:4"),
    ("S14", "subsets:4"),
    ("A12", "partitions:4x3"),
    ("PSL2:13", "projline"),
    ("PSL2:19", "projline"),
    ("PGL2:19", "projline"),
];

fn schreier_vs_pairs(_: &Ctx) -> Result<Outcome, String> {
    let mut bad = Vec::new();
    let mut max_degree = 0;
    for (g, a) in SCHREIER_CASES {
        let (action, p) = profile_of(g, a)?;
        let pairs = action.subdegrees_by_pair_orbits().map_err(|e| e.to_string())?;
        max_degree = max_degree.max(action.degree());
        if pairs != p.subdegrees {
            bad.push(format!("{g} on {a}: {:?} vs {pairs:?}", p.subdegrees));
        }
    }
    let mut o = Outcome::new(
        bad.is_empty(),
        format!("{} actions up to degree {max_degree} agree", SCHREIER_CASES.len()),
    );
    o.notes = bad;
    Ok(o)
}

fn bound_n(_: &Ctx) -> Result<Outcome, String> {
    let v = casework::bound_n_verify(200).map_err(|e| e.to_string())?;
    Ok(Outcome::new(v.is_empty(), format!("violations of n!/((a!)^b b!) >= (11/5)^n for 16 <= n <= 200: {v:?}")))
}

fn pa_survey(_: &Ctx) -> Result<Outcome, String> {
    let rows = casework::pa_survey(100).map_err(|e| e.to_string())?;
    let high = rows.iter().filter(|r| r.k >= 4).count();
    let has_20 = rows.contains(&casework::PaCandidate { delta: 20, k: 2, s: 7, t: 7 });
    Ok(Outcome::new(
        high == 0 && has_20,
        format!("{} entries with delta <= 100, k <= 8; {high} with k >= 4; (delta=20, k=2, 7, 7) present: {has_20}", rows.len()),
    ))
}

fn profile_sums(ctx: &Ctx) -> Result<Outcome, String> {
    let mut bad = Vec::new();
    let mut n = 0;
    for (g, a) in SCHREIER_CASES {
        let (_, p) = profile_of(g, a)?;
        n += 1;
        if !p.sums_to_degree() {
            bad.push(format!("{g} on {a}"));
        }
    }
    for name in data::FILES.iter().map(|(n, _)| *n).filter(|n| n.starts_with("profiles/")) {
        let stem = name.trim_start_matches("profiles/").trim_end_matches(".json");
        if let Some(p) = data::resolve_profile(&ctx.data, stem)? {
            n += 1;
            if !p.profile().sums_to_degree() {
                bad.push(name.to_string());
            }
        }
    }
    let mut o = Outcome::new(bad.is_empty(), format!("1 + sum of subdegrees = degree for {n} profiles"));
    o.notes = bad;
    Ok(o)
}

fn onan_scott(_: &Ctx) -> Result<Outcome, String> {
    use casework::OnanScott::*;
    let t = casework::onan_scott_tables();
    let ok = casework::two_actions(HA) == [HA] && casework::two_actions(SD) == [TW, SD, PA] && t.survivors == [(AS, AS)];
    Ok(Outcome::new(ok, format!("surviving point/line types: {:?}", t.survivors)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        let benson = MANIFEST.iter().find(|c| c.name == "benson-w2").unwrap();
        assert!(selected(benson, &[]));
        assert!(selected(benson, &["benson".into()]));
        assert!(selected(benson, &["criterion:1".into()]));
        assert!(!selected(benson, &["criterion:2".into()]));
    }

    #[test]
    fn manifest_names_unique() {
        let mut names: Vec<_> = MANIFEST.iter().map(|c| c.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), MANIFEST.len());
    }

    #[test]
    fn corrupted_table_gives_diff() {
        let o = table_outcome("t", "a\nb\n".into(), "a\nc\n".into());
        assert_eq!(o.status, Status::Fail);
        assert!(o.diff.unwrap().contains("-c"));
    }
}
