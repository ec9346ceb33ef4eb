//! Exact re-evaluation of the counting bounds, thresholds and table filters
//! used to rule out the alternating and sporadic cases.
//!
//! Every inequality that involves a real root is turned into an integer or
//! rational comparison. Where the original used real arithmetic, each
//! threshold also reports the answer under the floor and ceiling readings
//! of the root, so that boundary effects are visible rather than hidden.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::OrbitalProfile;
use crate::arith::{self, binomial, factorial};
use crate::gq::{self, GqOrder};
use crate::screen::{self, CandidateRow, ProfileData, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseworkError {
    #[error("invalid shape n={n}, a={a}, b={b}: {reason}")]
    InvalidShape { n: u64, a: u64, b: u64, reason: &'static str },
    #[error("ratio table inconsistent at n={n}, a={a}")]
    TableInconsistent { n: u64, a: u64 },
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn rat(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn ratu(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn frac(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn to_biguint(x: &BigRational) -> Option<BigUint> {
    x.is_integer().then(|| x.to_integer().to_biguint()).flatten()
}

/// Floor of the `k`-th root of a non-negative rational.
fn root_floor(x: &BigRational, k: u32) -> BigRational {
    ratu(0) + rat(arith::rational_iroot(x, k))
}

// ---------------------------------------------------------------------------
// Shapes and the ratio table

/// Row class of the ratio table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AClass {
    #[serde(rename = "a>=4")]
    AtLeast4,
    #[serde(rename = "a=3")]
    Three,
    #[serde(rename = "a=2")]
    Two,
}

impl AClass {
    pub fn of(a: u64) -> Option<AClass> {
        match a {
            0 | 1 => None,
            2 => Some(AClass::Two),
            3 => Some(AClass::Three),
            _ => Some(AClass::AtLeast4),
        }
    }
}

impl fmt::Display for AClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AClass::AtLeast4 => "a>=4",
            AClass::Three => "a=3",
            AClass::Two => "a=2",
        })
    }
}

/// A partition of `n = ab` points into `b` blocks of size `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprimitiveShape {
    pub n: u64,
    pub a: u64,
    pub b: u64,
}

impl ImprimitiveShape {
    pub fn new(n: u64, a: u64, b: u64) -> Result<Self, CaseworkError> {
        let bad = |reason| Err(CaseworkError::InvalidShape { n, a, b, reason });
        if a < 2 || b < 2 {
            return bad("need a, b >= 2");
        }
        if a.checked_mul(b) != Some(n) {
            return bad("need n = ab");
        }
        if n < 6 {
            return bad("need n >= 6");
        }
        if a == 2 && b < 3 {
            return bad("a = 2 needs b >= 3");
        }
        Ok(ImprimitiveShape { n, a, b })
    }

    pub fn class(&self) -> AClass {
        AClass::of(self.a).expect("a >= 2")
    }

    /// Number of such partitions, `n!/((a!)^b b!)`.
    pub fn v(&self) -> BigUint {
        partition_count(self.n, self.a)
    }
}

/// `n!/((a!)^b b!)` with `b = n/a`.
pub fn partition_count(n: u64, a: u64) -> BigUint {
    let b = n / a;
    factorial(n) / (factorial(a).pow(b as u32) * factorial(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub v: BigUint,
    pub v1: BigUint,
    pub v2: BigUint,
    /// `v/v'`
    pub r_outer: BigRational,
    /// `v'/v''`
    pub r_inner: BigRational,
}

/// The class formulas for `v/v'` and `v'/v''`.
fn class_ratios(class: AClass, n: u64, a: u64) -> (BigRational, BigRational) {
    match class {
        AClass::AtLeast4 => (frac((n - 1) * (n - 2), (a - 1) * (a - 2)), frac(n - 3, a - 3)),
        AClass::Three => (frac((n - 1) * (n - 2), 2), frac((n - 4) * (n - 5), 2)),
        AClass::Two => (frac((n - 1) * (n - 3), 3), ratu(3 * (n - 5))),
    }
}

fn v_double_prime(class: AClass, n: u64, a: u64, b: u64) -> BigRational {
    let big = |x: BigUint| rat(x);
    match class {
        AClass::AtLeast4 => {
            big(factorial(n - 4))
                / big(factorial(a - 4) * factorial(a).pow((b - 1) as u32) * factorial(b - 1))
        }
        AClass::Three => {
            let m = n / 3 - 2;
            big(factorial(n - 6)) / big(BigUint::from(6u32).pow(m as u32) * factorial(m))
        }
        AClass::Two => {
            let m = n / 2 - 3;
            big(factorial(n - 6)) / big(BigUint::from(2u32).pow(m as u32) * factorial(m))
        }
    }
}

/// `v`, `v'`, `v''` and the two ratios. `v''` comes from its closed form,
/// `v'` from `v''` and the inner ratio; the outer ratio is then checked
/// against `v/v'`.
pub fn ratio_table(shape: ImprimitiveShape) -> Result<RatioRow, CaseworkError> {
    let ImprimitiveShape { n, a, b } = shape;
    let class = shape.class();
    let (r_outer, r_inner) = class_ratios(class, n, a);
    let v = shape.v();
    let v2r = v_double_prime(class, n, a, b);
    let v1r = &v2r * &r_inner;
    let inconsistent = CaseworkError::TableInconsistent { n, a };
    let (Some(v1), Some(v2)) = (to_biguint(&v1r), to_biguint(&v2r)) else {
        return Err(inconsistent);
    };
    if rat(v.clone()) / &v1r != r_outer {
        return Err(inconsistent);
    }
    Ok(RatioRow { v, v1, v2, r_outer, r_inner })
}

/// Factorisations `n = ab` with `a >= 4`, `b >= 3` where
/// `n!/((a!)^b b!) < (11/5)^n`, compared as `5^n n! >= 11^n (a!)^b b!`.
pub fn bound_n_verify(n_max: u64) -> Result<Vec<(u64, u64, u64)>, CaseworkError> {
    if n_max < 16 {
        return Err(CaseworkError::BadRange(format!("n_max must be at least 16, got {n_max}")));
    }
    let mut out = Vec::new();
    for n in 16..=n_max {
        let lhs = BigUint::from(5u32).pow(n as u32) * factorial(n);
        for a in 4..=n / 3 {
            if n % a != 0 {
                continue;
            }
            let b = n / a;
            let rhs = BigUint::from(11u32).pow(n as u32) * factorial(a).pow(b as u32) * factorial(b);
            if lhs < rhs {
                out.push((n, a, b));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Thresholds

/// Scan population for a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanClass {
    /// Every `n >= 12`, the `a = 4` ratios (the largest for `a >= 4`) and
    /// the lower bound `v >= (11/5)^n`.
    #[serde(rename = "a>=4")]
    AtLeast4Bound,
    /// Every divisor `a >= 4` of `n` with `b >= 3`, exact `v`.
    #[serde(rename = "a>=4 divisor-exact")]
    AtLeast4Exact,
    #[serde(rename = "a=3")]
    Three,
    #[serde(rename = "a=2")]
    Two,
    /// Even `n`, the grid comparison.
    #[serde(rename = "grid")]
    Grid,
}

impl fmt::Display for ScanClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanClass::AtLeast4Bound => "a>=4",
            ScanClass::AtLeast4Exact => "a>=4 divisor-exact",
            ScanClass::Three => "a=3",
            ScanClass::Two => "a=2",
            ScanClass::Grid => "grid",
        })
    }
}

/// One point of a scan: `v` (exact or a lower bound) and the three ratios.
#[derive(Debug, Clone)]
pub struct Sample {
    pub n: u64,
    pub a: u64,
    pub v: BigRational,
    /// `v/v''`
    pub r: BigRational,
    /// `v/v'`
    pub r_outer: BigRational,
    /// `v'/v''`
    pub r_inner: BigRational,
}

fn samples(class: ScanClass, n_max: u64) -> Vec<Sample> {
    let mut out = Vec::new();
    let mut push = |n: u64, a: u64, v: BigRational, cls: AClass| {
        let (r_outer, r_inner) = class_ratios(cls, n, a);
        out.push(Sample { n, a, v, r: &r_outer * &r_inner, r_outer, r_inner });
    };
    match class {
        ScanClass::AtLeast4Bound => {
            for n in 12..=n_max {
                push(n, 4, frac(11, 5).pow(n as u32), AClass::AtLeast4);
            }
        }
        ScanClass::AtLeast4Exact => {
            for n in 12..=n_max {
                for a in (4..=n / 3).filter(|a| n % a == 0) {
                    push(n, a, rat(partition_count(n, a)), AClass::AtLeast4);
                }
            }
        }
        ScanClass::Three => {
            for n in (9..=n_max).step_by(3) {
                push(n, 3, rat(partition_count(n, 3)), AClass::Three);
            }
        }
        ScanClass::Two => {
            for n in (6..=n_max).step_by(2) {
                push(n, 2, rat(partition_count(n, 2)), AClass::Two);
            }
        }
        ScanClass::Grid => {
            // v is the full partition count, v'' the count on n - 4 points
            for n in (6..=n_max).step_by(2) {
                let v = rat(partition_count(n, 2));
                let inner = rat(partition_count(n - 4, 2));
                let r = &v / &inner;
                out.push(Sample { n, a: 2, v, r: r.clone(), r_outer: r, r_inner: inner });
            }
        }
    }
    out
}

type Test = fn(&Sample) -> bool;

/// A threshold under several readings. `computed` is the exact reading.
#[derive(Debug, Clone, Serialize)]
pub struct Threshold {
    pub check: &'static str,
    pub class: ScanClass,
    pub quoted: Option<u64>,
    pub computed: Option<u64>,
    pub readings: Vec<Reading>,
    pub scan_max: u64,
    /// Same maximum with the scan range extended by half.
    pub stable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reading {
    pub label: &'static str,
    pub max_n: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ThresholdStatus {
    Match,
    /// Off by one, and one of the root readings gives the quoted value.
    Discrepancy { note: String },
    Mismatch { note: String },
}

fn show(x: Option<u64>) -> String {
    x.map_or("none".into(), |n| n.to_string())
}

impl Threshold {
    pub fn deviation(&self) -> Option<i64> {
        Some(self.computed? as i64 - self.quoted? as i64)
    }

    pub fn note(&self) -> String {
        let readings: Vec<String> =
            self.readings.iter().map(|r| format!("{}={}", r.label, show(r.max_n))).collect();
        let delta = self.deviation().map_or("n/a".into(), |d| format!("{d:+}"));
        format!(
            "{} [{}]: exact {} vs quoted {} (delta {}); readings {}; scan to {}{}",
            self.check,
            self.class,
            show(self.computed),
            show(self.quoted),
            delta,
            readings.join(", "),
            self.scan_max,
            if self.stable { "" } else { "; NOT stable under range extension" },
        )
    }

    pub fn status(&self) -> ThresholdStatus {
        if !self.stable {
            return ThresholdStatus::Mismatch { note: self.note() };
        }
        if self.computed == self.quoted {
            return ThresholdStatus::Match;
        }
        let at_root = self.deviation().is_some_and(|d| d.abs() == 1)
            && self.readings.iter().any(|r| r.max_n == self.quoted);
        if at_root {
            ThresholdStatus::Discrepancy { note: self.note() }
        } else {
            ThresholdStatus::Mismatch { note: self.note() }
        }
    }
}

/// Largest `n` in the population where `test` holds.
fn scan_max(population: &[Sample], limit: u64, test: Test) -> Option<u64> {
    population.iter().filter(|s| s.n <= limit && test(s)).map(|s| s.n).max()
}

pub const THRESHOLD_SCAN_MAX: u64 = 200;

fn threshold(
    check: &'static str,
    class: ScanClass,
    quoted: Option<u64>,
    exact: Test,
    readings: &[(&'static str, Test)],
) -> Threshold {
    let n_max = THRESHOLD_SCAN_MAX;
    let extended = n_max + n_max / 2;
    let population = samples(class, extended);
    let computed = scan_max(&population, n_max, exact);
    let stable = scan_max(&population, extended, exact) == computed;
    let readings =
        readings.iter().map(|&(label, t)| Reading { label, max_n: scan_max(&population, n_max, t) }).collect();
    Threshold { check, class, quoted, computed, readings, scan_max: n_max, stable }
}

// r > v^(1/4)
fn lines_exact(s: &Sample) -> bool {
    s.r.clone().pow(4u32) > s.v
}
fn lines_floor(s: &Sample) -> bool {
    s.r > root_floor(&s.v, 4)
}
fn lines_ceil(s: &Sample) -> bool {
    s.r >= root_floor(&s.v, 4) + ratu(1)
}

/// With no fixed line the `v''` fixed points are pairwise non-collinear,
/// so `v/(s+1) = st+1 >= v''`, giving `r >= s+1 > v^(1/4)`.
pub fn lines_exist_thresholds() -> Vec<Threshold> {
    let readings: &[(&'static str, Test)] = &[("floor-root", lines_floor), ("ceil-root", lines_ceil)];
    [
        (ScanClass::AtLeast4Bound, 49),
        (ScanClass::Three, 36),
        (ScanClass::Two, 32),
        (ScanClass::AtLeast4Exact, 24),
    ]
    .into_iter()
    .map(|(c, p)| threshold("lines-exist", c, Some(p), lines_exact, readings))
    .collect()
}

/// Largest integer `s` with `s^5 < v^2`.
fn s_max(v: &BigRational) -> BigRational {
    let v2 = v * v;
    let f = root_floor(&v2, 5);
    if f.clone().pow(5u32) == v2 {
        f - ratu(1)
    } else {
        f
    }
}

fn off_line_exact(s: &Sample) -> bool {
    s.v <= &s.r * (s_max(&s.v) + ratu(1))
}
fn off_line_loose(s: &Sample) -> bool {
    s.v <= &s.r * (s_max(&s.v) + ratu(2))
}
// r > v/(v^(2/5)+1), i.e. r^5 v^2 > (v - r)^5
fn off_line_real(s: &Sample) -> bool {
    s.v <= s.r || s.r.clone().pow(5u32) * &s.v * &s.v > (&s.v - &s.r).pow(5u32)
}
// r > v^(1/5)(v^(2/5) - 1), the weakened form
fn off_line_weakened(s: &Sample) -> bool {
    let f = |u: &BigRational| u.clone().pow(3u32) - u;
    let mut lo = root_floor(&s.v, 5);
    let mut hi = &lo + ratu(1);
    for _ in 0..256 {
        if f(&hi) < s.r {
            return true;
        }
        if f(&lo) >= s.r {
            return false;
        }
        let mid = (&lo + &hi) / ratu(2);
        if mid.clone().pow(5u32) <= s.v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    false
}

/// All fixed points on one line: `s + 1 >= v''`, so `v <= r(s+1)` with
/// `s^5 < v^2`.
pub fn points_off_line_thresholds() -> Vec<Threshold> {
    let readings: &[(&'static str, Test)] = &[
        ("s-max+1", off_line_exact),
        ("s-max+2", off_line_loose),
        ("real-root", off_line_real),
        ("weakened", off_line_weakened),
    ];
    [(ScanClass::AtLeast4Bound, 13), (ScanClass::Three, 15), (ScanClass::Two, 14)]
        .into_iter()
        .map(|(c, p)| threshold("points-off-line", c, Some(p), off_line_exact, readings))
        .collect()
}

// V^(2/5) + 1 > B with B = r_inner, i.e. V^2 > (B - 1)^5
fn grid_exact(s: &Sample) -> bool {
    let b1 = &s.r_inner - ratu(1);
    b1 < ratu(0) || &s.v * &s.v > b1.pow(5u32)
}
fn grid_floor(s: &Sample) -> bool {
    root_floor(&(&s.v * &s.v), 5) + ratu(1) > s.r_inner
}
fn grid_ceil(s: &Sample) -> bool {
    root_floor(&(&s.v * &s.v), 5) + ratu(2) > s.r_inner
}

pub fn grid_case_bound() -> Threshold {
    threshold(
        "not-grid",
        ScanClass::Grid,
        Some(10),
        grid_exact,
        &[("floor-root", grid_floor), ("ceil-root", grid_ceil)],
    )
}

// r = v'/v'' > (v^(1/4) - 1)^(1/2), i.e. (r^2 + 1)^4 > v
fn same_s_exact(s: &Sample) -> bool {
    (s.r_inner.clone().pow(2u32) + ratu(1)).pow(4u32) > s.v
}
fn same_s_floor(s: &Sample) -> bool {
    s.r_inner.clone().pow(2u32) > root_floor(&s.v, 4) - ratu(1)
}
fn same_s_ceil(s: &Sample) -> bool {
    s.r_inner.clone().pow(2u32) > root_floor(&s.v, 4)
}
// r' = v/v' > v^(1/5) - 1, i.e. (r' + 1)^5 > v
fn smaller_s_exact(s: &Sample) -> bool {
    (&s.r_outer + ratu(1)).pow(5u32) > s.v
}
fn smaller_s_floor(s: &Sample) -> bool {
    s.r_outer > root_floor(&s.v, 5) - ratu(1)
}
fn smaller_s_ceil(s: &Sample) -> bool {
    s.r_outer > root_floor(&s.v, 5)
}

/// First triple: the subquadrangle keeps `s`; second: it has smaller `s`.
pub fn imprim_bound_thresholds() -> Vec<Threshold> {
    let classes = [ScanClass::AtLeast4Bound, ScanClass::Three, ScanClass::Two];
    let mut out = Vec::new();
    for (c, p) in classes.into_iter().zip([35, 33, 28]) {
        out.push(threshold(
            "imprim-bound s'=s",
            c,
            Some(p),
            same_s_exact,
            &[("floor-root", same_s_floor), ("ceil-root", same_s_ceil)],
        ));
    }
    for (c, p) in classes.into_iter().zip([32, 21, 22]) {
        out.push(threshold(
            "imprim-bound s'<s",
            c,
            Some(p),
            smaller_s_exact,
            &[("floor-root", smaller_s_floor), ("ceil-root", smaller_s_ceil)],
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Imprimitive enumeration

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ImprimRow {
    pub n: u64,
    pub s: u64,
    pub t: u64,
    pub a: u64,
    pub b: u64,
}

/// Every `(n, s, t, a, b)` with `n = ab <= n_max`, `a, b >= 2` and a thick
/// feasible order on `n!/((a!)^b b!)` points. `b = 2` is skipped unless
/// `allow_b2`.
pub fn imprim_enumeration(n_max: u64, allow_b2: bool) -> Result<Vec<ImprimRow>, CaseworkError> {
    if n_max < 6 {
        return Err(CaseworkError::BadRange(format!("n_max must be at least 6, got {n_max}")));
    }
    let mut out = Vec::new();
    for n in 4..=n_max {
        for a in (2..=n / 2).filter(|a| n % a == 0) {
            let b = n / a;
            if b == 2 && !allow_b2 {
                continue;
            }
            for o in gq::enumerate_orders(&partition_count(n, a)) {
                out.push(ImprimRow { n, s: o.s, t: o.t, a, b });
            }
        }
    }
    out.sort();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Alternating groups: wreath products and the order bound

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct WreathCandidate {
    pub m: u64,
    pub k: u64,
}

impl WreathCandidate {
    /// `(m!)^(6k) (k!)^6 >= (m^k)!/2`, growing the factorial on the right
    /// only until it passes the left side.
    pub fn holds(&self) -> bool {
        let lhs = BigUint::from(2u32) * factorial(self.m).pow((6 * self.k) as u32) * factorial(self.k).pow(6u32);
        let deg = self.m.pow(self.k as u32);
        let mut acc = BigUint::one();
        for j in 1..=deg {
            acc *= j;
            if acc > lhs {
                return false;
            }
        }
        true
    }
}

pub fn wreath_check() -> Vec<WreathCandidate> {
    let mut pairs = BTreeSet::new();
    pairs.extend((5..=25).map(|m| (m, 2)));
    pairs.extend((5..=6).map(|m| (m, 3)));
    for m in 5..=30 {
        for k in 2..=4 {
            pairs.insert((m, k));
        }
    }
    pairs.into_iter().map(|(m, k)| WreathCandidate { m, k }).filter(|w| w.holds()).collect()
}

/// `(n^(1 + floor(log2 n)))^e < n!/2`.
pub fn maroti_holds(n: u64, e: u32) -> bool {
    let base = BigUint::from(n).pow(1 + arith::floor_log2(n));
    BigUint::from(2u32) * base.pow(e) < factorial(n)
}

pub const MAROTI_SCAN_MAX: u64 = 200;

/// Least `n0` such that the sixth-power bound holds on all of
/// `[n0, MAROTI_SCAN_MAX]`.
pub fn maroti_bound_check() -> u64 {
    let mut n0 = MAROTI_SCAN_MAX;
    while n0 > 1 && maroti_holds(n0 - 1, 6) {
        n0 -= 1;
    }
    n0
}

// ---------------------------------------------------------------------------
// Small-degree primitive subgroups

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Contained in `A_n`; the ambient group is `A_n`.
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table4Row {
    pub group: String,
    pub n: u64,
    #[serde(with = "crate::dec::option")]
    pub order: Option<BigUint>,
    pub parity: Parity,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split('\t').collect::<Vec<_>>()))
}

fn parse_err(line: usize, msg: impl Into<String>) -> CaseworkError {
    CaseworkError::Parse { line, msg: msg.into() }
}

/// Columns `group n order parity`; `-` marks a missing order. A first line
/// starting with `group` is a header.
pub fn parse_table4(text: &str) -> Result<Vec<Table4Row>, CaseworkError> {
    let mut rows = Vec::new();
    for (line, f) in data_lines(text) {
        if f[0] == "group" && rows.is_empty() {
            continue;
        }
        if f.len() != 4 {
            return Err(parse_err(line, format!("expected 4 fields, got {}", f.len())));
        }
        let n = f[1].parse().map_err(|_| parse_err(line, format!("bad degree '{}'", f[1])))?;
        let order = match f[2] {
            "-" | "" => None,
            x => Some(x.parse().map_err(|_| parse_err(line, format!("bad order '{x}'")))?),
        };
        let parity = match f[3] {
            "even" => Parity::Even,
            "odd" => Parity::Odd,
            x => return Err(parse_err(line, format!("bad parity '{x}'"))),
        };
        rows.push(Table4Row { group: f[0].to_string(), n, order, parity });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SmallDegreeOutcome {
    pub kept: Vec<CandidateRow>,
    /// Rows that could not be evaluated, with the reason.
    pub unresolved: Vec<String>,
}

/// Index of each subgroup in `A_n` or `S_n` by parity; keeps every
/// feasible order of that index. Output keeps input order, then `s`.
pub fn smalldegree_filter(rows: &[Table4Row]) -> SmallDegreeOutcome {
    let mut out = SmallDegreeOutcome::default();
    for row in rows {
        let Some(order) = &row.order else {
            out.unresolved.push(format!("{} (degree {}): order missing", row.group, row.n));
            continue;
        };
        let (ambient, divisor) = match row.parity {
            Parity::Even => (format!("A{}", row.n), BigUint::from(2u32)),
            Parity::Odd => (format!("S{}", row.n), BigUint::one()),
        };
        let full = factorial(row.n);
        let denom = order * &divisor;
        if order.is_zero() || !(&full % &denom).is_zero() {
            out.unresolved.push(format!("{} (degree {}): order does not divide |{ambient}|", row.group, row.n));
            continue;
        }
        let index = full / denom;
        for o in gq::enumerate_orders(&index) {
            out.kept.push(CandidateRow {
                group: ambient.clone(),
                stabiliser: row.group.clone(),
                index: index.clone(),
                order: o,
                profile_ref: "-".into(),
            });
        }
    }
    out
}

pub const SMALLDEGREE_HEADER: &str = "stabiliser\tgroup\tindex\ts\tt\tneighbourhood";

/// Canonical form of a filtered small-degree table.
pub fn smalldegree_tsv(rows: &[CandidateRow]) -> String {
    let mut out = format!("{SMALLDEGREE_HEADER}\n");
    for r in rows {
        let k = screen::neighbourhood_target(r.order).map_or("-".into(), |k| k.to_string());
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            r.stabiliser, r.group, r.index, r.order.s, r.order.t, k
        ));
    }
    out
}

/// The three subgroup indices from the degree-six case and the feasible
/// orders for each.
pub fn strange6_check() -> Vec<(u64, Vec<GqOrder>)> {
    [45u64, 36, 10].into_iter().map(|i| (i, gq::enumerate_orders(&BigUint::from(i)))).collect()
}

// ---------------------------------------------------------------------------
// Sporadic groups

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SporadicRow {
    pub group: String,
    pub subgroup: String,
    #[serde(with = "crate::dec")]
    pub index: BigUint,
    pub provenance: String,
}

/// Columns `group subgroup index provenance`, with an optional header.
pub fn parse_sporadic(text: &str) -> Result<Vec<SporadicRow>, CaseworkError> {
    let mut rows = Vec::new();
    for (line, f) in data_lines(text) {
        if f[0] == "group" && rows.is_empty() {
            continue;
        }
        if f.len() != 4 {
            return Err(parse_err(line, format!("expected 4 fields, got {}", f.len())));
        }
        let index = f[2].parse().map_err(|_| parse_err(line, format!("bad index '{}'", f[2])))?;
        rows.push(SporadicRow {
            group: f[0].to_string(),
            subgroup: f[1].to_string(),
            index,
            provenance: f[3].to_string(),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table5Row {
    pub group: String,
    pub order: GqOrder,
    #[serde(with = "crate::dec")]
    pub index: BigUint,
    pub subgroup: String,
}

/// Rows admitting a thick feasible order, grouped by the first appearance
/// of their group in the dataset and sorted by `(s, t)` within a group.
/// Repeated `(group, subgroup, index)` entries count once.
pub fn sporadic_filter(rows: &[SporadicRow]) -> Vec<Table5Row> {
    let mut groups: Vec<&str> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for row in rows {
        if !groups.contains(&row.group.as_str()) {
            groups.push(&row.group);
        }
        if !seen.insert((row.group.clone(), row.subgroup.clone(), row.index.clone())) {
            continue;
        }
        for o in gq::enumerate_orders(&row.index) {
            out.push(Table5Row { group: row.group.clone(), order: o, index: row.index.clone(), subgroup: row.subgroup.clone() });
        }
    }
    let rank = |g: &str| groups.iter().position(|x| *x == g).unwrap();
    out.sort_by(|x, y| (rank(&x.group), x.order).cmp(&(rank(&y.group), y.order)));
    out
}

pub const TABLE5_HEADER: &str = "group\ts\tt\tpoints\tstabiliser";

pub fn table5_tsv(rows: &[Table5Row]) -> String {
    let mut out = format!("{TABLE5_HEADER}\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.group, r.order.s, r.order.t, r.index, r.subgroup));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RudvalisReport {
    /// Groups listed with both `(s, t)` and `(t, s)`.
    pub dual_pairs: Vec<(String, GqOrder)>,
    pub profile_total: u64,
    pub degree: u64,
    pub verdict: Verdict,
}

/// Finds the groups whose table rows are closed under duality, then
/// screens the `(57, 57)` row of `Ru` against the supplied profile.
pub fn rudvalis_elimination(table5: &[Table5Row], profile: &OrbitalProfile) -> RudvalisReport {
    let mut dual_pairs = Vec::new();
    for r in table5 {
        let dual = r.order.dual();
        if r.order <= dual && table5.iter().any(|x| x.group == r.group && x.order == dual) {
            dual_pairs.push((r.group.clone(), r.order));
        }
    }
    dual_pairs.dedup();
    let order = GqOrder::new(57, 57);
    let row = CandidateRow {
        group: "Ru".into(),
        stabiliser: "2^6:U3(3):2".into(),
        index: gq::point_count(order),
        order,
        profile_ref: "ru".into(),
    };
    let verdict = screen::screen_candidate(&row, Some(&ProfileData::Transcribed(profile.clone())));
    RudvalisReport {
        dual_pairs,
        profile_total: 1 + profile.subdegrees.iter().sum::<u64>(),
        degree: profile.degree,
        verdict,
    }
}

// ---------------------------------------------------------------------------
// Product action

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PaCandidate {
    pub delta: u64,
    pub k: u32,
    pub s: u64,
    pub t: u64,
}

pub const PA_K_MAX: u32 = 8;

/// Thick feasible orders on `delta^k` points with `s + 1 <= delta`, for
/// `2 <= delta <= delta_max` and `2 <= k <= 8`.
pub fn pa_survey(delta_max: u64) -> Result<Vec<PaCandidate>, CaseworkError> {
    if delta_max < 2 {
        return Err(CaseworkError::BadRange(format!("delta_max must be at least 2, got {delta_max}")));
    }
    let mut out = Vec::new();
    for delta in 2..=delta_max {
        for k in 2..=PA_K_MAX {
            let v = BigUint::from(delta).pow(k);
            for o in gq::enumerate_orders(&v) {
                if o.s < delta {
                    out.push(PaCandidate { delta, k, s: o.s, t: o.t });
                }
            }
        }
    }
    Ok(out)
}

/// `k >= 2` with `C(3k, k) <= 27`. The binomial grows with `k`, so the
/// scan stops at the first failure.
pub fn intransitive_final_check() -> Vec<u64> {
    let cap = BigUint::from(27u32);
    (2..).take_while(|&k| binomial(3 * k, k) <= cap).collect()
}

// ---------------------------------------------------------------------------
// O'Nan-Scott compatibility

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OnanScott {
    HA,
    HS,
    HC,
    AS,
    TW,
    SD,
    CD,
    PA,
}

impl OnanScott {
    pub const ALL: [OnanScott; 8] = [
        OnanScott::HA,
        OnanScott::HS,
        OnanScott::HC,
        OnanScott::AS,
        OnanScott::TW,
        OnanScott::SD,
        OnanScott::CD,
        OnanScott::PA,
    ];
}

impl fmt::Display for OnanScott {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OnanScottTables {
    /// Types a second faithful primitive action can have.
    pub two_actions: Vec<(OnanScott, Vec<OnanScott>)>,
    /// Point/line type pairs, with whether the pair is ruled out.
    pub point_line: Vec<(OnanScott, Vec<(OnanScott, bool)>)>,
    /// Pairs left once product action is also excluded.
    pub survivors: Vec<(OnanScott, OnanScott)>,
}

pub fn two_actions(x: OnanScott) -> Vec<OnanScott> {
    use OnanScott::*;
    match x {
        HA | HS | HC | AS => vec![x],
        TW => vec![TW, SD, CD, PA],
        SD => vec![TW, SD, PA],
        CD => vec![TW, CD, PA],
        PA => vec![TW, SD, CD, PA],
    }
}

fn ruled_out(points: OnanScott, lines: OnanScott) -> bool {
    use OnanScott::*;
    match points {
        HA | HS | HC => true,
        AS => false,
        TW | SD | CD => lines != PA,
        PA => false,
    }
}

pub fn onan_scott_tables() -> OnanScottTables {
    let two = OnanScott::ALL.iter().map(|&x| (x, two_actions(x))).collect();
    let point_line: Vec<(OnanScott, Vec<(OnanScott, bool)>)> = OnanScott::ALL
        .iter()
        .map(|&p| (p, two_actions(p).into_iter().map(|l| (l, ruled_out(p, l))).collect()))
        .collect();
    let survivors = point_line
        .iter()
        .flat_map(|(p, ls)| ls.iter().filter(|(_, x)| !x).map(move |(l, _)| (*p, *l)))
        .filter(|&(p, l)| p != OnanScott::PA && l != OnanScott::PA)
        .collect();
    OnanScottTables { two_actions: two, point_line, survivors }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn ratio_rows() {
        let r = ratio_table(ImprimitiveShape::new(9, 3, 3).unwrap()).unwrap();
        assert_eq!((r.v, r.v1, r.v2), (b(280), b(10), b(1)));
        assert_eq!(r.r_outer, ratu(28));
        let r = ratio_table(ImprimitiveShape::new(10, 2, 5).unwrap()).unwrap();
        assert_eq!((r.v, r.v1, r.v2), (b(945), b(45), b(3)));
        let r = ratio_table(ImprimitiveShape::new(16, 4, 4).unwrap()).unwrap();
        assert_eq!(r.v, b(2627625));
        assert_eq!(r.v, gq::point_count(GqOrder::new(76, 449)));
    }

    #[test]
    fn ratio_table_consistent_everywhere() {
        for n in 6..=60 {
            for a in (2..=n / 2).filter(|a| n % a == 0) {
                if let Ok(shape) = ImprimitiveShape::new(n, a, n / a) {
                    ratio_table(shape).unwrap();
                }
            }
        }
    }

    #[test]
    fn invalid_shapes() {
        assert!(ImprimitiveShape::new(4, 2, 2).is_err());
        assert!(ImprimitiveShape::new(12, 5, 2).is_err());
        assert!(ImprimitiveShape::new(6, 1, 6).is_err());
    }

    #[test]
    fn bound_n() {
        assert_eq!(bound_n_verify(200).unwrap(), vec![]);
        assert!(bound_n_verify(15).is_err());
    }

    #[test]
    fn grid() {
        let g = grid_case_bound();
        assert_eq!(g.computed, Some(10));
        assert_eq!(g.status(), ThresholdStatus::Match);
    }

    #[test]
    fn imprim_bounds_match() {
        let got: Vec<Option<u64>> = imprim_bound_thresholds().iter().map(|t| t.computed).collect();
        assert_eq!(got, [35, 33, 28, 32, 21, 22].map(Some));
    }

    #[test]
    fn lines_exist_values() {
        let got: Vec<Option<u64>> = lines_exist_thresholds().iter().map(|t| t.computed).collect();
        assert_eq!(got, vec![Some(49), Some(33), Some(32), Some(24)]);
    }

    #[test]
    fn points_off_line_values() {
        let got: Vec<Option<u64>> = points_off_line_thresholds().iter().map(|t| t.computed).collect();
        assert_eq!(got, vec![None, Some(15), Some(14)]);
    }

    #[test]
    fn imprim_table() {
        let rows = imprim_enumeration(36, false).unwrap();
        let got: Vec<_> = rows.iter().map(|r| (r.n, r.s, r.t, r.a, r.b)).collect();
        assert_eq!(got, vec![(6, 2, 2, 2, 3), (9, 9, 3, 3, 3), (10, 8, 13, 2, 5), (16, 76, 449, 4, 4)]);
        let wider = imprim_enumeration(36, true).unwrap();
        assert!(rows.iter().all(|r| wider.contains(r)));
        assert!(gq::enumerate_orders(&b(75075)).is_empty());
    }

    #[test]
    fn wreath_and_maroti() {
        assert_eq!(wreath_check(), vec![WreathCandidate { m: 5, k: 2 }]);
        assert!(!WreathCandidate { m: 6, k: 2 }.holds());
        assert!(!WreathCandidate { m: 5, k: 3 }.holds());
        assert_eq!(maroti_bound_check(), 48);
        assert!(!maroti_holds(47, 6));
        assert!(maroti_holds(107, 12));
    }

    #[test]
    fn strange6() {
        let r = strange6_check();
        assert_eq!(r[0], (45, vec![GqOrder::new(4, 2)]));
        assert!(r[1].1.is_empty() && r[2].1.is_empty());
    }

    #[test]
    fn small_checks() {
        assert_eq!(intransitive_final_check(), vec![2]);
        let pa = pa_survey(30).unwrap();
        assert!(pa.iter().all(|p| p.k < 4));
        assert!(pa.contains(&PaCandidate { delta: 20, k: 2, s: 7, t: 7 }));
        // 64 = 4 * 16 admits the order (3, 5)
        let d4: Vec<_> = pa.iter().filter(|p| p.delta == 4 && p.k == 3).collect();
        assert_eq!(d4, vec![&PaCandidate { delta: 4, k: 3, s: 3, t: 5 }]);
    }

    #[test]
    fn onan_scott() {
        use OnanScott::*;
        assert_eq!(two_actions(HA), vec![HA]);
        assert_eq!(two_actions(SD), vec![TW, SD, PA]);
        assert_eq!(onan_scott_tables().survivors, vec![(AS, AS)]);
    }

    #[test]
    fn table4_parsing_and_filter() {
        let text = "group\tn\torder\tparity\nPSL(3,2)\t7\t168\teven\n13:6\t13\t78\teven\nX\t9\t-\todd\n";
        let rows = parse_table4(text).unwrap();
        let out = smalldegree_filter(&rows);
        assert_eq!(out.kept.len(), 1);
        assert_eq!(out.kept[0].index, b(15));
        assert_eq!(out.kept[0].group, "A7");
        assert_eq!(out.unresolved.len(), 1);
        assert!(parse_table4("A\t7\t168\tmaybe\n").is_err());
    }

    #[test]
    fn sporadic_dedup_and_order() {
        let text = "Z\tH\t165\tx\nZ\tH\t165\tx\nY\tK\t280\tx\nZ\tL\t100\tx\n";
        let rows = parse_sporadic(text).unwrap();
        let t = sporadic_filter(&rows);
        let got: Vec<_> = t.iter().map(|r| (r.group.as_str(), r.order.s, r.order.t)).collect();
        assert_eq!(got, vec![("Z", 4, 8), ("Y", 9, 3)]);
    }
}
