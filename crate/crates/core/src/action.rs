//! Combinatorial actions: natural, k-subsets, uniform partitions, the
//! projective line, and explicit families of sets. Subdegrees come from
//! Schreier generators of a point stabiliser; an independent pair-orbit
//! computation serves as a cross-check.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, factorial};
use crate::graph::SimpleGraph;
use crate::perm::{PermError, PermGroup, Permutation, StabChain, ACTION_DEGREE_LIMIT};

/// Largest degree for the quadratic pair-orbit routines.
pub const PAIR_ORBIT_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionSpec {
    Natural(usize),
    KSubsets { n: usize, k: usize },
    /// `b` parts of size `a`, `n = ab`.
    UniformPartitions { n: usize, a: usize, b: usize },
    ProjectiveLine(u64),
    /// Sets of points of `{0..n-1}`, in the order given.
    ExplicitPoints { n: usize, points: Vec<Vec<usize>> },
}

impl ActionSpec {
    /// `natural`, `subsets:k`, `partitions:AxB` (B parts of size A),
    /// `projline`, or `points:<json file>` holding an array of sets.
    pub fn parse(text: &str, group_degree: usize) -> Result<Self, PermError> {
        let bad = |why: &str| PermError::BadSpec(format!("action '{text}': {why}"));
        let n = group_degree;
        if text == "natural" {
            return Ok(ActionSpec::Natural(n));
        }
        if text == "projline" {
            if n < 3 {
                return Err(bad("group degree too small for a projective line"));
            }
            return Ok(ActionSpec::ProjectiveLine(n as u64 - 1));
        }
        if let Some(k) = text.strip_prefix("subsets:") {
            let k = k.parse().map_err(|_| bad("k is not an integer"))?;
            return Ok(ActionSpec::KSubsets { n, k });
        }
        if let Some(ab) = text.strip_prefix("partitions:") {
            let (a, b) = ab.split_once('x').ok_or_else(|| bad("expected AxB"))?;
            let a = a.parse().map_err(|_| bad("A is not an integer"))?;
            let b = b.parse().map_err(|_| bad("B is not an integer"))?;
            return Ok(ActionSpec::UniformPartitions { n, a, b });
        }
        if let Some(path) = text.strip_prefix("points:") {
            let body = std::fs::read_to_string(path).map_err(|e| bad(&e.to_string()))?;
            let points: Vec<Vec<usize>> = serde_json::from_str(&body).map_err(|e| bad(&e.to_string()))?;
            return Ok(ActionSpec::ExplicitPoints { n, points });
        }
        Err(bad("unknown action"))
    }

    fn domain_degree(&self) -> usize {
        match self {
            ActionSpec::Natural(n) => *n,
            ActionSpec::KSubsets { n, .. } => *n,
            ActionSpec::UniformPartitions { n, .. } => *n,
            ActionSpec::ProjectiveLine(q) => *q as usize + 1,
            ActionSpec::ExplicitPoints { n, .. } => *n,
        }
    }

    /// Combinatorial count of the points acted on.
    pub fn expected_degree(&self) -> BigUint {
        match self {
            ActionSpec::Natural(n) => BigUint::from(*n),
            ActionSpec::KSubsets { n, k } => binomial(*n as u64, *k as u64),
            ActionSpec::UniformPartitions { n, a, b } => {
                if a * b != *n {
                    return BigUint::from(0u32);
                }
                factorial(*n as u64) / (factorial(*a as u64).pow(*b as u32) * factorial(*b as u64))
            }
            ActionSpec::ProjectiveLine(q) => BigUint::from(*q + 1),
            ActionSpec::ExplicitPoints { points, .. } => BigUint::from(points.len()),
        }
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionSpec::Natural(n) => write!(f, "natural({n})"),
            ActionSpec::KSubsets { n, k } => write!(f, "subsets({n},{k})"),
            ActionSpec::UniformPartitions { n, a, b } => write!(f, "partitions({n},{a}x{b})"),
            ActionSpec::ProjectiveLine(q) => write!(f, "projline({q})"),
            ActionSpec::ExplicitPoints { n, points } => write!(f, "explicit({n},{})", points.len()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Point,
    Set,
    Partition,
}

/// A group acting on materialised points with canonical indexing.
#[derive(Debug, Clone)]
pub struct Action {
    spec: ActionSpec,
    group: PermGroup,
    kind: Kind,
    keys: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, u32>,
    generators: Vec<Permutation>,
}

/// k-subsets of `0..n` in colex order.
fn colex_subsets(n: usize, k: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.iter().map(|&x| x as u16).collect());
        // colex successor: bump the first element that can move
        let mut i = 0;
        while i < k && c[i] + 1 == if i + 1 < k { c[i + 1] } else { n } {
            i += 1;
        }
        if i == k {
            break;
        }
        c[i] += 1;
        for (j, slot) in c.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
    out
}

/// Partitions of `0..n` into parts of size `a`, lex by sorted parts,
/// encoded as block labels numbered by least element.
fn lex_partitions(n: usize, a: usize) -> Vec<Vec<u16>> {
    fn rec(labels: &mut Vec<u16>, next: u16, a: usize, out: &mut Vec<Vec<u16>>) {
        let Some(first) = labels.iter().position(|&l| l == u16::MAX) else {
            out.push(labels.clone());
            return;
        };
        let free: Vec<usize> = (first + 1..labels.len()).filter(|&i| labels[i] == u16::MAX).collect();
        labels[first] = next;
        for combo in colex_subsets(free.len(), a - 1).into_iter().map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|i| free[i as usize]).collect();
            c.sort_unstable();
            c
        }).collect::<std::collections::BTreeSet<_>>() {
            for &i in &combo {
                labels[i] = next;
            }
            rec(labels, next + 1, a, out);
            for &i in &combo {
                labels[i] = u16::MAX;
            }
        }
        labels[first] = u16::MAX;
    }
    let mut out = Vec::new();
    if a == 0 || n % a != 0 {
        return out;
    }
    rec(&mut vec![u16::MAX; n], 0, a, &mut out);
    out
}

fn relabel(raw: &mut [u16]) {
    let mut map = HashMap::new();
    for l in raw.iter_mut() {
        let next = map.len() as u16;
        *l = *map.entry(*l).or_insert(next);
    }
}

fn image_key(kind: Kind, key: &[u16], g: &[u32]) -> Vec<u16> {
    match kind {
        Kind::Point => vec![g[key[0] as usize] as u16],
        Kind::Set => {
            let mut v: Vec<u16> = key.iter().map(|&x| g[x as usize] as u16).collect();
            v.sort_unstable();
            v
        }
        Kind::Partition => {
            let mut v = vec![0u16; key.len()];
            for (e, &l) in key.iter().enumerate() {
                v[g[e] as usize] = l;
            }
            relabel(&mut v);
            v
        }
    }
}

/// Materialises the points of `spec` and the induced generators.
pub fn act(spec: ActionSpec, group: &PermGroup) -> Result<Action, PermError> {
    let n = spec.domain_degree();
    if group.degree() != n {
        return Err(PermError::DegreeMismatch { expected: n, got: group.degree() });
    }
    if n > u16::MAX as usize {
        return Err(PermError::ResourceLimit { what: "domain degree", size: n as u128, limit: u16::MAX as u128 });
    }
    let expected = spec.expected_degree();
    if expected > BigUint::from(ACTION_DEGREE_LIMIT) {
        return Err(PermError::ResourceLimit {
            what: "action degree",
            size: u128::try_from(&expected).unwrap_or(u128::MAX),
            limit: ACTION_DEGREE_LIMIT as u128,
        });
    }
    let (kind, keys): (Kind, Vec<Vec<u16>>) = match &spec {
        ActionSpec::Natural(n) => (Kind::Point, (0..*n as u16).map(|x| vec![x]).collect()),
        ActionSpec::ProjectiveLine(q) => (Kind::Point, (0..=*q as u16).map(|x| vec![x]).collect()),
        ActionSpec::KSubsets { n, k } => {
            if *k == 0 || k > n {
                return Err(PermError::BadSpec(format!("k = {k} out of range for n = {n}")));
            }
            (Kind::Set, colex_subsets(*n, *k))
        }
        ActionSpec::UniformPartitions { n, a, b } => {
            if a * b != *n || *a < 1 || *b < 1 {
                return Err(PermError::BadSpec(format!("{a} x {b} does not partition {n}")));
            }
            (Kind::Partition, lex_partitions(*n, *a))
        }
        ActionSpec::ExplicitPoints { n, points } => {
            let mut keys = Vec::with_capacity(points.len());
            for p in points {
                let mut k: Vec<u16> = Vec::with_capacity(p.len());
                for &x in p {
                    if x >= *n {
                        return Err(PermError::PointOutOfRange { point: x, degree: *n });
                    }
                    k.push(x as u16);
                }
                k.sort_unstable();
                k.dedup();
                keys.push(k);
            }
            (Kind::Set, keys)
        }
    };
    let mut index = HashMap::with_capacity(keys.len());
    for (i, k) in keys.iter().enumerate() {
        if index.insert(k.clone(), i as u32).is_some() {
            return Err(PermError::BadSpec(format!("point {i} repeats an earlier point")));
        }
    }
    let mut action = Action { spec, group: group.clone(), kind, keys, index, generators: Vec::new() };
    let gens = group
        .generators()
        .iter()
        .map(|g| {
            let img = (0..action.degree())
                .map(|x| action.image(x, g).map(|y| y as u32))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Permutation::from_u32(img))
        })
        .collect::<Result<Vec<_>, PermError>>()?;
    action.generators = gens;
    Ok(action)
}

impl Action {
    pub fn degree(&self) -> usize {
        self.keys.len()
    }

    pub fn spec(&self) -> &ActionSpec {
        &self.spec
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Generators as permutations of the action points.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Image of point `x` under a permutation of the underlying domain.
    pub fn image(&self, x: usize, g: &Permutation) -> Result<usize, PermError> {
        let key = image_key(self.kind, &self.keys[x], g.raw());
        self.index
            .get(&key)
            .map(|&i| i as usize)
            .ok_or_else(|| PermError::NotClosed(format!("image of point {x} is not a point")))
    }

    /// Readable name of point `x`.
    pub fn label(&self, x: usize) -> String {
        let key = &self.keys[x];
        match (&self.spec, self.kind) {
            (ActionSpec::ProjectiveLine(q), _) if key[0] as u64 == *q => "inf".into(),
            (_, Kind::Point) => key[0].to_string(),
            (_, Kind::Set) => {
                let parts: Vec<String> = key.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            }
            (_, Kind::Partition) => {
                let blocks = key.iter().copied().max().map_or(0, |m| m as usize + 1);
                let parts: Vec<String> = (0..blocks)
                    .map(|b| {
                        let elems: Vec<String> = key
                            .iter()
                            .enumerate()
                            .filter(|&(_, &l)| l as usize == b)
                            .map(|(e, _)| e.to_string())
                            .collect();
                        elems.join(",")
                    })
                    .collect();
                parts.join("|")
            }
        }
    }

    /// Point index for a label: field elements and `inf` on the projective
    /// line, plain indices otherwise.
    pub fn parse_point(&self, text: &str) -> Result<usize, PermError> {
        let x = match (&self.spec, text) {
            (ActionSpec::ProjectiveLine(q), "inf") => *q as usize,
            _ => text.parse().map_err(|_| PermError::BadSpec(format!("bad point '{text}'")))?,
        };
        if x >= self.degree() {
            return Err(PermError::PointOutOfRange { point: x, degree: self.degree() });
        }
        Ok(x)
    }

    fn orbit_under_generators(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() == 0 || self.orbit_under_generators(0).len() == self.degree()
    }

    fn require_transitive(&self) -> Result<(), PermError> {
        let orbit = if self.degree() == 0 { 0 } else { self.orbit_under_generators(0).len() };
        if orbit != self.degree() {
            return Err(PermError::Intransitive { orbit, degree: self.degree() });
        }
        Ok(())
    }

    /// Generators (on the underlying domain) for the stabiliser of point
    /// `p` in `<gens>`: Schreier generators, deduplicated, and kept only if
    /// they enlarge the subgroup generated by those kept so far.
    pub fn stabiliser_generators(&self, p: usize, gens: &[Permutation]) -> Result<Vec<Permutation>, PermError> {
        let n = self.group.degree();
        let mut trans: HashMap<usize, Permutation> = HashMap::new();
        trans.insert(p, Permutation::identity(n));
        let mut orbit = vec![p];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = self.image(x, g)?;
                if !trans.contains_key(&y) {
                    let u = trans[&x].then(g);
                    trans.insert(y, u);
                    orbit.push(y);
                }
            }
            i += 1;
        }
        let inverses: HashMap<usize, Permutation> = trans.iter().map(|(&x, u)| (x, u.inverse())).collect();
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut chain = StabChain::new(n)?;
        let mut kept = Vec::new();
        for &x in &orbit {
            for g in gens {
                let y = self.image(x, g)?;
                let h = trans[&x].then(g).then(&inverses[&y]);
                if h.is_identity() || !seen.insert(h.clone()) {
                    continue;
                }
                if chain.add_generator(&h)? {
                    kept.push(h);
                }
            }
        }
        Ok(kept)
    }

    /// Orbits of `<gens>` on all points, each sorted, listed by least point.
    pub fn orbits_of(&self, gens: &[Permutation]) -> Result<Vec<Vec<usize>>, PermError> {
        let images: Vec<Vec<usize>> = gens
            .iter()
            .map(|g| (0..self.degree()).map(|x| self.image(x, g)).collect())
            .collect::<Result<_, _>>()?;
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for img in &images {
                    let y = img[x];
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        Ok(out)
    }

    /// Orbits of the stabiliser of point 0, excluding `{0}`, ordered by
    /// length then least point.
    pub fn suborbits(&self) -> Result<Vec<Vec<usize>>, PermError> {
        self.require_transitive()?;
        if self.degree() == 0 {
            return Ok(Vec::new());
        }
        let stab = self.stabiliser_generators(0, self.group.generators())?;
        let mut orbits: Vec<Vec<usize>> = self.orbits_of(&stab)?.into_iter().filter(|o| o[0] != 0).collect();
        orbits.sort_by_key(|o| (o.len(), o[0]));
        Ok(orbits)
    }

    pub fn subdegrees(&self) -> Result<OrbitalProfile, PermError> {
        let subdegrees = self.suborbits()?.iter().map(|o| o.len() as u64).collect();
        Ok(OrbitalProfile::new(self.degree() as u64, subdegrees, Provenance::Computed))
    }

    fn require_pair_scale(&self) -> Result<(), PermError> {
        if self.degree() > PAIR_ORBIT_LIMIT {
            return Err(PermError::ResourceLimit {
                what: "pair-orbit degree",
                size: self.degree() as u128,
                limit: PAIR_ORBIT_LIMIT as u128,
            });
        }
        Ok(())
    }

    /// Orbit of the ordered pair `(a, b)` under the generators, as a bitset
    /// over `degree^2`, with its size.
    fn pair_orbit(&self, a: usize, b: usize, visited: &mut [u64]) -> Vec<(usize, usize)> {
        let d = self.degree();
        let mut out = vec![(a, b)];
        visited[(a * d + b) / 64] |= 1 << ((a * d + b) % 64);
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (u, v) = (g.apply(x), g.apply(y));
                let k = u * d + v;
                if visited[k / 64] >> (k % 64) & 1 == 0 {
                    visited[k / 64] |= 1 << (k % 64);
                    out.push((u, v));
                    queue.push_back((u, v));
                }
            }
        }
        out
    }

    /// Walks the orbit of `(0, b)` like `pair_orbit` but only counts the
    /// pairs whose first entry is 0.
    fn pair_orbit_row_count(&self, b: usize, visited: &mut [u64]) -> u64 {
        let d = self.degree();
        let mut count = 1;
        visited[b / 64] |= 1 << (b % 64);
        let mut queue = VecDeque::from([(0, b)]);
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (u, v) = (g.apply(x), g.apply(y));
                let k = u * d + v;
                if visited[k / 64] >> (k % 64) & 1 == 0 {
                    visited[k / 64] |= 1 << (k % 64);
                    count += u64::from(u == 0);
                    queue.push_back((u, v));
                }
            }
        }
        count
    }

    /// Subdegrees from the G-orbits on ordered pairs `(0, x)`. Uses only
    /// the induced generators, never a stabiliser.
    pub fn subdegrees_by_pair_orbits(&self) -> Result<Vec<u64>, PermError> {
        self.require_transitive()?;
        self.require_pair_scale()?;
        let d = self.degree();
        let mut visited = vec![0u64; (d * d).div_ceil(64)];
        let mut out = Vec::new();
        for x in 1..d {
            if visited[x / 64] >> (x % 64) & 1 == 1 {
                continue;
            }
            out.push(self.pair_orbit_row_count(x, &mut visited));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The orbital of `(0, rep)` as ordered pairs, and whether it is
    /// self-paired.
    pub fn orbital(&self, rep: usize) -> Result<(Vec<(usize, usize)>, bool), PermError> {
        self.require_transitive()?;
        self.require_pair_scale()?;
        let d = self.degree();
        if rep == 0 || rep >= d {
            return Err(PermError::PointOutOfRange { point: rep, degree: d });
        }
        let mut visited = vec![0u64; (d * d).div_ceil(64)];
        let orbit = self.pair_orbit(0, rep, &mut visited);
        let back = rep * d;
        Ok((orbit, visited[back / 64] >> (back % 64) & 1 == 1))
    }

    /// Graph whose edges are the orbital of `(0, rep)`; the orbital must be
    /// self-paired.
    pub fn orbital_graph(&self, rep: usize) -> Result<SimpleGraph, PermError> {
        let (orbit, self_paired) = self.orbital(rep)?;
        if !self_paired {
            return Err(PermError::NotSelfPaired { base: 0, rep });
        }
        Ok(SimpleGraph::from_edges(self.degree(), orbit))
    }

    /// Orbit lengths of the stabiliser of `p1` and `p2` on the other points.
    pub fn two_point_stabiliser_orbits(&self, p1: usize, p2: usize) -> Result<Vec<u64>, PermError> {
        self.require_transitive()?;
        for p in [p1, p2] {
            if p >= self.degree() {
                return Err(PermError::PointOutOfRange { point: p, degree: self.degree() });
            }
        }
        if p1 == p2 {
            return Err(PermError::BadSpec("two-point stabiliser needs distinct points".into()));
        }
        let s1 = self.stabiliser_generators(p1, self.group.generators())?;
        let s12 = self.stabiliser_generators(p2, &s1)?;
        let mut out: Vec<u64> = self
            .orbits_of(&s12)?
            .into_iter()
            .filter(|o| !o.contains(&p1) && !o.contains(&p2))
            .map(|o| o.len() as u64)
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "computed")]
    Computed,
    #[serde(rename = "transcribed-from-paper")]
    TranscribedFromPaper,
    #[serde(rename = "transcribed-from-atlas")]
    TranscribedFromAtlas,
}

impl Provenance {
    pub fn is_computed(self) -> bool {
        self == Provenance::Computed
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Computed => "computed",
            Provenance::TranscribedFromPaper => "transcribed-from-paper",
            Provenance::TranscribedFromAtlas => "transcribed-from-atlas",
        })
    }
}

/// Degree, sorted nontrivial subdegrees, and where they came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitalProfile {
    #[serde(with = "crate::dec::u64s")]
    pub degree: u64,
    #[serde(with = "crate::dec::u64_vec")]
    pub subdegrees: Vec<u64>,
    pub provenance: Provenance,
}

impl OrbitalProfile {
    pub fn new(degree: u64, mut subdegrees: Vec<u64>, provenance: Provenance) -> Self {
        subdegrees.sort_unstable();
        OrbitalProfile { degree, subdegrees, provenance }
    }

    /// `1 + Σ subdegrees = degree`.
    pub fn sums_to_degree(&self) -> bool {
        1 + self.subdegrees.iter().map(|&x| x as u128).sum::<u128>() == self.degree as u128
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_strongly_regular;
    use crate::perm::projective_line_group;

    #[test]
    fn colex_and_lex_orders() {
        let s = colex_subsets(4, 2);
        let expect: Vec<Vec<u16>> = vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]];
        assert_eq!(s, expect);
        let p = lex_partitions(4, 2);
        // 01|23, 02|13, 03|12
        assert_eq!(p, vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1], vec![0, 1, 1, 0]]);
        assert_eq!(lex_partitions(6, 3).len(), 10);
    }

    #[test]
    fn degrees_match_counts() {
        let cases = [(6, 2, 15usize), (9, 3, 84), (8, 4, 70)];
        for (n, k, d) in cases {
            let a = act(ActionSpec::KSubsets { n, k }, &PermGroup::symmetric(n)).unwrap();
            assert_eq!(a.degree(), d);
            assert_eq!(BigUint::from(d), a.spec().expected_degree());
        }
        let parts = [(10, 2, 5, 945usize), (9, 3, 3, 280), (8, 2, 4, 105), (8, 4, 2, 35), (12, 3, 4, 15400)];
        for (n, a, b, d) in parts {
            let act = act(ActionSpec::UniformPartitions { n, a, b }, &PermGroup::alternating(n)).unwrap();
            assert_eq!(act.degree(), d);
            assert_eq!(BigUint::from(d), act.spec().expected_degree());
        }
    }

    #[test]
    fn partition_subdegrees_a10_s10() {
        let spec = ActionSpec::UniformPartitions { n: 10, a: 2, b: 5 };
        for g in [PermGroup::alternating(10), PermGroup::symmetric(10)] {
            let a = act(spec.clone(), &g).unwrap();
            let p = a.subdegrees().unwrap();
            assert_eq!(p.subdegrees, vec![20, 60, 80, 160, 240, 384]);
            assert!(p.sums_to_degree());
            assert_eq!(a.subdegrees_by_pair_orbits().unwrap(), p.subdegrees);
        }
    }

    #[test]
    fn a9_partitions_36_suborbit() {
        let a = act(ActionSpec::UniformPartitions { n: 9, a: 3, b: 3 }, &PermGroup::alternating(9)).unwrap();
        let subs = a.suborbits().unwrap();
        let o36 = subs.iter().find(|o| o.len() == 36).expect("a 36-suborbit");
        let g = a.orbital_graph(o36[0]).unwrap();
        assert_eq!(g.degree(0), 36);
        assert_eq!(g.diameter(), Some(2));
        assert!(is_strongly_regular(&g).is_err());
    }

    #[test]
    fn duad_orbitals() {
        let a = act(ActionSpec::KSubsets { n: 6, k: 2 }, &PermGroup::symmetric(6)).unwrap();
        let subs = a.suborbits().unwrap();
        assert_eq!(subs.iter().map(|o| o.len()).collect::<Vec<_>>(), vec![6, 8]);
        let srg: Vec<bool> = subs
            .iter()
            .map(|o| is_strongly_regular(&a.orbital_graph(o[0]).unwrap()).is_ok_and(|p| p.vklm() == (15, 6, 1, 3)))
            .collect();
        assert_eq!(srg, vec![true, false]);
    }

    #[test]
    fn natural_s5_is_complete() {
        let a = act(ActionSpec::Natural(5), &PermGroup::symmetric(5)).unwrap();
        let g = a.orbital_graph(1).unwrap();
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn two_point_stabilisers() {
        let psl = projective_line_group(19, false).unwrap();
        let a = act(ActionSpec::ProjectiveLine(19), &psl).unwrap();
        let inf = a.parse_point("inf").unwrap();
        assert_eq!(a.two_point_stabiliser_orbits(0, inf).unwrap(), vec![9, 9]);
        let s6 = act(ActionSpec::Natural(6), &PermGroup::symmetric(6)).unwrap();
        assert_eq!(s6.two_point_stabiliser_orbits(1, 2).unwrap(), vec![4]);
        let a20 = act(ActionSpec::Natural(20), &PermGroup::alternating(20)).unwrap();
        assert_eq!(a20.two_point_stabiliser_orbits(3, 11).unwrap(), vec![18]);
        let pgl = projective_line_group(19, true).unwrap();
        let b = act(ActionSpec::ProjectiveLine(19), &pgl).unwrap();
        assert_eq!(b.two_point_stabiliser_orbits(0, 19).unwrap(), vec![18]);
    }

    #[test]
    fn errors() {
        let s5 = PermGroup::symmetric(5);
        assert!(matches!(act(ActionSpec::Natural(6), &s5), Err(PermError::DegreeMismatch { .. })));
        let intrans = PermGroup::new(4, vec![Permutation::from_cycles(4, &[&[0, 1]]).unwrap()]).unwrap();
        let a = act(ActionSpec::Natural(4), &intrans).unwrap();
        assert!(matches!(a.subdegrees(), Err(PermError::Intransitive { orbit: 2, degree: 4 })));
        let not_closed = ActionSpec::ExplicitPoints { n: 5, points: vec![vec![0, 1], vec![2, 3]] };
        assert!(matches!(act(not_closed, &s5), Err(PermError::NotClosed(_))));
        let huge = ActionSpec::UniformPartitions { n: 20, a: 2, b: 10 };
        assert!(matches!(act(huge, &PermGroup::symmetric(20)), Err(PermError::ResourceLimit { .. })));
        // a 3-cycle's orbital (0,1) in C3 is not self-paired
        let c3 = PermGroup::new(3, vec![Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        let a = act(ActionSpec::Natural(3), &c3).unwrap();
        assert!(matches!(a.orbital_graph(1), Err(PermError::NotSelfPaired { .. })));
    }

    #[test]
    fn specs_parse() {
        assert_eq!(ActionSpec::parse("partitions:2x5", 10).unwrap(), ActionSpec::UniformPartitions { n: 10, a: 2, b: 5 });
        assert_eq!(ActionSpec::parse("subsets:2", 6).unwrap(), ActionSpec::KSubsets { n: 6, k: 2 });
        assert_eq!(ActionSpec::parse("projline", 20).unwrap(), ActionSpec::ProjectiveLine(19));
        assert!(ActionSpec::parse("cosets", 5).is_err());
    }

    #[test]
    fn profile_json() {
        let p = OrbitalProfile::new(15, vec![8, 6], Provenance::Computed);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"degree":"15","subdegrees":["6","8"],"provenance":"computed"}"#);
        let q: OrbitalProfile =
            serde_json::from_str(r#"{"degree":15,"subdegrees":[6,8],"provenance":"transcribed-from-paper"}"#).unwrap();
        assert_eq!(q.subdegrees, vec![6, 8]);
        assert_eq!(q.provenance, Provenance::TranscribedFromPaper);
    }
}
