//! Finite point-line geometries: GQ axiom checks, the duad/syntheme model of
//! GQ(2,2), collinearity graphs, automorphism search and the shape of the
//! substructure fixed by an automorphism.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gq::{subgq_admissible, GqOrder, SubGqOrder};
use crate::graph::SimpleGraph;

/// Automorphism search refuses structures with more points than this.
pub const AUTOMORPHISM_POINT_LIMIT: usize = 200;

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("line {line} has {size} point(s); lines need at least 2")]
    ShortLine { line: usize, size: usize },
    #[error("line {line} contains point {point}, outside 0..{points}")]
    PointOutOfRange { line: usize, point: usize, points: usize },
    #[error("line {line} lists point {point} twice")]
    RepeatedPoint { line: usize, point: usize },
    #[error("lines {first} and {second} coincide")]
    RepeatedLine { first: usize, second: usize },
    #[error("point {point} lies on {degree} line(s); the dual needs at least 2")]
    DualNeedsTwoLines { point: usize, degree: usize },
    #[error("automorphism search is limited to {limit} points, got {points}")]
    ResourceLimit { points: usize, limit: usize },
    #[error("more than {limit} automorphisms")]
    TooManyAutomorphisms { limit: usize },
    #[error("point map is not an automorphism: {reason}")]
    NotAnAutomorphism { reason: String },
    #[error("ambient structure is not a thick GQ: {0}")]
    NotAGq(GqViolation),
    #[error("fixed substructure ({points} points, {lines} lines) matches none of the seven shapes")]
    NoFixedShape { points: usize, lines: usize },
    #[error("fixed subquadrangle {sub} is inadmissible in {ambient}")]
    InadmissibleSub { ambient: GqOrder, sub: GqOrder },
}

/// Points are `0..points`; each line is a sorted list of point indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct IncidenceStructure {
    points: usize,
    lines: Vec<Vec<usize>>,
    through: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    points: usize,
    lines: Vec<Vec<usize>>,
}

impl TryFrom<RawStructure> for IncidenceStructure {
    type Error = IncidenceError;
    fn try_from(raw: RawStructure) -> Result<Self, Self::Error> {
        IncidenceStructure::new(raw.points, raw.lines)
    }
}

impl From<IncidenceStructure> for RawStructure {
    fn from(s: IncidenceStructure) -> Self {
        RawStructure { points: s.points, lines: s.lines }
    }
}

impl IncidenceStructure {
    pub fn new(points: usize, lines: Vec<Vec<usize>>) -> Result<Self, IncidenceError> {
        let mut sorted = Vec::with_capacity(lines.len());
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for (li, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            if line.len() < 2 {
                return Err(IncidenceError::ShortLine { line: li, size: line.len() });
            }
            if let Some(&p) = line.iter().find(|&&p| p >= points) {
                return Err(IncidenceError::PointOutOfRange { line: li, point: p, points });
            }
            if let Some(w) = line.windows(2).find(|w| w[0] == w[1]) {
                return Err(IncidenceError::RepeatedPoint { line: li, point: w[0] });
            }
            if let Some(&first) = seen.get(&line) {
                return Err(IncidenceError::RepeatedLine { first, second: li });
            }
            seen.insert(line.clone(), li);
            sorted.push(line);
        }
        let mut through = vec![Vec::new(); points];
        for (li, line) in sorted.iter().enumerate() {
            for &p in line {
                through[p].push(li);
            }
        }
        Ok(IncidenceStructure { points, lines: sorted, through })
    }

    /// The `rows × cols` grid: point `r*cols + c`, rows first, then columns.
    pub fn grid(rows: usize, cols: usize) -> Result<Self, IncidenceError> {
        let mut lines: Vec<Vec<usize>> =
            (0..rows).map(|r| (0..cols).map(|c| r * cols + c).collect()).collect();
        lines.extend((0..cols).map(|c| (0..rows).map(|r| r * cols + c).collect()));
        Self::new(rows * cols, lines)
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &[usize] {
        &self.lines[i]
    }

    /// Indices of the lines through `p`, increasing.
    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.through[p]
    }

    pub fn incident(&self, p: usize, line: usize) -> bool {
        self.lines[line].binary_search(&p).is_ok()
    }

    pub fn collinear(&self, p: usize, q: usize) -> bool {
        let (a, b) = (&self.through[p], &self.through[q]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    fn line_lookup(&self) -> HashMap<&[usize], usize> {
        self.lines.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect()
    }

    /// Number of lines through both points (the degree on the diagonal).
    fn common_lines(&self) -> Vec<u32> {
        let n = self.points;
        let mut m = vec![0u32; n * n];
        for line in &self.lines {
            for &p in line {
                for &q in line {
                    m[p * n + q] += 1;
                }
            }
        }
        m
    }
}

/// Which GQ condition fails, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum GqViolation {
    #[error("structure has no points")]
    Empty,
    #[error("point {point} lies on only {degree} line(s)")]
    PointDegree { point: usize, degree: usize },
    #[error("points {p} and {q} lie on two lines, {first} and {second}")]
    TwoLinesOnPoints { p: usize, q: usize, first: usize, second: usize },
    #[error("triangle {p}, {q}, {r}: point {p} is collinear with two points of line {line}")]
    Triangle { p: usize, q: usize, r: usize, line: usize },
    #[error("point {point} is collinear with no point of line {line}")]
    NoCollinearPoint { point: usize, line: usize },
    #[error("incidence graph has diameter {diameter:?}, expected 4")]
    Diameter { diameter: Option<usize> },
    #[error("incidence graph has girth {girth:?}, expected 8")]
    Girth { girth: Option<usize> },
    #[error("line {a} has {size_a} points but line {b} has {size_b}")]
    LineSizes { a: usize, size_a: usize, b: usize, size_b: usize },
    #[error("point {a} is on {degree_a} lines but point {b} is on {degree_b}")]
    PointDegrees { a: usize, degree_a: usize, b: usize, degree_b: usize },
    #[error("order ({s},{t}) is not thick")]
    NotThick { s: u64, t: u64 },
    #[error("axiom form ({axiom}) and graph form ({graph}) disagree")]
    FormsDisagree { axiom: String, graph: String },
}

fn min_degree(st: &IncidenceStructure) -> Result<(), GqViolation> {
    if st.points == 0 {
        return Err(GqViolation::Empty);
    }
    match (0..st.points).find(|&p| st.through[p].len() < 2) {
        Some(p) => Err(GqViolation::PointDegree { point: p, degree: st.through[p].len() }),
        None => Ok(()),
    }
}

/// Axiom form: every point on at least two lines, two points on at most one
/// line, and for each non-incident point/line pair exactly one point of the
/// line collinear with the point.
pub fn axiom_form(st: &IncidenceStructure) -> Result<(), GqViolation> {
    min_degree(st)?;
    let n = st.points;
    let mut join = vec![UNSET; n * n];
    for (li, line) in st.lines.iter().enumerate() {
        for (i, &p) in line.iter().enumerate() {
            for &q in &line[i + 1..] {
                if join[p * n + q] != UNSET {
                    return Err(GqViolation::TwoLinesOnPoints { p, q, first: join[p * n + q], second: li });
                }
                join[p * n + q] = li;
                join[q * n + p] = li;
            }
        }
    }
    for p in 0..n {
        for (li, line) in st.lines.iter().enumerate() {
            if line.binary_search(&p).is_ok() {
                continue;
            }
            let mut hits = line.iter().filter(|&&q| join[p * n + q] != UNSET);
            match (hits.next(), hits.next()) {
                (None, _) => return Err(GqViolation::NoCollinearPoint { point: p, line: li }),
                (Some(&q), Some(&r)) => return Err(GqViolation::Triangle { p, q, r, line: li }),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Points then lines as vertices of one bipartite graph.
pub fn incidence_graph(st: &IncidenceStructure) -> SimpleGraph {
    let n = st.points;
    SimpleGraph::from_edges(
        n + st.lines.len(),
        st.lines.iter().enumerate().flat_map(|(li, l)| l.iter().map(move |&p| (p, n + li))),
    )
}

/// Graph form: every point on at least two lines, and the incidence graph
/// has diameter 4 and girth 8.
pub fn graph_form(st: &IncidenceStructure) -> Result<(), GqViolation> {
    min_degree(st)?;
    let g = incidence_graph(st);
    let diameter = g.diameter();
    if diameter != Some(4) {
        return Err(GqViolation::Diameter { diameter });
    }
    let girth = g.girth();
    if girth != Some(8) {
        return Err(GqViolation::Girth { girth });
    }
    Ok(())
}

/// Runs both formulations, insists they agree, then reads off `(s, t)`.
pub fn validate_gq(st: &IncidenceStructure) -> Result<GqOrder, GqViolation> {
    let axiom = axiom_form(st);
    let graph = graph_form(st);
    match (&axiom, &graph) {
        (Ok(()), Err(e)) => {
            return Err(GqViolation::FormsDisagree { axiom: "holds".into(), graph: e.to_string() })
        }
        (Err(e), Ok(())) => {
            return Err(GqViolation::FormsDisagree { axiom: e.to_string(), graph: "holds".into() })
        }
        _ => {}
    }
    axiom?;
    let size = st.lines[0].len();
    if let Some(b) = st.lines.iter().position(|l| l.len() != size) {
        return Err(GqViolation::LineSizes { a: 0, size_a: size, b, size_b: st.lines[b].len() });
    }
    let degree = st.through[0].len();
    if let Some(b) = st.through.iter().position(|l| l.len() != degree) {
        return Err(GqViolation::PointDegrees { a: 0, degree_a: degree, b, degree_b: st.through[b].len() });
    }
    let order = GqOrder::new(size as u64 - 1, degree as u64 - 1);
    if !order.is_thick() {
        return Err(GqViolation::NotThick { s: order.s, t: order.t });
    }
    Ok(order)
}

/// 2-subsets of `{0..5}` in colex order.
pub fn duads() -> Vec<[usize; 2]> {
    (1..6).flat_map(|b| (0..b).map(move |a| [a, b])).collect()
}

/// GQ(2,2): points are the 15 duads of a 6-set (colex), lines the 15
/// synthemes (partitions into three duads, lex by sorted parts).
pub fn build_w2() -> IncidenceStructure {
    let duads = duads();
    let index: HashMap<[usize; 2], usize> = duads.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut synthemes = Vec::new();
    for b in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != b).collect();
        for c in 1..4 {
            let d = rest[0];
            let e = rest[c];
            let others: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != e).collect();
            let mut parts = [[0, b], [d, e], [others[0], others[1]]];
            parts.sort();
            synthemes.push(parts);
        }
    }
    synthemes.sort();
    let lines = synthemes.iter().map(|parts| parts.iter().map(|p| index[p]).collect()).collect();
    IncidenceStructure::new(15, lines).expect("synthemes are well formed")
}

/// Adjacency by shared line.
pub fn collinearity_graph(st: &IncidenceStructure) -> SimpleGraph {
    let mut g = SimpleGraph::empty(st.points);
    for line in &st.lines {
        for (i, &p) in line.iter().enumerate() {
            for &q in &line[i + 1..] {
                g.add_edge(p, q);
            }
        }
    }
    g
}

/// Point `i` of the dual is line `i`; line `j` of the dual is the pencil of
/// point `j`.
pub fn dual(st: &IncidenceStructure) -> Result<IncidenceStructure, IncidenceError> {
    if let Some(p) = (0..st.points).find(|&p| st.through[p].len() < 2) {
        return Err(IncidenceError::DualNeedsTwoLines { point: p, degree: st.through[p].len() });
    }
    IncidenceStructure::new(st.lines.len(), st.through.clone())
}

/// A point permutation together with the line permutation it induces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GeometryAutomorphism {
    pub point_map: Vec<usize>,
    pub line_map: Vec<usize>,
}

impl GeometryAutomorphism {
    pub fn from_point_map(st: &IncidenceStructure, point_map: Vec<usize>) -> Result<Self, IncidenceError> {
        let bad = |reason: String| IncidenceError::NotAnAutomorphism { reason };
        if point_map.len() != st.points {
            return Err(bad(format!("map has {} entries for {} points", point_map.len(), st.points)));
        }
        let mut hit = vec![false; st.points];
        for &q in &point_map {
            if q >= st.points || std::mem::replace(&mut hit[q], true) {
                return Err(bad(format!("image {q} out of range or repeated")));
            }
        }
        let lookup = st.line_lookup();
        let mut line_map = Vec::with_capacity(st.lines.len());
        for (li, line) in st.lines.iter().enumerate() {
            let mut image: Vec<usize> = line.iter().map(|&p| point_map[p]).collect();
            image.sort_unstable();
            match lookup.get(image.as_slice()) {
                Some(&lj) => line_map.push(lj),
                None => return Err(bad(format!("line {li} is not mapped to a line"))),
            }
        }
        Ok(GeometryAutomorphism { point_map, line_map })
    }

    pub fn identity(st: &IncidenceStructure) -> Self {
        GeometryAutomorphism { point_map: (0..st.points).collect(), line_map: (0..st.lines.len()).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.point_map.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.point_map.len()).filter(|&p| self.point_map[p] == p).collect()
    }

    pub fn fixed_lines(&self) -> Vec<usize> {
        (0..self.line_map.len()).filter(|&l| self.line_map[l] == l).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GeometryAutomorphism) -> GeometryAutomorphism {
        GeometryAutomorphism {
            point_map: self.point_map.iter().map(|&p| other.point_map[p]).collect(),
            line_map: self.line_map.iter().map(|&l| other.line_map[l]).collect(),
        }
    }
}

/// `(f, g)`: fixed points, and points moved to a collinear point.
pub fn fixed_point_statistics(st: &IncidenceStructure, aut: &GeometryAutomorphism) -> (u64, u64) {
    let mut f = 0;
    let mut g = 0;
    for (x, &y) in aut.point_map.iter().enumerate() {
        if x == y {
            f += 1;
        } else if st.collinear(x, y) {
            g += 1;
        }
    }
    (f, g)
}

/// Backtracking search for incidence-preserving point bijections from `src`
/// onto `dst`, pruned by point invariants and pairwise common-line counts.
struct Matcher<'a> {
    src: &'a IncidenceStructure,
    n: usize,
    src_common: Vec<u32>,
    dst_common: Vec<u32>,
    src_inv: Vec<Vec<usize>>,
    dst_inv: Vec<Vec<usize>>,
    dst_lines: HashMap<&'a [usize], usize>,
    order: Vec<usize>,
}

fn point_invariant(st: &IncidenceStructure, p: usize) -> Vec<usize> {
    let mut inv: Vec<usize> = st.through[p].iter().map(|&l| st.lines[l].len()).collect();
    inv.sort_unstable();
    inv.insert(0, st.through[p].len());
    inv
}

/// Points most constrained by those already placed come first; ties go to
/// higher degree, then lower index.
fn branching_order(st: &IncidenceStructure, common: &[u32]) -> Vec<usize> {
    let n = st.points;
    let mut placed = vec![false; n];
    let mut score = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let p = (0..n)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| (score[p], st.through[p].len(), std::cmp::Reverse(p)))
            .unwrap();
        placed[p] = true;
        order.push(p);
        for q in 0..n {
            if common[p * n + q] > 0 {
                score[q] += 1;
            }
        }
    }
    order
}

impl<'a> Matcher<'a> {
    fn new(src: &'a IncidenceStructure, dst: &'a IncidenceStructure) -> Self {
        let src_common = src.common_lines();
        let order = branching_order(src, &src_common);
        Matcher {
            src,
            n: src.points,
            dst_common: dst.common_lines(),
            src_common,
            src_inv: (0..src.points).map(|p| point_invariant(src, p)).collect(),
            dst_inv: (0..dst.points).map(|p| point_invariant(dst, p)).collect(),
            dst_lines: dst.line_lookup(),
            order,
        }
    }

    fn compatible(&self, map: &[usize], placed: &[usize], p: usize, q: usize) -> bool {
        let n = self.n;
        self.src_inv[p] == self.dst_inv[q]
            && placed.iter().all(|&x| self.src_common[p * n + x] == self.dst_common[q * n + map[x]])
            && self.src_common[p * n + p] == self.dst_common[q * n + q]
    }

    fn leaf_ok(&self, map: &[usize]) -> bool {
        let mut image = Vec::new();
        self.src.lines.iter().all(|line| {
            image.clear();
            image.extend(line.iter().map(|&p| map[p]));
            image.sort_unstable();
            self.dst_lines.contains_key(image.as_slice())
        })
    }

    /// Calls `visit` on each complete map extending `fixed`; `visit`
    /// returns true to stop. Fixed source points must lead `self.order`.
    fn search(&self, fixed: &[(usize, usize)], visit: &mut dyn FnMut(&[usize]) -> bool) {
        let mut map = vec![UNSET; self.n];
        let mut used = vec![false; self.n];
        for (i, &(p, q)) in fixed.iter().enumerate() {
            debug_assert_eq!(self.order[i], p);
            if used[q] || !self.compatible(&map, &self.order[..i], p, q) {
                return;
            }
            map[p] = q;
            used[q] = true;
        }
        self.extend(&mut map, &mut used, fixed.len(), visit);
    }

    fn extend(&self, map: &mut [usize], used: &mut [bool], depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.n {
            return self.leaf_ok(map) && visit(map);
        }
        let p = self.order[depth];
        for q in 0..self.n {
            if used[q] || !self.compatible(map, &self.order[..depth], p, q) {
                continue;
            }
            map[p] = q;
            used[q] = true;
            let stop = self.extend(map, used, depth + 1, visit);
            map[p] = UNSET;
            used[q] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

fn check_limit(st: &IncidenceStructure) -> Result<(), IncidenceError> {
    if st.points > AUTOMORPHISM_POINT_LIMIT {
        return Err(IncidenceError::ResourceLimit { points: st.points, limit: AUTOMORPHISM_POINT_LIMIT });
    }
    Ok(())
}

/// Exact group order with a base, basic orbit lengths and generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismGroup {
    #[serde(with = "crate::dec")]
    pub order: BigUint,
    pub base: Vec<usize>,
    pub basic_orbit_lengths: Vec<usize>,
    pub generators: Vec<GeometryAutomorphism>,
}

fn orbit_mask(start: usize, gens: &[&Vec<usize>], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Order of the automorphism group as the product of basic orbit lengths.
/// Each level is filled bottom-up: a candidate image of the base point is
/// searched for only if the generators found so far do not already reach it.
pub fn automorphism_group(st: &IncidenceStructure) -> Result<AutomorphismGroup, IncidenceError> {
    check_limit(st)?;
    let n = st.points;
    let m = Matcher::new(st, st);
    let base = m.order.clone();
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut lengths = vec![1usize; n];
    for i in (0..n).rev() {
        let prefix = &base[..i];
        let b = base[i];
        let mut fixed: Vec<(usize, usize)> = prefix.iter().map(|&x| (x, x)).collect();
        fixed.push((b, b));
        let stab = |gens: &[Vec<usize>]| -> Vec<usize> {
            (0..gens.len()).filter(|&k| prefix.iter().all(|&x| gens[k][x] == x)).collect()
        };
        let mut level: Vec<usize> = stab(&gens);
        let mut orbit = orbit_mask(b, &level.iter().map(|&k| &gens[k]).collect::<Vec<_>>(), n);
        for c in 0..n {
            if orbit[c] || m.src_inv[c] != m.src_inv[b] {
                continue;
            }
            fixed[i] = (b, c);
            let mut found = None;
            m.search(&fixed, &mut |map| {
                found = Some(map.to_vec());
                true
            });
            if let Some(g) = found {
                gens.push(g);
                level.push(gens.len() - 1);
                orbit = orbit_mask(b, &level.iter().map(|&k| &gens[k]).collect::<Vec<_>>(), n);
            }
        }
        lengths[i] = orbit.iter().filter(|&&x| x).count();
    }
    let order = lengths.iter().fold(BigUint::from(1u32), |acc, &l| acc * l);
    let generators = gens
        .into_iter()
        .map(|g| GeometryAutomorphism::from_point_map(st, g).expect("search yields automorphisms"))
        .collect();
    Ok(AutomorphismGroup { order, base, basic_orbit_lengths: lengths, generators })
}

/// Every automorphism, by exhaustive backtracking.
pub fn all_automorphisms(st: &IncidenceStructure, limit: usize) -> Result<Vec<GeometryAutomorphism>, IncidenceError> {
    check_limit(st)?;
    let m = Matcher::new(st, st);
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut overflow = false;
    m.search(&[], &mut |map| {
        if maps.len() == limit {
            overflow = true;
            return true;
        }
        maps.push(map.to_vec());
        false
    });
    if overflow {
        return Err(IncidenceError::TooManyAutomorphisms { limit });
    }
    maps.sort();
    Ok(maps
        .into_iter()
        .map(|g| GeometryAutomorphism::from_point_map(st, g).expect("search yields automorphisms"))
        .collect())
}

/// A point bijection carrying the lines of `a` onto the lines of `b`.
pub fn find_isomorphism(a: &IncidenceStructure, b: &IncidenceStructure) -> Result<Option<Vec<usize>>, IncidenceError> {
    check_limit(a)?;
    if a.points != b.points || a.lines.len() != b.lines.len() {
        return Ok(None);
    }
    let m = Matcher::new(a, b);
    let mut found = None;
    m.search(&[], &mut |map| {
        found = Some(map.to_vec());
        true
    });
    Ok(found)
}

/// The seven possible shapes of the fixed substructure of an automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum FixedSubstructureClass {
    NoLines,
    NoPoints,
    AllLinesThroughPoint { point: usize },
    AllPointsOnLine { line: usize },
    Grid { families: (usize, usize) },
    DualGrid { families: (usize, usize) },
    Subquadrangle { s: u64, t: u64, proper: bool },
}

impl FixedSubstructureClass {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::NoLines => "NoLines",
            Self::NoPoints => "NoPoints",
            Self::AllLinesThroughPoint { .. } => "AllLinesThroughPoint",
            Self::AllPointsOnLine { .. } => "AllPointsOnLine",
            Self::Grid { .. } => "Grid",
            Self::DualGrid { .. } => "DualGrid",
            Self::Subquadrangle { .. } => "Subquadrangle",
        }
    }
}

/// Two-colours the vertices `0..k` of the graph with the given edges;
/// returns the class sizes when bipartite and every vertex has an edge.
fn bipartition(k: usize, edges: &[(usize, usize)]) -> Option<(usize, usize)> {
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut colour = vec![UNSET; k];
    let mut sizes = [0usize; 2];
    for start in 0..k {
        if colour[start] != UNSET {
            continue;
        }
        if adj[start].is_empty() {
            return None;
        }
        colour[start] = 0;
        sizes[0] += 1;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if colour[y] == UNSET {
                    colour[y] = 1 - colour[x];
                    sizes[colour[y]] += 1;
                    queue.push_back(y);
                } else if colour[y] == colour[x] {
                    return None;
                }
            }
        }
    }
    Some((sizes[0].min(sizes[1]), sizes[0].max(sizes[1])))
}

/// Classifies the fixed points and lines of `aut`, testing the shapes in
/// the order listed by [`FixedSubstructureClass`] (grid before dual grid).
pub fn classify_fixed(
    st: &IncidenceStructure,
    aut: &GeometryAutomorphism,
) -> Result<FixedSubstructureClass, IncidenceError> {
    let ambient = validate_gq(st).map_err(IncidenceError::NotAGq)?;
    let fixed_pts = aut.fixed_points();
    let fixed_lines = aut.fixed_lines();
    if fixed_lines.is_empty() {
        return Ok(FixedSubstructureClass::NoLines);
    }
    if fixed_pts.is_empty() {
        return Ok(FixedSubstructureClass::NoPoints);
    }
    let mut local = vec![UNSET; st.points];
    for (i, &p) in fixed_pts.iter().enumerate() {
        local[p] = i;
    }
    let restricted: Vec<Vec<usize>> = fixed_lines
        .iter()
        .map(|&l| st.lines[l].iter().filter(|&&p| local[p] != UNSET).map(|&p| local[p]).collect())
        .collect();
    if let Some(k) = restricted.iter().position(|r| r.len() == fixed_pts.len()) {
        return Ok(FixedSubstructureClass::AllPointsOnLine { line: fixed_lines[k] });
    }
    if let Some(i) = (0..fixed_pts.len()).find(|&i| restricted.iter().all(|r| r.contains(&i))) {
        return Ok(FixedSubstructureClass::AllLinesThroughPoint { point: fixed_pts[i] });
    }
    let none = || IncidenceError::NoFixedShape { points: fixed_pts.len(), lines: fixed_lines.len() };

    let mut on = vec![Vec::new(); fixed_pts.len()];
    for (k, r) in restricted.iter().enumerate() {
        for &i in r {
            on[i].push(k);
        }
    }
    if on.iter().all(|ls| ls.len() == 2) && restricted.iter().all(|r| r.len() >= 2) {
        let edges: Vec<(usize, usize)> = on.iter().map(|ls| (ls[0], ls[1])).collect();
        if let Some((a, b)) = bipartition(restricted.len(), &edges) {
            if a >= 2 && a * b == fixed_pts.len() {
                return Ok(FixedSubstructureClass::Grid { families: (a, b) });
            }
        }
    }
    if restricted.iter().all(|r| r.len() == 2) {
        let edges: Vec<(usize, usize)> = restricted.iter().map(|r| (r[0], r[1])).collect();
        if let Some((a, b)) = bipartition(fixed_pts.len(), &edges) {
            if a >= 2 && a * b == restricted.len() {
                return Ok(FixedSubstructureClass::DualGrid { families: (a, b) });
            }
        }
    }
    if restricted.iter().any(|r| r.len() < 2) {
        return Err(none());
    }
    let sub = IncidenceStructure::new(fixed_pts.len(), restricted).map_err(|_| none())?;
    let order = validate_gq(&sub).map_err(|_| none())?;
    let proper = fixed_pts.len() < st.points;
    if proper {
        let ok = subgq_admissible(ambient, SubGqOrder::new(order.s, order.t)).unwrap_or(false);
        if !ok {
            return Err(IncidenceError::InadmissibleSub { ambient, sub: order });
        }
    }
    Ok(FixedSubstructureClass::Subquadrangle { s: order.s, t: order.t, proper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benson::{benson_consistent, BensonData};
    use crate::graph::is_strongly_regular;
    use crate::gq::srg_params;
    use std::collections::BTreeMap;

    #[test]
    fn w2_counts_and_order() {
        let w = build_w2();
        assert_eq!(w.point_count(), 15);
        assert_eq!(w.line_count(), 15);
        assert_eq!(validate_gq(&w), Ok(GqOrder::new(2, 2)));
        // duad {0,1} is point 0; syntheme 01|23|45 is line 0
        assert_eq!(w.line(0), &[0, 5, 14]);
    }

    #[test]
    fn w2_collinearity_is_the_expected_srg() {
        let g = collinearity_graph(&build_w2());
        let p = is_strongly_regular(&g).unwrap();
        assert_eq!(p.vklm(), (15, 6, 1, 3));
        assert_eq!(p, srg_params(GqOrder::new(2, 2)).unwrap());
    }

    #[test]
    fn small_collinearity_graphs() {
        let line = IncidenceStructure::new(3, vec![vec![0, 1, 2]]).unwrap();
        let g = collinearity_graph(&line);
        assert_eq!(g.edge_count(), 3);
        let two = IncidenceStructure::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let g = collinearity_graph(&two);
        assert_eq!(g.edge_count(), 6);
        assert!(!g.adjacent(0, 3));
    }

    #[test]
    fn grid_is_not_thick() {
        let g = IncidenceStructure::grid(3, 3).unwrap();
        assert_eq!(g.line_count(), 6);
        assert_eq!(validate_gq(&g), Err(GqViolation::NotThick { s: 2, t: 1 }));
        let d = dual(&g).unwrap();
        assert_eq!(validate_gq(&d), Err(GqViolation::NotThick { s: 1, t: 2 }));
    }

    #[test]
    fn deleting_a_line_gives_a_witness() {
        let w = build_w2();
        let lines: Vec<Vec<usize>> = w.lines()[1..].to_vec();
        let broken = IncidenceStructure::new(15, lines).unwrap();
        match validate_gq(&broken) {
            Err(GqViolation::NoCollinearPoint { point, line }) => {
                assert!(!broken.incident(point, line));
                assert!(broken.line(line).iter().all(|&q| !broken.collinear(point, q)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_structures_rejected() {
        assert!(matches!(IncidenceStructure::new(3, vec![vec![0]]), Err(IncidenceError::ShortLine { .. })));
        assert!(matches!(
            IncidenceStructure::new(3, vec![vec![0, 3]]),
            Err(IncidenceError::PointOutOfRange { .. })
        ));
        assert!(matches!(
            IncidenceStructure::new(3, vec![vec![0, 1], vec![1, 0]]),
            Err(IncidenceError::RepeatedLine { first: 0, second: 1 })
        ));
        assert!(matches!(
            IncidenceStructure::new(3, vec![vec![1, 1]]),
            Err(IncidenceError::RepeatedPoint { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let w = build_w2();
        let text = serde_json::to_string(&w).unwrap();
        assert!(text.starts_with("{\"points\":15,\"lines\":[[0,5,14]"));
        let back: IncidenceStructure = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<IncidenceStructure>(r#"{"points":2,"lines":[[0,2]]}"#).is_err());
    }

    #[test]
    fn group_orders() {
        let w = automorphism_group(&build_w2()).unwrap();
        assert_eq!(w.order, BigUint::from(720u32));
        let g = automorphism_group(&IncidenceStructure::grid(3, 3).unwrap()).unwrap();
        assert_eq!(g.order, BigUint::from(72u32));
        let line = IncidenceStructure::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(automorphism_group(&line).unwrap().order, BigUint::from(6u32));
        let rect = IncidenceStructure::grid(2, 3).unwrap();
        assert_eq!(automorphism_group(&rect).unwrap().order, BigUint::from(12u32));
    }

    #[test]
    fn enumeration_matches_order() {
        let w = build_w2();
        let all = all_automorphisms(&w, 10_000).unwrap();
        assert_eq!(all.len(), 720);
        assert!(matches!(all_automorphisms(&w, 100), Err(IncidenceError::TooManyAutomorphisms { .. })));
    }

    #[test]
    fn resource_limit() {
        let big = IncidenceStructure::grid(15, 15).unwrap();
        assert!(matches!(automorphism_group(&big), Err(IncidenceError::ResourceLimit { .. })));
    }

    #[test]
    fn double_dual_is_isomorphic() {
        let w = build_w2();
        let d = dual(&w).unwrap();
        assert_eq!(validate_gq(&d), Ok(GqOrder::new(2, 2)));
        let dd = dual(&d).unwrap();
        assert!(find_isomorphism(&w, &dd).unwrap().is_some());
        // GQ(2,2) is self-dual
        assert!(find_isomorphism(&w, &d).unwrap().is_some());
        let g = IncidenceStructure::grid(3, 3).unwrap();
        assert!(find_isomorphism(&g, &dual(&g).unwrap()).unwrap().is_none());
    }

    #[test]
    fn identity_is_the_whole_quadrangle() {
        let w = build_w2();
        let c = classify_fixed(&w, &GeometryAutomorphism::identity(&w)).unwrap();
        assert_eq!(c, FixedSubstructureClass::Subquadrangle { s: 2, t: 2, proper: false });
    }

    #[test]
    fn all_720_classified_and_benson_holds() {
        let w = build_w2();
        let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
        for aut in all_automorphisms(&w, 1000).unwrap() {
            let class = classify_fixed(&w, &aut).unwrap();
            *tally.entry(class.tag()).or_default() += 1;
            let (f, g) = fixed_point_statistics(&w, &aut);
            assert!(benson_consistent(&BensonData::new(GqOrder::new(2, 2), f, g).unwrap()).unwrap());
            if f == 3 && matches!(class, FixedSubstructureClass::AllPointsOnLine { .. }) {
                let pts = aut.fixed_points();
                assert!(pts.iter().all(|&p| w.collinear(p, pts[0]) || p == pts[0]));
            }
        }
        assert_eq!(tally.values().sum::<usize>(), 720);
        let middle = ["AllLinesThroughPoint", "AllPointsOnLine", "Grid"];
        assert!(middle.iter().any(|k| tally.contains_key(k)));
        assert!(tally.contains_key("NoPoints") || tally.contains_key("NoLines"));
    }

    #[test]
    fn syntheme_involution_fixes_a_line() {
        // (01)(23)(45) on duads
        let w = build_w2();
        let sigma = [1, 0, 3, 2, 5, 4];
        let duads = duads();
        let map: Vec<usize> = duads
            .iter()
            .map(|&[a, b]| {
                let mut img = [sigma[a], sigma[b]];
                img.sort();
                duads.iter().position(|&d| d == img).unwrap()
            })
            .collect();
        let aut = GeometryAutomorphism::from_point_map(&w, map).unwrap();
        assert_eq!(fixed_point_statistics(&w, &aut).0, 3);
        assert!(matches!(classify_fixed(&w, &aut).unwrap(), FixedSubstructureClass::AllPointsOnLine { .. }));
    }
}
