//! Simple undirected graphs on `0..n`, with exhaustive strong-regularity
//! testing.

use std::collections::VecDeque;

use serde::Serialize;

use crate::gq::SrgParams;

/// Adjacency stored as one bitset row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        SimpleGraph { n, words, rows: vec![0; n * words] }
    }

    /// Loops are dropped; repeated edges are harmless.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "edge ({a},{b}) out of range for {} vertices", self.n);
        if a == b {
            return;
        }
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.rows[a * self.words..(a + 1) * self.words]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.row(a)[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbours(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&b| self.adjacent(a, b)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|a| self.degree(a)).sum::<usize>() / 2
    }

    pub fn common_neighbours(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            let d = dist[a].unwrap();
            for b in self.neighbours(a) {
                if dist[b].is_none() {
                    dist[b] = Some(d + 1);
                    queue.push_back(b);
                }
            }
        }
        dist
    }

    /// `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for a in 0..self.n {
            for d in self.bfs(a) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Length of a shortest cycle, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(a) = queue.pop_front() {
                if best.is_some_and(|g| 2 * dist[a] >= g) {
                    break;
                }
                for b in self.neighbours(a) {
                    if dist[b] == usize::MAX {
                        dist[b] = dist[a] + 1;
                        parent[b] = a;
                        queue.push_back(b);
                    } else if parent[a] != b {
                        let len = dist[a] + dist[b] + 1;
                        best = Some(best.map_or(len, |g| g.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// Why a graph failed the strong-regularity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SrgWitness {
    TooSmall,
    NotRegular { a: usize, deg_a: usize, b: usize, deg_b: usize },
    Complete,
    Edgeless,
    LambdaVaries { pair1: (usize, usize), common1: usize, pair2: (usize, usize), common2: usize },
    MuVaries { pair1: (usize, usize), common1: usize, pair2: (usize, usize), common2: usize },
    Multiplicities { v: u64, k: u64, lambda: u64, mu: u64 },
}

/// Exhaustive pair counting. Complete and edgeless graphs are rejected.
pub fn is_strongly_regular(g: &SimpleGraph) -> Result<SrgParams, SrgWitness> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(SrgWitness::TooSmall);
    }
    let k = g.degree(0);
    for a in 1..n {
        let d = g.degree(a);
        if d != k {
            return Err(SrgWitness::NotRegular { a: 0, deg_a: k, b: a, deg_b: d });
        }
    }
    if k == 0 {
        return Err(SrgWitness::Edgeless);
    }
    if k == n - 1 {
        return Err(SrgWitness::Complete);
    }
    let mut lambda: Option<((usize, usize), usize)> = None;
    let mut mu: Option<((usize, usize), usize)> = None;
    for a in 0..n {
        for b in a + 1..n {
            let c = g.common_neighbours(a, b);
            let slot = if g.adjacent(a, b) { &mut lambda } else { &mut mu };
            match slot {
                None => *slot = Some(((a, b), c)),
                Some((p, c0)) if *c0 != c => {
                    let (pair1, common1) = (*p, *c0);
                    return Err(if g.adjacent(a, b) {
                        SrgWitness::LambdaVaries { pair1, common1, pair2: (a, b), common2: c }
                    } else {
                        SrgWitness::MuVaries { pair1, common1, pair2: (a, b), common2: c }
                    });
                }
                _ => {}
            }
        }
    }
    let lambda = lambda.map(|x| x.1).unwrap_or(0) as u64;
    let mu = mu.map(|x| x.1).unwrap_or(0) as u64;
    SrgParams::from_vklm(n as u64, k as u64, lambda, mu).map_err(|_| SrgWitness::Multiplicities {
        v: n as u64,
        k: k as u64,
        lambda,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn pentagon_is_srg() {
        let p = is_strongly_regular(&cycle(5)).unwrap();
        assert_eq!(p.vklm(), (5, 2, 0, 1));
        assert_eq!(cycle(5).diameter(), Some(2));
    }

    #[test]
    fn girths() {
        for n in 3..12 {
            assert_eq!(cycle(n).girth(), Some(n));
        }
        let path = SimpleGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert_eq!(path.girth(), None);
        let mut theta = cycle(8);
        theta.add_edge(0, 4);
        assert_eq!(theta.girth(), Some(5));
    }

    #[test]
    fn hexagon_is_not() {
        assert!(matches!(is_strongly_regular(&cycle(6)), Err(SrgWitness::MuVaries { .. })));
    }

    #[test]
    fn petersen() {
        // Kneser graph K(5,2)
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        let mut g = SimpleGraph::empty(10);
        for (i, p) in pairs.iter().enumerate() {
            for (j, q) in pairs.iter().enumerate() {
                if p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1 {
                    g.add_edge(i, j);
                }
            }
        }
        assert_eq!(is_strongly_regular(&g).unwrap().vklm(), (10, 3, 0, 1));
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn degenerate_graphs() {
        let k4 = SimpleGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(is_strongly_regular(&k4), Err(SrgWitness::Complete));
        assert_eq!(is_strongly_regular(&SimpleGraph::empty(3)), Err(SrgWitness::Edgeless));
        let path = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]);
        assert!(matches!(is_strongly_regular(&path), Err(SrgWitness::NotRegular { .. })));
        let two = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]);
        assert_eq!(two.diameter(), None);
        // two disjoint triangles: SRG(6,2,1,0)
        let tt = SimpleGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(is_strongly_regular(&tt).unwrap().vklm(), (6, 2, 1, 0));
    }
}
