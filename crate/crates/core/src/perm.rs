//! Permutations and permutation groups given by generators.
//!
//! Permutations act on the right: `x^(gh) = (x^g)^h`, so `g.then(&h)` is
//! "apply `g`, then `h`". Group orders come from a deterministic
//! Schreier–Sims stabiliser chain with Schreier trees for transversals.

use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest natural degree accepted by the stabiliser-chain code.
pub const CHAIN_DEGREE_LIMIT: usize = 10_000;
/// Largest action degree that will be materialised.
pub const ACTION_DEGREE_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image list is not a permutation of 0..{degree}")]
    NotBijective { degree: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("{what} of size {size} exceeds the limit {limit}")]
    ResourceLimit { what: &'static str, size: u128, limit: u128 },
    #[error("action is intransitive: the orbit of point 0 has {orbit} of {degree} points")]
    Intransitive { orbit: usize, degree: usize },
    #[error("orbital of ({base},{rep}) is not self-paired")]
    NotSelfPaired { base: usize, rep: usize },
    #[error("q = {q} is not a supported field size (primes only)")]
    InvalidField { q: u64 },
    #[error("invalid specification: {0}")]
    BadSpec(String),
    #[error("point set is not closed under the group: {0}")]
    NotClosed(String),
    #[error("point {point} is outside 0..{degree}")]
    PointOutOfRange { point: usize, degree: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { img: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotBijective { degree: n });
            }
        }
        Ok(Permutation { img: images.into_iter().map(|x| x as u32).collect() })
    }

    pub(crate) fn from_u32(img: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(img.iter().map(|&x| x as usize).collect()).is_ok());
        Permutation { img }
    }

    /// Cycles are lists of points; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= n || std::mem::replace(&mut touched[x], true) {
                    return Err(PermError::NotBijective { degree: n });
                }
                img[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        Self::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.img
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { img: self.img.iter().map(|&x| other.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { img: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.img.iter().enumerate().position(|(i, &x)| i as u32 != x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.img.len()];
        let mut out = Vec::new();
        for start in 0..self.img.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// One level of the stabiliser chain: base point, the strong generators
/// fixing all earlier base points, and a Schreier tree for the orbit.
#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    inv_gens: Vec<Permutation>,
    /// `edge[x]` is the generator that reached `x` in the tree.
    edge: Vec<u32>,
    orbit: Vec<usize>,
}

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut edge = vec![NOT_IN_ORBIT; degree];
        edge[base] = ROOT;
        Level { base, gens: Vec::new(), inv_gens: Vec::new(), edge, orbit: vec![base] }
    }

    fn add_gen(&mut self, g: Permutation) {
        self.inv_gens.push(g.inverse());
        self.gens.push(g);
        // re-close the orbit under all generators
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for (k, g) in self.gens.iter().enumerate() {
                let y = g.apply(x);
                if self.edge[y] == NOT_IN_ORBIT {
                    self.edge[y] = k as u32;
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }

    /// `u_x`, carrying the base point to `x`.
    fn transversal(&self, x: usize) -> Permutation {
        let mut word = Vec::new();
        let mut y = x;
        while self.edge[y] != ROOT {
            let k = self.edge[y] as usize;
            word.push(k);
            y = self.inv_gens[k].apply(y);
        }
        let mut u = Permutation::identity(self.edge.len());
        for &k in word.iter().rev() {
            u = u.then(&self.gens[k]);
        }
        u
    }

    /// `h * u_{b^h}^{-1}`, or `None` when `b^h` is outside the orbit.
    fn strip_once(&self, h: &Permutation) -> Option<Permutation> {
        let mut beta = h.apply(self.base);
        if self.edge[beta] == NOT_IN_ORBIT {
            return None;
        }
        let mut h = h.clone();
        while self.edge[beta] != ROOT {
            let k = self.edge[beta] as usize;
            h = h.then(&self.inv_gens[k]);
            beta = self.inv_gens[k].apply(beta);
        }
        Some(h)
    }
}

/// Base and strong generating set built by deterministic Schreier–Sims.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Result<Self, PermError> {
        if degree > CHAIN_DEGREE_LIMIT {
            return Err(PermError::ResourceLimit {
                what: "stabiliser chain degree",
                size: degree as u128,
                limit: CHAIN_DEGREE_LIMIT as u128,
            });
        }
        Ok(StabChain { degree, levels: Vec::new() })
    }

    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self, PermError> {
        let mut chain = Self::new(degree)?;
        for g in gens {
            chain.add_generator(g)?;
        }
        Ok(chain)
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * l.orbit.len())
    }

    /// Residue after sifting from level `from`, and the level it stopped at.
    fn strip(&self, h: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = h.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            match level.strip_once(&h) {
                Some(next) => h = next,
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (r, j) = self.strip(g, 0);
            j == self.levels.len() && r.is_identity()
        }
    }

    /// Adds `h` to levels `from..=to`, creating level `to` from the first
    /// point `h` moves when the chain is that short.
    fn insert(&mut self, h: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = h.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in from..=to {
            self.levels[l].add_gen(h.clone());
        }
    }

    /// Returns false when `g` was already a member.
    pub fn add_generator(&mut self, g: &Permutation) -> Result<bool, PermError> {
        if g.degree() != self.degree {
            return Err(PermError::DegreeMismatch { expected: self.degree, got: g.degree() });
        }
        let (r, j) = self.strip(g, 0);
        if j == self.levels.len() && r.is_identity() {
            return Ok(false);
        }
        // the residue fixes the first j base points, so it belongs to levels 0..=j
        self.insert(r, 0, j);
        self.saturate(j);
        Ok(true)
    }

    /// Schreier generators at level `i` whose residues are not yet covered.
    fn missing_schreier(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for &beta in &level.orbit {
            let u = level.transversal(beta);
            for g in &level.gens {
                let ug = u.then(g);
                let image = g.apply(beta);
                let h = ug.then(&level.transversal(image).inverse());
                if h.is_identity() {
                    continue;
                }
                let (r, j) = self.strip(&h, i + 1);
                if j < self.levels.len() || !r.is_identity() {
                    return Some((r, j));
                }
            }
        }
        None
    }

    fn saturate(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            match self.missing_schreier(i as usize) {
                Some((r, j)) => {
                    self.insert(r, i as usize + 1, j);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch { expected: degree, got: g.degree() });
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Whether every generator is even, i.e. the group lies in `A_n`.
    pub fn is_even(&self) -> bool {
        self.generators.iter().all(Permutation::is_even)
    }

    pub fn stab_chain(&self) -> Result<StabChain, PermError> {
        StabChain::from_generators(self.degree, &self.generators)
    }

    pub fn order(&self) -> Result<BigUint, PermError> {
        Ok(self.stab_chain()?.order())
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            let cyc: Vec<usize> = (0..n).collect();
            gens.push(Permutation::from_cycles(n, &[&cyc]).unwrap());
        }
        PermGroup { degree: n, generators: gens }
    }

    /// `(0 1 2)` with the `n`-cycle (odd `n`) or the `(n-1)`-cycle on
    /// `1..n` (even `n`).
    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1, 2]]).unwrap());
        }
        if n >= 4 {
            let cyc: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
            gens.push(Permutation::from_cycles(n, &[&cyc]).unwrap());
        }
        PermGroup { degree: n, generators: gens }
    }

    pub fn load(path: &Path) -> Result<Self, PermError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PermError::BadSpec(format!("{}: {e}", path.display())))?;
        let file: GeneratorFile = serde_json::from_str(&text)
            .map_err(|e| PermError::BadSpec(format!("{}: {e}", path.display())))?;
        file.try_into()
    }

    pub fn to_file(&self) -> GeneratorFile {
        GeneratorFile { degree: self.degree, generators: self.generators.iter().map(|g| g.images()).collect() }
    }
}

/// JSON layout: `{"degree": n, "generators": [[images...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl TryFrom<GeneratorFile> for PermGroup {
    type Error = PermError;
    fn try_from(f: GeneratorFile) -> Result<Self, PermError> {
        let gens = f.generators.into_iter().map(Permutation::from_images).collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(f.degree, gens)
    }
}

fn is_prime_u64(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn primitive_root(q: u64) -> u64 {
    let phi = q - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= q;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % q;
            }
            b = b * b % q;
            e >>= 1;
        }
        r
    };
    (1..q).find(|&g| factors.iter().all(|&p| pow(g, phi / p) != 1)).expect("prime field has a primitive root")
}

/// PSL(2,q), or PGL(2,q) when `extended`, on the `q+1` points of the
/// projective line over the prime field: points `0..q` are field elements
/// and point `q` is infinity. Generators: `x -> x+1`, `x -> gx` with `g` a
/// generator of the squares (PSL) or of all units (PGL), and `x -> -1/x`.
pub fn projective_line_group(q: u64, extended: bool) -> Result<PermGroup, PermError> {
    if !is_prime_u64(q) || q > 10_000 {
        return Err(PermError::InvalidField { q });
    }
    let n = (q + 1) as usize;
    let inf = q;
    let root = primitive_root(q);
    let mult = if extended { root } else { root * root % q };
    let inv = |x: u64| -> u64 {
        // x^(q-2)
        let mut r = 1u64;
        let mut b = x;
        let mut e = q - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % q;
            }
            b = b * b % q;
            e >>= 1;
        }
        r
    };
    let translate: Vec<usize> = (0..=q).map(|x| if x == inf { inf } else { (x + 1) % q } as usize).collect();
    let scale: Vec<usize> = (0..=q).map(|x| if x == inf { inf } else { x * mult % q } as usize).collect();
    let invert: Vec<usize> = (0..=q)
        .map(|x| {
            if x == inf {
                0
            } else if x == 0 {
                inf
            } else {
                (q - inv(x)) % q
            }
        } as usize)
        .collect();
    let gens = [translate, scale, invert]
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|g| !g.is_identity())
        .collect();
    PermGroup::new(n, gens)
}

/// Named groups accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Alternating(usize),
    Symmetric(usize),
    Psl2(u64),
    Pgl2(u64),
    File(std::path::PathBuf),
}

impl GroupSpec {
    /// `A10`, `S6`, `PSL2:19`, `PGL2:19` or `file:<path>`.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let bad = || PermError::BadSpec(format!("unknown group '{text}'"));
        if let Some(path) = text.strip_prefix("file:") {
            return Ok(GroupSpec::File(path.into()));
        }
        if let Some(q) = text.strip_prefix("PSL2:") {
            return q.parse().map(GroupSpec::Psl2).map_err(|_| bad());
        }
        if let Some(q) = text.strip_prefix("PGL2:") {
            return q.parse().map(GroupSpec::Pgl2).map_err(|_| bad());
        }
        if let Some(n) = text.strip_prefix('A') {
            return n.parse().map(GroupSpec::Alternating).map_err(|_| bad());
        }
        if let Some(n) = text.strip_prefix('S') {
            return n.parse().map(GroupSpec::Symmetric).map_err(|_| bad());
        }
        Err(bad())
    }

    pub fn build(&self) -> Result<PermGroup, PermError> {
        match self {
            GroupSpec::Alternating(n) => Ok(PermGroup::alternating(*n)),
            GroupSpec::Symmetric(n) => Ok(PermGroup::symmetric(*n)),
            GroupSpec::Psl2(q) => projective_line_group(*q, false),
            GroupSpec::Pgl2(q) => projective_line_group(*q, true),
            GroupSpec::File(p) => PermGroup::load(p),
        }
    }
}
