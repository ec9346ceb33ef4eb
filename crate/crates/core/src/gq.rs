//! Parameter arithmetic for generalised quadrangles of order `(s, t)`.
//!
//! A GQ of order `(s, t)` has `s + 1` points on every line and `t + 1` lines
//! through every point. Thickness (`s, t >= 2`) is required by every
//! feasibility test here; thin orders are representable but rejected with
//! [`GqError::NotThick`], which is a different answer from "infeasible".

use std::fmt;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GqError {
    #[error("order ({s},{t}) is not thick")]
    NotThick { s: u64, t: u64 },
    #[error("order parameters must be positive, got ({s},{t})")]
    Degenerate { s: u64, t: u64 },
    #[error("({s_sub},{t_sub}) equals the ambient order and is not a proper subquadrangle")]
    NotProper { s_sub: u64, t_sub: u64 },
    #[error("subquadrangle chain violation: t' = {t_mid} but s = {s} forces t' = s")]
    ChainViolation { s: u64, t_mid: u64 },
    #[error("subquadrangle chain needs s > 1, got s = {s}")]
    ChainNeedsThickLines { s: u64 },
    #[error("eigenvalue multiplicities of SRG{params} are not non-negative integers")]
    InfeasibleMultiplicity { params: String },
    #[error("fixed-point statistics f = {f}, g = {g} exceed the {points} points")]
    StatisticOutOfRange { f: u64, g: u64, points: String },
    #[error("bound {which} fails for order ({s},{t})")]
    BoundViolated { which: &'static str, s: u64, t: u64 },
}

/// Candidate order `(s, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GqOrder {
    pub s: u64,
    pub t: u64,
}

impl GqOrder {
    pub const fn new(s: u64, t: u64) -> Self {
        GqOrder { s, t }
    }

    pub fn is_thick(&self) -> bool {
        self.s >= 2 && self.t >= 2
    }

    pub fn dual(&self) -> GqOrder {
        GqOrder::new(self.t, self.s)
    }

    fn require_thick(&self) -> Result<(), GqError> {
        if self.is_thick() {
            Ok(())
        } else {
            Err(GqError::NotThick { s: self.s, t: self.t })
        }
    }

    fn st1(&self) -> BigUint {
        BigUint::from(self.s) * self.t + 1u32
    }
}

impl fmt::Display for GqOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

/// Order `(s', t')` of a candidate proper subquadrangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubGqOrder {
    pub s_sub: u64,
    pub t_sub: u64,
}

impl SubGqOrder {
    pub const fn new(s_sub: u64, t_sub: u64) -> Self {
        SubGqOrder { s_sub, t_sub }
    }
}

/// Number of points, `(s+1)(st+1)`.
pub fn point_count(order: GqOrder) -> BigUint {
    (BigUint::from(order.s) + 1u32) * order.st1()
}

/// Number of lines, `(t+1)(st+1)`.
pub fn line_count(order: GqOrder) -> BigUint {
    (BigUint::from(order.t) + 1u32) * order.st1()
}

/// Higman's inequality: `s <= t^2` and `t <= s^2`.
pub fn higman_ok(order: GqOrder) -> Result<bool, GqError> {
    order.require_thick()?;
    let (s, t) = (order.s as u128, order.t as u128);
    Ok(s <= t * t && t <= s * s)
}

/// `(s + t) | st(s+1)(t+1)`.
pub fn divisibility_ok(order: GqOrder) -> Result<bool, GqError> {
    order.require_thick()?;
    let s = BigUint::from(order.s);
    let t = BigUint::from(order.t);
    let lhs = &s * &t * (&s + 1u32) * (&t + 1u32);
    Ok((lhs % (&s + &t)) == BigUint::from(0u32))
}

/// The same condition in the form `(s + t) | st(st+1)`. Both forms agree
/// because `(s+1)(t+1) ≡ st+1 (mod s+t)`.
pub fn divisibility_ok_alt(order: GqOrder) -> Result<bool, GqError> {
    order.require_thick()?;
    let s = BigUint::from(order.s);
    let t = BigUint::from(order.t);
    let st = &s * &t;
    let lhs = &st * (&st + 1u32);
    Ok((lhs % (&s + &t)) == BigUint::from(0u32))
}

pub fn is_feasible(order: GqOrder) -> bool {
    order.is_thick()
        && higman_ok(order).unwrap_or(false)
        && divisibility_ok(order).unwrap_or(false)
}

/// Every thick feasible `(s, t)` with `(s+1)(st+1) = v`, ascending in `s`.
///
/// `s + 1` runs over the divisors of `v`. Since `t <= s^2` forces
/// `v <= (s+1)(s^3+1)` and `s <= t^2` forces `s^5 < v^2`, only divisors in
/// `[v^(1/4), v^(2/5) + 1]` can work; the upper cut prunes the divisor
/// listing, the lower one is left to the Higman test.
pub fn enumerate_orders(v: &BigUint) -> Vec<GqOrder> {
    let mut out = Vec::new();
    if *v < BigUint::from(3u32) {
        return out;
    }
    // s^5 < v^2  =>  s <= iroot(v^2, 5)
    let s_cap = arith::iroot(&(v * v), 5);
    let d_cap = &s_cap + 1u32;
    let factors = arith::factorize(v);
    for d in arith::divisors_up_to(&factors, &d_cap) {
        if d < BigUint::from(3u32) {
            continue;
        }
        let s = &d - 1u32;
        let q = v / &d - 1u32;
        let (t, rem) = q.div_rem(&s);
        if rem != BigUint::from(0u32) {
            continue;
        }
        let (Some(s), Some(t)) = (arith::to_u64(&s), arith::to_u64(&t)) else {
            continue;
        };
        let order = GqOrder::new(s, t);
        if is_feasible(order) {
            out.push(order);
        }
    }
    out
}

/// Every `s` in `[2, s_max]` for which the point count of a GQ of order
/// `(s, s)` is a perfect power `delta^k` with `k >= 2`, as `(s, delta, k)`.
pub fn nagell_ljunggren_scan(s_max: u64) -> Vec<(u64, BigUint, u32)> {
    let mut out = Vec::new();
    for s in 2..=s_max {
        let v = point_count(GqOrder::new(s, s));
        for (delta, k) in arith::perfect_power_decompositions(&v) {
            out.push((s, delta, k));
        }
    }
    out
}

/// Feasible thick `(s, t)` with `s, t <= limit`, where `s+1 | t+1` or
/// `t+1 | s+1`, and `gcd(s, t) = 1`. Always empty if the coprimality argument
/// holds on the range.
pub fn coprime_sweep(limit: u64) -> Vec<GqOrder> {
    let mut out = Vec::new();
    for s in 2..=limit {
        for t in 2..=limit {
            let o = GqOrder::new(s, t);
            let nested = (t + 1) % (s + 1) == 0 || (s + 1) % (t + 1) == 0;
            if nested && is_feasible(o) && s.gcd(&t) == 1 {
                out.push(o);
            }
        }
    }
    out
}

/// A proper subquadrangle of order `(s', t')` needs `s' = s` or `s't' <= s`.
pub fn subgq_admissible(ambient: GqOrder, sub: SubGqOrder) -> Result<bool, GqError> {
    ambient.require_thick()?;
    if sub.s_sub == 0 || sub.t_sub == 0 {
        return Err(GqError::Degenerate { s: sub.s_sub, t: sub.t_sub });
    }
    if sub.s_sub == ambient.s && sub.t_sub == ambient.t {
        return Err(GqError::NotProper { s_sub: sub.s_sub, t_sub: sub.t_sub });
    }
    Ok(sub.s_sub == ambient.s || (sub.s_sub as u128) * (sub.t_sub as u128) <= ambient.s as u128)
}

/// For a chain `Q'' < Q' < Q` of proper subquadrangles of orders
/// `(s,t'') < (s,t') < (s,t)` with `s > 1`, the values are forced:
/// `t'' = 1`, `t' = s`, `t = s^2`. Returns `(t'', t)` once `t' = s` is checked.
pub fn subgq_chain_forces(s: u64, t_mid: u64) -> Result<(u64, u64), GqError> {
    if s <= 1 {
        return Err(GqError::ChainNeedsThickLines { s });
    }
    if t_mid != s {
        return Err(GqError::ChainViolation { s, t_mid });
    }
    Ok((1, s * s))
}

/// Exact slack in the three elementary bounds on `v = (s+1)(st+1)`:
/// `(t+1)^5 - v`, `(s+1)^4 - v` and `v^2 - s^5` (the squared form of
/// `v > s^(5/2)`). All three are positive for a feasible order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UsefulBounds {
    #[serde(with = "crate::dec")]
    pub t_plus1_pow5: BigUint,
    #[serde(with = "crate::dec")]
    pub s_plus1_pow4: BigUint,
    #[serde(with = "crate::dec")]
    pub s_pow_5_2_bound: BigUint,
}

pub fn useful_bounds(order: GqOrder) -> Result<UsefulBounds, GqError> {
    order.require_thick()?;
    let v = point_count(order);
    let s = BigUint::from(order.s);
    let t = BigUint::from(order.t);
    let t5 = (&t + 1u32).pow(5);
    let s4 = (&s + 1u32).pow(4);
    let v2 = &v * &v;
    let s5 = s.pow(5);
    let fail = |which| GqError::BoundViolated { which, s: order.s, t: order.t };
    if t5 <= v {
        return Err(fail("v < (t+1)^5"));
    }
    if s4 <= v {
        return Err(fail("v < (s+1)^4"));
    }
    if v2 <= s5 {
        return Err(fail("v^2 > s^5"));
    }
    Ok(UsefulBounds {
        t_plus1_pow5: t5 - &v,
        s_plus1_pow4: s4 - &v,
        s_pow_5_2_bound: v2 - s5,
    })
}

/// Parameters of a strongly regular graph together with the multiplicities
/// of its two restricted eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    /// Multiplicity of the positive restricted eigenvalue.
    pub m_plus: u64,
    /// Multiplicity of the negative restricted eigenvalue.
    pub m_minus: u64,
}

impl SrgParams {
    /// Builds the record from `(v, k, λ, μ)`, checking the counting identity
    /// `k(k-λ-1) = (v-k-1)μ` and integrality of the multiplicities.
    pub fn from_vklm(v: u64, k: u64, lambda: u64, mu: u64) -> Result<SrgParams, GqError> {
        let bad = || GqError::InfeasibleMultiplicity {
            params: format!("({v},{k},{lambda},{mu})"),
        };
        let (vi, ki, li, mi) = (v as i128, k as i128, lambda as i128, mu as i128);
        if vi < 2 || ki >= vi || ki * (ki - li - 1) != (vi - ki - 1) * mi {
            return Err(bad());
        }
        if mi == 0 {
            // disjoint union of cliques: eigenvalues k, -1
            let cliques = vi / (ki + 1);
            if cliques * (ki + 1) != vi {
                return Err(bad());
            }
            return Ok(SrgParams { v, k, lambda, mu, m_plus: (cliques - 1) as u64, m_minus: (vi - cliques) as u64 });
        }
        let disc = (li - mi) * (li - mi) + 4 * (ki - mi);
        let root = disc.sqrt();
        if root * root == disc {
            let r2 = (li - mi) + root; // 2r
            let s2 = (li - mi) - root; // 2s
            // f = -(k + (v-1)s)/(r-s), with r - s = root
            let num = -(2 * ki + (vi - 1) * s2);
            if num % (2 * root) != 0 {
                return Err(bad());
            }
            let f = num / (2 * root);
            let g = vi - 1 - f;
            if f < 0 || g < 0 || r2 % 2 != 0 || s2 % 2 != 0 {
                return Err(bad());
            }
            Ok(SrgParams { v, k, lambda, mu, m_plus: f as u64, m_minus: g as u64 })
        } else {
            // conference-graph case: irrational eigenvalues with equal multiplicities
            if 2 * ki + (vi - 1) * (li - mi) != 0 || (vi - 1) % 2 != 0 {
                return Err(bad());
            }
            let m = ((vi - 1) / 2) as u64;
            Ok(SrgParams { v, k, lambda, mu, m_plus: m, m_minus: m })
        }
    }

    pub fn vklm(&self) -> (u64, u64, u64, u64) {
        (self.v, self.k, self.lambda, self.mu)
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Collinearity-graph parameters `((s+1)(st+1), s(t+1), s-1, t+1)`.
pub fn srg_params(order: GqOrder) -> Result<SrgParams, GqError> {
    order.require_thick()?;
    let v = arith::to_u64(&point_count(order)).ok_or_else(|| GqError::InfeasibleMultiplicity {
        params: format!("order {order} (point count exceeds 64 bits)"),
    })?;
    SrgParams::from_vklm(v, order.s * (order.t + 1), order.s - 1, order.t + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: u64, t: u64) -> GqOrder {
        GqOrder::new(s, t)
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn counts() {
        assert_eq!(point_count(o(2, 2)), big(15));
        assert_eq!(point_count(o(57, 57)), big(188_500));
        assert_eq!(point_count(o(76, 449)), big(2_627_625));
        assert_eq!(line_count(o(2, 2)), big(15));
        assert_eq!(line_count(o(3, 5)), big(96));
        assert_eq!(line_count(o(4, 2)), big(27));
    }

    #[test]
    fn higman_and_divisibility() {
        assert_eq!(higman_ok(o(2, 4)), Ok(true));
        assert_eq!(higman_ok(o(2, 7)), Ok(false));
        assert_eq!(higman_ok(o(11, 19)), Ok(true));
        assert_eq!(divisibility_ok(o(3, 5)), Ok(true));
        assert_eq!(divisibility_ok(o(15, 17)), Ok(true));
        assert_eq!(divisibility_ok(o(2, 2)), Ok(true));
        assert_eq!(higman_ok(o(1, 5)), Err(GqError::NotThick { s: 1, t: 5 }));
        assert!(divisibility_ok(o(5, 1)).is_err());
    }

    #[test]
    fn feasibility() {
        assert!(is_feasible(o(4, 2)));
        assert!(!is_feasible(o(2, 7)));
        assert!(!is_feasible(o(1, 5)));
        assert!(!is_feasible(o(0, 0)));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_orders(&big(2520)), vec![o(11, 19)]);
        assert_eq!(enumerate_orders(&big(45)), vec![o(4, 2)]);
        assert!(enumerate_orders(&big(75_075)).is_empty());
        assert_eq!(enumerate_orders(&big(61_776)), vec![o(25, 95), o(35, 49)]);
        assert!(enumerate_orders(&big(1)).is_empty());
        assert!(enumerate_orders(&big(36)).is_empty());
        assert!(enumerate_orders(&big(10)).is_empty());
    }

    #[test]
    fn enumerate_matches_brute_force_small() {
        for v in 1..3000u64 {
            let mut brute = Vec::new();
            for s in 2..v {
                if v % (s + 1) != 0 {
                    continue;
                }
                let q = v / (s + 1) - 1;
                if q % s == 0 && is_feasible(o(s, q / s)) {
                    brute.push(o(s, q / s));
                }
            }
            assert_eq!(enumerate_orders(&big(v)), brute, "v = {v}");
        }
    }

    #[test]
    fn nagell_ljunggren() {
        assert!(nagell_ljunggren_scan(6).is_empty());
        let hits = nagell_ljunggren_scan(100);
        assert_eq!(hits, vec![(7, big(20), 2)]);
    }

    #[test]
    fn coprime_small() {
        assert!(coprime_sweep(2).is_empty());
        assert!(coprime_sweep(20).is_empty());
    }

    #[test]
    fn subquadrangles() {
        assert_eq!(subgq_admissible(o(4, 4), SubGqOrder::new(4, 2)), Ok(true));
        assert_eq!(subgq_admissible(o(4, 4), SubGqOrder::new(2, 2)), Ok(true));
        assert_eq!(subgq_admissible(o(4, 4), SubGqOrder::new(3, 2)), Ok(false));
        assert!(matches!(
            subgq_admissible(o(4, 4), SubGqOrder::new(4, 4)),
            Err(GqError::NotProper { .. })
        ));
        assert_eq!(subgq_chain_forces(4, 4), Ok((1, 16)));
        assert_eq!(subgq_chain_forces(2, 2), Ok((1, 4)));
        assert_eq!(subgq_chain_forces(4, 3), Err(GqError::ChainViolation { s: 4, t_mid: 3 }));
    }

    #[test]
    fn useful_examples() {
        let b = useful_bounds(o(2, 2)).unwrap();
        assert_eq!(b.t_plus1_pow5, big(243 - 15));
        assert_eq!(b.s_plus1_pow4, big(81 - 15));
        assert_eq!(b.s_pow_5_2_bound, big(225 - 32));
        let b = useful_bounds(o(57, 57)).unwrap();
        assert_eq!(b.t_plus1_pow5, big(656_356_768 - 188_500));
        let b = useful_bounds(o(76, 449)).unwrap();
        assert_eq!(b.s_plus1_pow4, big(35_153_041 - 2_627_625));
    }

    #[test]
    fn srg_examples() {
        let p = srg_params(o(2, 2)).unwrap();
        assert_eq!(p.vklm(), (15, 6, 1, 3));
        assert_eq!((p.m_plus, p.m_minus), (9, 5));
        assert_eq!(srg_params(o(9, 3)).unwrap().vklm(), (280, 36, 8, 4));
        assert_eq!(srg_params(o(57, 57)).unwrap().k, 3306);
        // Petersen graph and the pentagon (conference graph)
        let pet = SrgParams::from_vklm(10, 3, 0, 1).unwrap();
        assert_eq!((pet.m_plus, pet.m_minus), (5, 4));
        let c5 = SrgParams::from_vklm(5, 2, 0, 1).unwrap();
        assert_eq!((c5.m_plus, c5.m_minus), (2, 2));
        assert!(SrgParams::from_vklm(15, 6, 1, 2).is_err());
    }
}
