//! Benson's congruence for automorphisms of a GQ of order `(s, t)`:
//! `(1+t)f + g ≡ st + 1 (mod s+t)`, where `f` counts fixed points and `g`
//! counts points `x` with `x^θ ≠ x` and `x^θ` collinear with `x`.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::gq::{point_count, GqError, GqOrder};

/// Fixed-point statistics of one automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BensonData {
    pub order: GqOrder,
    pub f: u64,
    pub g: u64,
}

impl BensonData {
    pub fn new(order: GqOrder, f: u64, g: u64) -> Result<Self, GqError> {
        let v = point_count(order);
        if BigUint::from(f) > v || BigUint::from(g) > v {
            return Err(GqError::StatisticOutOfRange { f, g, points: v.to_string() });
        }
        Ok(BensonData { order, f, g })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BensonResidue {
    pub modulus: u64,
    pub residue: u64,
    pub target: u64,
}

impl BensonResidue {
    pub fn consistent(&self) -> bool {
        self.residue == self.target
    }
}

pub fn benson_residue(data: &BensonData) -> Result<BensonResidue, GqError> {
    let GqOrder { s, t } = data.order;
    if !data.order.is_thick() {
        return Err(GqError::NotThick { s, t });
    }
    let m = (s + t) as u128;
    let residue = ((1 + t as u128) * data.f as u128 + data.g as u128) % m;
    let target = (s as u128 * t as u128 + 1) % m;
    Ok(BensonResidue { modulus: m as u64, residue: residue as u64, target: target as u64 })
}

pub fn benson_consistent(data: &BensonData) -> Result<bool, GqError> {
    Ok(benson_residue(data)?.consistent())
}

/// Least `g >= 0` allowed for a fixed-point-free automorphism.
pub fn fpf_min_g(order: GqOrder) -> Result<u64, GqError> {
    let r = benson_residue(&BensonData { order, f: 0, g: 0 })?;
    Ok(r.target)
}

/// True iff `(s+t) ∤ (st+1)`, so every fixed-point-free automorphism moves
/// some point to a collinear one.
pub fn fpf_forces_collinear_pair(order: GqOrder) -> Result<bool, GqError> {
    Ok(fpf_min_g(order)? != 0)
}

/// The arithmetic core of the fixed-line argument: a common divisor `m > 1` of
/// `s` and `t` cannot divide `st + 1`.
pub fn common_factor_forces_collinear_pair(order: GqOrder) -> Result<Option<bool>, GqError> {
    if order.s.gcd(&order.t) > 1 {
        fpf_forces_collinear_pair(order).map(Some)
    } else {
        Ok(None)
    }
}
