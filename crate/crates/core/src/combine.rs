//! Disjunctive rule of combination.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::mass::MassFunction;

/// `(m1 ⊚∪ m2)(A) = Σ_{B ∪ C = A} m1(B) · m2(C)`, enumerating focal pairs.
pub fn drc_combine(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    if m1.frame() != m2.frame() {
        return Err(Error::FrameMismatch);
    }
    let mut out = BTreeMap::new();
    for (b, x) in m1.focal() {
        for (c, y) in m2.focal() {
            *out.entry(b.union(c)).or_insert(0.0) += x * y;
        }
    }
    Ok(MassFunction::from_computed(m1.frame().clone(), out))
}
