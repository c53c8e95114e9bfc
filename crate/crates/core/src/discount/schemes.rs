//! Conservative, proportional and optimistic discounting.
//!
//! Each scheme multiplies `m(A)` for `∅ ≠ A ⊊ Ω` by a product of per-context
//! factors and `m(∅)` by `Π_θ (1 − α_θ)`. Whatever is removed lands on `Ω`,
//! so the output always carries the same total mass as the input.

use std::fmt;
use std::str::FromStr;

use crate::discount::ContextVector;
use crate::error::{Error, Result};
use crate::frame::Subset;
use crate::mass::MassFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Discount by every context `A` intersects.
    Conservative,
    /// Like conservative, with each rate weighted by `|A ∩ θ| / |A|`.
    Proportional,
    /// Discount only by contexts containing `A`.
    Optimistic,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [
        Scheme::Conservative,
        Scheme::Proportional,
        Scheme::Optimistic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Conservative => "conservative",
            Scheme::Proportional => "proportional",
            Scheme::Optimistic => "optimistic",
        }
    }

    /// Multiplier applied to `m(A)` for `A ⊊ Ω`. Not meaningful for `Ω`,
    /// which receives the residual.
    pub fn factor(self, subset: Subset, ctx: &ContextVector) -> f64 {
        let contexts = ctx.contexts().iter();
        if subset.is_empty() {
            return contexts.map(|&(_, alpha)| 1.0 - alpha).product();
        }
        match self {
            Scheme::Conservative => contexts
                .filter(|(theta, _)| subset.intersects(*theta))
                .map(|&(_, alpha)| 1.0 - alpha)
                .product(),
            Scheme::Proportional => {
                let size = subset.len() as f64;
                contexts
                    .filter(|(theta, _)| subset.intersects(*theta))
                    .map(|&(theta, alpha)| {
                        let overlap = subset.intersection(theta).len() as f64;
                        1.0 - alpha * overlap / size
                    })
                    .product()
            }
            Scheme::Optimistic => contexts
                .filter(|(theta, _)| subset.is_subset_of(*theta))
                .map(|&(_, alpha)| 1.0 - alpha)
                .product(),
        }
    }

    pub fn apply(self, m: &MassFunction, ctx: &ContextVector) -> Result<MassFunction> {
        ctx.check_frame(m)?;
        let full = m.frame().full();
        let mut removed = 0.0;
        let mut entries: Vec<(Subset, f64)> = Vec::with_capacity(m.focal_count() + 1);
        for (a, mass) in m.focal().filter(|&(a, _)| a != full) {
            let kept = mass * self.factor(a, ctx);
            removed += mass - kept;
            entries.push((a, kept));
        }
        entries.push((full, m.mass(full) + removed));
        Ok(MassFunction::from_computed(m.frame().clone(), entries))
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scheme> {
        match s.parse::<super::Method>()?.scheme() {
            Some(scheme) => Ok(scheme),
            None => Err(Error::Unsupported(format!(
                "`{s}` is not one of conservative, proportional, optimistic"
            ))),
        }
    }
}

pub fn conservative_discount(m: &MassFunction, ctx: &ContextVector) -> Result<MassFunction> {
    Scheme::Conservative.apply(m, ctx)
}

pub fn proportional_discount(m: &MassFunction, ctx: &ContextVector) -> Result<MassFunction> {
    Scheme::Proportional.apply(m, ctx)
}

pub fn optimistic_discount(m: &MassFunction, ctx: &ContextVector) -> Result<MassFunction> {
    Scheme::Optimistic.apply(m, ctx)
}

/// A single discount with the concatenation of `parts`, which must not share
/// any context.
pub fn grouped_discount(
    m: &MassFunction,
    parts: &[ContextVector],
    scheme: Scheme,
) -> Result<MassFunction> {
    let combined = ContextVector::concat(parts)?;
    scheme.apply(m, &combined)
}
