use std::collections::BTreeMap;

use crate::combine::drc_combine;
use crate::discount::ContextVector;
use crate::error::{Error, Result};
use crate::frame::Subset;
use crate::mass::MassFunction;

/// The discounting component `m_Θ`, the disjunctive combination of the
/// simple masses `∅ ↦ 1 − α_θ, θ ↦ α_θ`.
///
/// For pairwise disjoint contexts it is evaluated directly:
/// `m_Θ(A) = Π_{θ ⊆ A} α_θ · Π_{θ ⊄ A} (1 − α_θ)` when `A` is the union of
/// the contexts it contains, and zero otherwise. Overlapping contexts are
/// combined one component at a time.
pub fn contextual_component_mass(ctx: &ContextVector) -> MassFunction {
    if contexts_disjoint(ctx) {
        direct_component_mass(ctx)
    } else {
        sequential_component_mass(ctx)
    }
}

fn contexts_disjoint(ctx: &ContextVector) -> bool {
    let mut covered = Subset::EMPTY;
    ctx.contexts().iter().all(|&(theta, _)| {
        let fresh = !covered.intersects(theta);
        covered = covered.union(theta);
        fresh
    })
}

fn direct_component_mass(ctx: &ContextVector) -> MassFunction {
    let frame = ctx.frame().clone();
    let entries: Vec<_> = frame
        .subsets()
        .filter_map(|a| {
            let mut union = Subset::EMPTY;
            let mut mass = 1.0;
            for &(theta, alpha) in ctx.contexts() {
                if theta.is_subset_of(a) {
                    union = union.union(theta);
                    mass *= alpha;
                } else {
                    mass *= 1.0 - alpha;
                }
            }
            (union == a).then_some((a, mass))
        })
        .collect();
    MassFunction::from_computed(frame, entries)
}

fn sequential_component_mass(ctx: &ContextVector) -> MassFunction {
    let mut acc: BTreeMap<Subset, f64> = BTreeMap::from([(Subset::EMPTY, 1.0)]);
    for &(theta, alpha) in ctx.contexts() {
        let mut next = BTreeMap::new();
        for (&b, &v) in &acc {
            *next.entry(b).or_insert(0.0) += v * (1.0 - alpha);
            *next.entry(b.union(theta)).or_insert(0.0) += v * alpha;
        }
        acc = next;
    }
    MassFunction::from_computed(ctx.frame().clone(), acc)
}

/// `m ⊚∪ m_Θ`.
pub fn contextual_discount(m: &MassFunction, ctx: &ContextVector) -> Result<MassFunction> {
    ctx.check_frame(m)?;
    drc_combine(m, &contextual_component_mass(ctx))
}

/// `m({θ}) · Σ_{C ⊆ θ} m_Θ(C)` for a normal `m` and a singleton `θ`.
pub fn contextual_discount_singleton(
    m: &MassFunction,
    ctx: &ContextVector,
    theta: Subset,
) -> Result<f64> {
    ctx.check_frame(m)?;
    m.frame().check(theta)?;
    if !m.is_normal() {
        return Err(Error::NotNormal(m.conflict()));
    }
    if theta.len() != 1 {
        return Err(Error::NotSingleton(theta));
    }
    let mass = m.mass(theta);
    if mass == 0.0 {
        return Ok(0.0);
    }
    Ok(mass * contextual_component_mass(ctx).implicability(theta)?)
}
