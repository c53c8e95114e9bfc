use crate::error::{Error, Result};
use crate::mass::MassFunction;

/// Scales every `A ⊊ Ω` by `1 − α` and sets `m'(Ω) = (1 − α)·m(Ω) + α`.
pub fn classical_discount(m: &MassFunction, alpha: f64) -> Result<MassFunction> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let full = m.frame().full();
    let keep = 1.0 - alpha;
    let mut entries: Vec<_> = m
        .focal()
        .filter(|&(a, _)| a != full)
        .map(|(a, v)| (a, keep * v))
        .collect();
    entries.push((full, keep * m.mass(full) + alpha));
    Ok(MassFunction::from_computed(m.frame().clone(), entries))
}
