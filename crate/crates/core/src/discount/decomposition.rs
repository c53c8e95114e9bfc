//! Canonical disjunctive decomposition of subnormal mass functions.
//!
//! A mass function with `b(B) > 0` everywhere factors uniquely as the
//! disjunctive combination of two-point components `∅ ↦ v(A), A ↦ 1 − v(A)`
//! over all `A ≠ ∅`. The weights are recovered from the Möbius transform of
//! `ln b`; recomposition runs the same transforms backwards.

use crate::discount::ContextVector;
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::lattice;
use crate::mass::{MassFunction, SignedMassVector};

/// Largest frame accepted by the dense decomposition.
pub const MAX_DECOMPOSITION_FRAME: usize = 20;

/// Disjunctive weights `A ↦ v(A)` for every non-empty subset.
#[derive(Debug, Clone, PartialEq)]
pub struct DisjunctiveWeights {
    frame: Frame,
    // indexed by bitmask; slot 0 is unused and kept at 1
    weights: Vec<f64>,
}

impl DisjunctiveWeights {
    /// All weights 1 except those listed.
    pub fn new<I>(frame: Frame, weights: I) -> Result<DisjunctiveWeights>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        check_size(&frame)?;
        let mut dense = vec![1.0; frame.powerset_len()];
        for (subset, weight) in weights {
            frame.check(subset)?;
            if subset.is_empty() {
                return Err(Error::EmptyContext);
            }
            if !weight.is_finite() || weight < 0.0 {
                return Err(Error::InvalidWeight { subset, weight });
            }
            dense[subset.index()] = weight;
        }
        Ok(DisjunctiveWeights {
            frame,
            weights: dense,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn weight(&self, subset: Subset) -> f64 {
        if subset.is_empty() {
            return 1.0;
        }
        self.weights.get(subset.index()).copied().unwrap_or(1.0)
    }

    /// `(A, v(A))` for every non-empty `A`, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &w)| (Subset(i as u32), w))
    }

    /// Multiplies `v(A)` by `factor`.
    pub fn scale(&mut self, subset: Subset, factor: f64) -> Result<()> {
        self.frame.check(subset)?;
        if subset.is_empty() {
            return Err(Error::EmptyContext);
        }
        let w = self.weights[subset.index()] * factor;
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidWeight { subset, weight: w });
        }
        self.weights[subset.index()] = w;
        Ok(())
    }
}

fn check_size(frame: &Frame) -> Result<()> {
    if frame.size() > MAX_DECOMPOSITION_FRAME {
        Err(Error::FrameTooLarge {
            size: frame.size(),
            max: MAX_DECOMPOSITION_FRAME,
        })
    } else {
        Ok(())
    }
}

/// `v(A) = Π_{B ⊆ A} b(B)^{(−1)^{|A|−|B|+1}}`, evaluated as
/// `exp(−Möbius(ln b)(A))`.
pub fn disjunctive_decompose(m: &MassFunction) -> Result<DisjunctiveWeights> {
    let frame = m.frame().clone();
    check_size(&frame)?;
    let mut log_b = m.implicabilities();
    if let Some(i) = log_b.iter().position(|&b| b <= 0.0) {
        return Err(Error::ZeroImplicability(Subset(i as u32)));
    }
    for b in log_b.iter_mut() {
        *b = b.ln();
    }
    lattice::subset_mobius(&mut log_b);
    let mut weights: Vec<f64> = log_b.into_iter().map(|x| (-x).exp()).collect();
    weights[0] = 1.0;
    Ok(DisjunctiveWeights { frame, weights })
}

/// Disjunctive combination of all components `∅ ↦ v(A), A ↦ 1 − v(A)`.
///
/// `b(B) = Π_{A ⊄ B} v(A)`, accumulated in log space; zero weights are
/// counted separately so `b` vanishes exactly where one of them applies.
pub fn recompose_weights(w: &DisjunctiveWeights) -> Result<MassFunction> {
    recompose_signed(w)?.into_mass_function()
}

pub(crate) fn recompose_signed(w: &DisjunctiveWeights) -> Result<SignedMassVector> {
    let n = w.frame.powerset_len();
    let mut log_v = vec![0.0; n];
    let mut zeros = vec![0.0; n];
    for (subset, weight) in w.iter() {
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::InvalidWeight { subset, weight });
        }
        if weight == 0.0 {
            zeros[subset.index()] = 1.0;
        } else {
            log_v[subset.index()] = weight.ln();
        }
    }
    let total_log: f64 = log_v.iter().sum();
    let total_zeros: f64 = zeros.iter().sum();
    lattice::subset_sums(&mut log_v);
    lattice::subset_sums(&mut zeros);
    let implicabilities: Vec<f64> = log_v
        .iter()
        .zip(&zeros)
        .map(|(&inside, &zeros_inside)| {
            if total_zeros - zeros_inside > 0.5 {
                0.0
            } else {
                (total_log - inside).exp()
            }
        })
        .collect();
    SignedMassVector::from_implicabilities(w.frame.clone(), implicabilities)
}

/// Scales `v(θ)` by `1 − α_θ` for each context, then recomposes.
pub fn generalized_contextual_discount(
    m: &MassFunction,
    ctx: &ContextVector,
) -> Result<MassFunction> {
    ctx.check_frame(m)?;
    let mut weights = disjunctive_decompose(m)?;
    for &(theta, alpha) in ctx.contexts() {
        weights.scale(theta, 1.0 - alpha)?;
    }
    recompose_weights(&weights)
}
