//! Discounting operators.
//!
//! * [`classical_discount`]: one rate for the whole frame.
//! * [`contextual_discount`] and [`generalized_contextual_discount`]: the
//!   disjunctive-rule based correction, via the direct component mass or the
//!   canonical disjunctive decomposition respectively.
//! * [`Scheme`]: conservative, proportional and optimistic discounting, which
//!   rescale each focal set by per-context factors and move the removed mass
//!   to the whole frame.

mod classical;
mod contextual;
mod decomposition;
mod schemes;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

pub use classical::classical_discount;
pub use contextual::{
    contextual_component_mass, contextual_discount, contextual_discount_singleton,
};
pub use decomposition::{
    disjunctive_decompose, generalized_contextual_discount, recompose_weights, DisjunctiveWeights,
    MAX_DECOMPOSITION_FRAME,
};
pub use schemes::{
    conservative_discount, grouped_discount, optimistic_discount, proportional_discount, Scheme,
};

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;

/// Contexts `θ ⊆ Ω` paired with discount rates `α_θ ∈ [0, 1]`.
///
/// Contexts are non-empty and pairwise distinct but are not required to
/// partition the frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextVector {
    frame: Frame,
    contexts: Vec<(Subset, f64)>,
}

impl ContextVector {
    pub fn new<I>(frame: Frame, contexts: I) -> Result<ContextVector>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (theta, alpha) in contexts {
            frame.check(theta)?;
            if theta.is_empty() {
                return Err(Error::EmptyContext);
            }
            if !seen.insert(theta) {
                return Err(Error::DuplicateContext(theta));
            }
            if !(0.0..=1.0).contains(&alpha) {
                return Err(Error::AlphaOutOfRange(alpha));
            }
            out.push((theta, alpha));
        }
        Ok(ContextVector {
            frame,
            contexts: out,
        })
    }

    pub fn single(frame: Frame, theta: Subset, alpha: f64) -> Result<ContextVector> {
        ContextVector::new(frame, [(theta, alpha)])
    }

    /// One context per class, in frame order.
    pub fn singletons(frame: Frame, alphas: &[f64]) -> Result<ContextVector> {
        if alphas.len() != frame.size() {
            return Err(Error::FrameMismatch);
        }
        let contexts: Vec<_> = alphas
            .iter()
            .enumerate()
            .map(|(i, &a)| (Subset::singleton(i), a))
            .collect();
        ContextVector::new(frame, contexts)
    }

    /// Concatenation of context vectors whose context sets share no context.
    pub fn concat(parts: &[ContextVector]) -> Result<ContextVector> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Unsupported("no context vectors to concatenate".into()))?;
        let mut seen = HashSet::new();
        let mut contexts = Vec::new();
        for part in parts {
            if part.frame != first.frame {
                return Err(Error::FrameMismatch);
            }
            for &(theta, alpha) in &part.contexts {
                if !seen.insert(theta) {
                    return Err(Error::OverlappingContextSets(theta));
                }
                contexts.push((theta, alpha));
            }
        }
        Ok(ContextVector {
            frame: first.frame.clone(),
            contexts,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn contexts(&self) -> &[(Subset, f64)] {
        &self.contexts
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn alpha(&self, theta: Subset) -> Option<f64> {
        self.contexts
            .iter()
            .find(|(t, _)| *t == theta)
            .map(|&(_, a)| a)
    }

    /// Contexts are pairwise disjoint and cover the frame.
    pub fn is_partition(&self) -> bool {
        let mut covered = Subset::EMPTY;
        for &(theta, _) in &self.contexts {
            if covered.intersects(theta) {
                return false;
            }
            covered = covered.union(theta);
        }
        covered == self.frame.full()
    }

    fn check_frame(&self, m: &MassFunction) -> Result<()> {
        if m.frame() == &self.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }
}

/// Every operator exposed by name in documents and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Classical,
    Contextual,
    Generalized,
    Conservative,
    Proportional,
    Optimistic,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Classical,
        Method::Contextual,
        Method::Generalized,
        Method::Conservative,
        Method::Proportional,
        Method::Optimistic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Classical => "classical",
            Method::Contextual => "contextual",
            Method::Generalized => "generalized",
            Method::Conservative => "conservative",
            Method::Proportional => "proportional",
            Method::Optimistic => "optimistic",
        }
    }

    pub fn scheme(self) -> Option<Scheme> {
        match self {
            Method::Conservative => Some(Scheme::Conservative),
            Method::Proportional => Some(Scheme::Proportional),
            Method::Optimistic => Some(Scheme::Optimistic),
            _ => None,
        }
    }

    /// Applies the operator. Classical discounting requires a single context
    /// equal to the whole frame.
    pub fn apply(self, m: &MassFunction, ctx: &ContextVector) -> Result<MassFunction> {
        match self {
            Method::Classical => match ctx.contexts() {
                [(theta, alpha)] if *theta == ctx.frame().full() => {
                    ctx.check_frame(m)?;
                    classical_discount(m, *alpha)
                }
                _ => Err(Error::Unsupported(
                    "classical discounting needs exactly one context covering the frame".into(),
                )),
            },
            Method::Contextual => contextual_discount(m, ctx),
            Method::Generalized => generalized_contextual_discount(m, ctx),
            Method::Conservative => conservative_discount(m, ctx),
            Method::Proportional => proportional_discount(m, ctx),
            Method::Optimistic => optimistic_discount(m, ctx),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        let s = s.trim().to_ascii_lowercase();
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s || (s.len() == 1 && m.short() == Some(s.as_str())))
            .ok_or_else(|| Error::Unsupported(format!("unknown scheme `{s}`")))
    }
}

impl Method {
    fn short(self) -> Option<&'static str> {
        match self {
            Method::Conservative => Some("c"),
            Method::Proportional => Some("p"),
            Method::Optimistic => Some("o"),
            _ => None,
        }
    }
}
