//! Belief-function mass functions and their discounting.
//!
//! Subsets of a [`Frame`] are bitmasks ([`Subset`]); a [`MassFunction`]
//! stores its focal sets sparsely. On top of that sit the disjunctive rule
//! of combination ([`drc_combine`]), five discounting operators
//! ([`discount`]), and exponential ageing of evidence ([`temporal`]).
//!
//! ```
//! use credal::{ContextVector, Frame, MassFunction, Scheme};
//!
//! let frame = Frame::new(["a", "h", "r"])?;
//! let m = MassFunction::from_labels(frame.clone(), [(vec!["a"], 0.5), (vec!["r"], 0.5)])?;
//! let ctx = ContextVector::single(frame.clone(), frame.subset(["h", "r"])?, 0.4)?;
//! let out = Scheme::Conservative.apply(&m, &ctx)?;
//! assert!((out.mass(frame.full()) - 0.2).abs() < 1e-12);
//! # Ok::<(), credal::Error>(())
//! ```

pub mod combine;
pub mod discount;
pub mod doc;
pub mod error;
pub mod frame;
pub mod golden;
pub mod lattice;
pub mod mass;
pub mod temporal;

pub use combine::drc_combine;
pub use discount::{
    classical_discount, conservative_discount, contextual_component_mass, contextual_discount,
    contextual_discount_singleton, disjunctive_decompose, generalized_contextual_discount,
    grouped_discount, optimistic_discount, proportional_discount, recompose_weights, ContextVector,
    DisjunctiveWeights, Method, Scheme,
};
pub use error::{Error, Result};
pub use frame::{Frame, Subset, MAX_FRAME_SIZE};
pub use mass::{MassFunction, SignedMassVector, MASS_TOLERANCE};
pub use temporal::{
    alphas_from_kappa, contextual_alphas_from_kappa, kappa_at, lambda_from_fraction_life,
    lambda_from_half_life, raw_contextual_alphas, scheme_alphas_from_kappa,
    temporal_contextual_discount, temporal_discount, AlphaMode, Decay, DecaySpec, KappaVector,
};
