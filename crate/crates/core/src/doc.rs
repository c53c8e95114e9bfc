//! JSON documents for mass functions, context vectors and decay specs.
//!
//! ```json
//! { "frame": ["a","h","r"], "masses": [ {"set": ["a"], "mass": 0.5}, {"set": "*", "mass": 0.5} ] }
//! { "contexts": [ {"set": ["h","r"], "alpha": 0.4} ] }
//! { "decay": [ {"set": ["w1"], "half_life_s": 1.0}, {"set": ["w2"], "lambda": 0.1733},
//!              {"set": ["w3"], "fraction": {"n": 16, "t_s": 4.0}} ] }
//! ```
//!
//! `"set": []` is the empty set and `"set": "*"` the whole frame. Omitted
//! subsets carry no mass.

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::discount::ContextVector;
use crate::error::Error;
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;
use crate::temporal::{Decay, DecaySpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {source}")]
    Field {
        field: String,
        #[source]
        source: Error,
    },
}

impl DocumentError {
    fn field(field: impl Into<String>, source: Error) -> DocumentError {
        DocumentError::Field {
            field: field.into(),
            source,
        }
    }
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Either `"*"` (the whole frame) or a list of labels.
#[derive(Debug, Clone, PartialEq)]
pub enum SetExpr {
    All,
    Labels(Vec<String>),
}

impl SetExpr {
    pub fn resolve(&self, frame: &Frame) -> Result<Subset, Error> {
        match self {
            SetExpr::All => Ok(frame.full()),
            SetExpr::Labels(labels) => {
                let subset = frame.subset(labels)?;
                if subset.len() as usize != labels.len() {
                    return Err(Error::Unsupported("label repeated within a set".into()));
                }
                Ok(subset)
            }
        }
    }

    pub fn of(frame: &Frame, subset: Subset) -> SetExpr {
        if subset == frame.full() && !subset.is_empty() {
            SetExpr::All
        } else {
            SetExpr::Labels(frame.members(subset).map(str::to_string).collect())
        }
    }
}

impl Serialize for SetExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SetExpr::All => s.serialize_str("*"),
            SetExpr::Labels(labels) => labels.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for SetExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Star(String),
            Labels(Vec<String>),
        }
        match Raw::deserialize(d)? {
            Raw::Star(s) if s == "*" => Ok(SetExpr::All),
            Raw::Star(s) => Err(de::Error::custom(format!(
                "set must be a list of labels or \"*\", got \"{s}\""
            ))),
            Raw::Labels(l) => Ok(SetExpr::Labels(l)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassEntry {
    pub set: SetExpr,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassDocument {
    /// Free-form annotation, e.g. the operator that produced the masses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub frame: Vec<String>,
    pub masses: Vec<MassEntry>,
}

impl MassDocument {
    pub fn from_mass(m: &MassFunction, label: Option<String>) -> MassDocument {
        MassDocument {
            label,
            frame: m.frame().labels().to_vec(),
            masses: m
                .focal()
                .map(|(s, mass)| MassEntry {
                    set: SetExpr::of(m.frame(), s),
                    mass,
                })
                .collect(),
        }
    }

    pub fn to_mass(&self) -> Result<MassFunction, DocumentError> {
        let frame =
            Frame::new(self.frame.iter().cloned()).map_err(|e| DocumentError::field("frame", e))?;
        let mut pairs = Vec::with_capacity(self.masses.len());
        for (i, entry) in self.masses.iter().enumerate() {
            let subset = entry
                .set
                .resolve(&frame)
                .map_err(|e| DocumentError::field(format!("masses[{i}].set"), e))?;
            if !(0.0..=1.0).contains(&entry.mass) {
                return Err(DocumentError::field(
                    format!("masses[{i}].mass"),
                    Error::MassOutOfRange {
                        subset,
                        mass: entry.mass,
                    },
                ));
            }
            if let Some(j) = pairs.iter().position(|&(s, _)| s == subset) {
                return Err(DocumentError::field(
                    format!("masses[{i}].set"),
                    Error::Unsupported(format!("same subset as masses[{j}]")),
                ));
            }
            pairs.push((subset, entry.mass));
        }
        MassFunction::new(frame, pairs).map_err(|e| DocumentError::field("masses", e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextEntry {
    pub set: SetExpr,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextDocument {
    pub contexts: Vec<ContextEntry>,
}

impl ContextDocument {
    pub fn from_contexts(ctx: &ContextVector) -> ContextDocument {
        ContextDocument {
            contexts: ctx
                .contexts()
                .iter()
                .map(|&(theta, alpha)| ContextEntry {
                    set: SetExpr::of(ctx.frame(), theta),
                    alpha,
                })
                .collect(),
        }
    }

    pub fn to_contexts(&self, frame: &Frame) -> Result<ContextVector, DocumentError> {
        let mut pairs = Vec::with_capacity(self.contexts.len());
        for (i, entry) in self.contexts.iter().enumerate() {
            let theta = entry
                .set
                .resolve(frame)
                .map_err(|e| DocumentError::field(format!("contexts[{i}].set"), e))?;
            // validate one entry at a time so the diagnostic names it
            ContextVector::new(frame.clone(), [(theta, entry.alpha)]).map_err(|e| {
                let field = match e {
                    Error::AlphaOutOfRange(_) => "alpha",
                    _ => "set",
                };
                DocumentError::field(format!("contexts[{i}].{field}"), e)
            })?;
            if pairs.iter().any(|&(t, _)| t == theta) {
                return Err(DocumentError::field(
                    format!("contexts[{i}].set"),
                    Error::DuplicateContext(theta),
                ));
            }
            pairs.push((theta, entry.alpha));
        }
        ContextVector::new(frame.clone(), pairs).map_err(|e| DocumentError::field("contexts", e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractionLife {
    pub n: f64,
    pub t_s: f64,
}

/// Exactly one of `half_life_s`, `lambda` or `fraction` must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayEntry {
    pub set: SetExpr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_life_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction: Option<FractionLife>,
}

impl DecayEntry {
    fn decay(&self) -> Result<Decay, Error> {
        match (&self.half_life_s, &self.lambda, &self.fraction) {
            (Some(h), None, None) => Ok(Decay::HalfLife(*h)),
            (None, Some(l), None) => Ok(Decay::Rate(*l)),
            (None, None, Some(f)) => Ok(Decay::FractionLife { n: f.n, t: f.t_s }),
            _ => Err(Error::Unsupported(
                "expected exactly one of half_life_s, lambda, fraction".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayDocument {
    pub decay: Vec<DecayEntry>,
}

impl DecayDocument {
    pub fn to_spec(&self, frame: &Frame) -> Result<DecaySpec, DocumentError> {
        let mut entries = Vec::with_capacity(self.decay.len());
        for (i, entry) in self.decay.iter().enumerate() {
            let theta = entry
                .set
                .resolve(frame)
                .map_err(|e| DocumentError::field(format!("decay[{i}].set"), e))?;
            let decay = entry
                .decay()
                .and_then(|d| d.lambda().map(|_| d))
                .map_err(|e| DocumentError::field(format!("decay[{i}]"), e))?;
            entries.push((theta, decay));
        }
        DecaySpec::new(frame.clone(), entries).map_err(|e| DocumentError::field("decay", e))
    }
}

pub fn parse_mass(text: &str) -> Result<MassFunction, DocumentError> {
    serde_json::from_str::<MassDocument>(text)?.to_mass()
}

pub fn parse_contexts(text: &str, frame: &Frame) -> Result<ContextVector, DocumentError> {
    serde_json::from_str::<ContextDocument>(text)?.to_contexts(frame)
}

pub fn parse_decay(text: &str, frame: &Frame) -> Result<DecaySpec, DocumentError> {
    serde_json::from_str::<DecayDocument>(text)?.to_spec(frame)
}

pub fn mass_to_json(m: &MassFunction, label: Option<String>) -> String {
    serde_json::to_string_pretty(&MassDocument::from_mass(m, label))
        .expect("mass documents always serialise")
}
