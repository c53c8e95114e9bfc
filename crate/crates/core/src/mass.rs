//! Mass functions (basic belief assignments) and their lattice transforms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::lattice;

/// Tolerance used when validating that masses sum to one.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A sparse mass function over a frame. Only strictly positive masses are
/// stored; `m(∅) > 0` is allowed and never normalised away.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focal: BTreeMap<Subset, f64>,
}

impl MassFunction {
    /// Validated construction. Zero entries are dropped.
    pub fn new<I>(frame: Frame, assignments: I) -> Result<MassFunction>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut focal = BTreeMap::new();
        let mut seen = std::collections::HashSet::new();
        let mut sum = 0.0;
        for (subset, mass) in assignments {
            frame.check(subset)?;
            if !seen.insert(subset) {
                return Err(Error::DuplicateSubset(subset));
            }
            if !(0.0..=1.0).contains(&mass) {
                return Err(Error::MassOutOfRange { subset, mass });
            }
            sum += mass;
            if mass > 0.0 {
                focal.insert(subset, mass);
            }
        }
        let deviation = sum - 1.0;
        if deviation.abs() > MASS_TOLERANCE {
            return Err(Error::MassSumNotOne { sum, deviation });
        }
        Ok(MassFunction { frame, focal })
    }

    /// Convenience constructor keyed by label lists.
    pub fn from_labels<'a, I, L>(frame: Frame, assignments: I) -> Result<MassFunction>
    where
        I: IntoIterator<Item = (L, f64)>,
        L: IntoIterator<Item = &'a str>,
    {
        let pairs = assignments
            .into_iter()
            .map(|(labels, mass)| Ok((frame.subset(labels)?, mass)))
            .collect::<Result<Vec<_>>>()?;
        MassFunction::new(frame, pairs)
    }

    /// Total ignorance: `m(Ω) = 1`.
    pub fn vacuous(frame: Frame) -> MassFunction {
        let full = frame.full();
        MassFunction {
            frame,
            focal: BTreeMap::from([(full, 1.0)]),
        }
    }

    /// Operator outputs: entries are computed, not user supplied, so only
    /// non-positive values are dropped.
    pub(crate) fn from_computed<I>(frame: Frame, entries: I) -> MassFunction
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut focal = BTreeMap::new();
        for (subset, mass) in entries {
            if mass > 0.0 {
                *focal.entry(subset).or_insert(0.0) += mass;
            }
        }
        MassFunction { frame, focal }
    }

    pub(crate) fn from_dense(frame: Frame, dense: &[f64]) -> MassFunction {
        let entries = dense
            .iter()
            .enumerate()
            .map(|(i, &v)| (Subset(i as u32), v));
        MassFunction::from_computed(frame, entries)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `m(A)`; zero for subsets that are not focal.
    pub fn mass(&self, subset: Subset) -> f64 {
        self.focal.get(&subset).copied().unwrap_or(0.0)
    }

    /// Focal sets in ascending bitmask order.
    pub fn focal(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.focal.iter().map(|(&s, &m)| (s, m))
    }

    pub fn focal_count(&self) -> usize {
        self.focal.len()
    }

    pub fn total(&self) -> f64 {
        self.focal.values().sum()
    }

    /// Mass of conflict, `m(∅)`.
    pub fn conflict(&self) -> f64 {
        self.mass(Subset::EMPTY)
    }

    pub fn is_normal(&self) -> bool {
        !self.focal.contains_key(&Subset::EMPTY)
    }

    pub fn is_vacuous(&self) -> bool {
        self.focal.len() == 1 && self.mass(self.frame.full()) == 1.0
    }

    /// `bel(A) = Σ_{∅ ≠ B ⊆ A} m(B)`.
    pub fn belief(&self, subset: Subset) -> Result<f64> {
        Ok(self.implicability(subset)? - self.conflict())
    }

    /// `b(A) = Σ_{B ⊆ A} m(B)`, including the empty set.
    pub fn implicability(&self, subset: Subset) -> Result<f64> {
        self.frame.check(subset)?;
        Ok(self
            .focal()
            .filter(|(b, _)| b.is_subset_of(subset))
            .map(|(_, m)| m)
            .sum())
    }

    /// Dense vector indexed by subset bitmask.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.frame.powerset_len()];
        for (s, m) in self.focal() {
            dense[s.index()] = m;
        }
        dense
    }

    /// Dense implicability function over the whole lattice.
    pub fn implicabilities(&self) -> Vec<f64> {
        let mut dense = self.to_dense();
        lattice::subset_sums(&mut dense);
        dense
    }

    /// Largest per-subset absolute difference. Infinite if frames differ.
    pub fn max_deviation(&self, other: &MassFunction) -> f64 {
        if self.frame != other.frame {
            return f64::INFINITY;
        }
        self.focal
            .keys()
            .chain(other.focal.keys())
            .map(|&s| (self.mass(s) - other.mass(s)).abs())
            .fold(0.0, f64::max)
    }
}

/// Dense, signed mass vector. Intermediate for algebra over generalised
/// simple components whose entries may be negative or exceed one.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMassVector {
    frame: Frame,
    values: Vec<f64>,
}

impl SignedMassVector {
    pub fn new(frame: Frame, values: Vec<f64>) -> Result<SignedMassVector> {
        if values.len() != frame.powerset_len() {
            return Err(Error::FrameMismatch);
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NotAMassFunction(format!("non-finite entry {v}")));
        }
        Ok(SignedMassVector { frame, values })
    }

    /// `{∅ ↦ 1}`, the neutral element of the disjunctive rule.
    pub fn neutral(frame: Frame) -> SignedMassVector {
        let mut values = vec![0.0; frame.powerset_len()];
        values[0] = 1.0;
        SignedMassVector { frame, values }
    }

    /// The two-point component `∅ ↦ w, A ↦ 1 − w`.
    pub fn simple_component(frame: Frame, subset: Subset, weight: f64) -> Result<SignedMassVector> {
        frame.check(subset)?;
        let mut values = vec![0.0; frame.powerset_len()];
        values[0] += weight;
        values[subset.index()] += 1.0 - weight;
        SignedMassVector::new(frame, values)
    }

    pub fn from_implicabilities(
        frame: Frame,
        mut implicabilities: Vec<f64>,
    ) -> Result<SignedMassVector> {
        if implicabilities.len() != frame.powerset_len() {
            return Err(Error::FrameMismatch);
        }
        lattice::subset_mobius(&mut implicabilities);
        SignedMassVector::new(frame, implicabilities)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, subset: Subset) -> f64 {
        self.values.get(subset.index()).copied().unwrap_or(0.0)
    }

    pub fn implicabilities(&self) -> Vec<f64> {
        let mut b = self.values.clone();
        lattice::subset_sums(&mut b);
        b
    }

    /// Disjunctive combination, computed as the pointwise product of
    /// implicability functions.
    pub fn disjunctive(&self, other: &SignedMassVector) -> Result<SignedMassVector> {
        if self.frame != other.frame {
            return Err(Error::FrameMismatch);
        }
        let b: Vec<f64> = self
            .implicabilities()
            .iter()
            .zip(other.implicabilities())
            .map(|(x, y)| x * y)
            .collect();
        SignedMassVector::from_implicabilities(self.frame.clone(), b)
    }

    /// Entries in `[−1e-9, 0)` are clamped to zero; anything lower, or a sum
    /// away from one, is rejected.
    pub fn into_mass_function(self) -> Result<MassFunction> {
        if let Some((i, v)) = self
            .values
            .iter()
            .enumerate()
            .find(|(_, &v)| v < -MASS_TOLERANCE)
        {
            return Err(Error::NotAMassFunction(format!(
                "negative entry {v:e} at subset {i:#b}"
            )));
        }
        let sum: f64 = self.values.iter().sum();
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::NotAMassFunction(format!("entries sum to {sum}")));
        }
        Ok(MassFunction::from_dense(self.frame, &self.values))
    }
}

impl From<&MassFunction> for SignedMassVector {
    fn from(m: &MassFunction) -> Self {
        SignedMassVector {
            frame: m.frame().clone(),
            values: m.to_dense(),
        }
    }
}
