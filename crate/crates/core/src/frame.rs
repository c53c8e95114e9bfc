//! Frames of discernment and their subsets.
//!
//! A [`Frame`] is an ordered list of distinct labels. Label `i` owns bit `i`
//! of a [`Subset`], so `0` is the empty set and `2^K - 1` the whole frame.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported frame. Dense lattice sweeps allocate `2^K` entries.
pub const MAX_FRAME_SIZE: usize = 24;

/// A subset of a frame, encoded as a bitmask over the frame's label order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn singleton(index: usize) -> Subset {
        Subset(1 << index)
    }
}

impl fmt::Binary for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Binary::fmt(&self.0, f)
    }
}

/// An ordered, finite set of class labels.
///
/// Two frames are equal iff their label sequences are equal. Cloning is cheap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Frame>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_FRAME_SIZE {
            return Err(Error::FrameTooLarge {
                size: labels.len(),
                max: MAX_FRAME_SIZE,
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame {
            labels: labels.into(),
        })
    }

    /// `ω1 … ωK`, the anonymous frame used throughout the worked examples.
    pub fn numbered(size: usize) -> Result<Frame> {
        Frame::new((1..=size).map(|i| format!("w{i}")))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Number of subsets, `2^K`.
    pub fn powerset_len(&self) -> usize {
        1usize << self.size()
    }

    pub fn full(&self) -> Subset {
        Subset(((1u64 << self.size()) - 1) as u32)
    }

    pub fn contains(&self, subset: Subset) -> bool {
        subset.is_subset_of(self.full())
    }

    pub fn check(&self, subset: Subset) -> Result<Subset> {
        if self.contains(subset) {
            Ok(subset)
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Builds a subset from label names.
    pub fn subset<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels.into_iter().try_fold(Subset::EMPTY, |acc, label| {
            let label = label.as_ref();
            self.position(label)
                .map(|i| acc.union(Subset::singleton(i)))
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))
        })
    }

    /// All subsets in ascending bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.powerset_len() as u32).map(Subset)
    }

    pub fn members(&self, subset: Subset) -> impl Iterator<Item = &str> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter(move |(i, _)| subset.0 & (1 << i) != 0)
            .map(|(_, l)| l.as_str())
    }

    /// Human-readable rendering: `∅`, `Ω`, or `{a,r}`.
    pub fn display(&self, subset: Subset) -> String {
        if subset.is_empty() {
            "∅".to_string()
        } else if subset == self.full() && self.size() > 1 {
            "Ω".to_string()
        } else {
            let inner: Vec<&str> = self.members(subset).collect();
            format!("{{{}}}", inner.join(","))
        }
    }
}
