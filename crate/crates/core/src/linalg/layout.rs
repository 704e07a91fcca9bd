use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Ordered list of labelled subsystems with their local dimensions.
///
/// Composite basis indices are big-endian in the label order: the first
/// label is the most significant digit, so `|0_A 0_B 1_C>` is index 1 in an
/// all-qubit `[A, B, C]` layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModeLayout {
    labels: Vec<String>,
    dims: Vec<usize>,
}

impl ModeLayout {
    pub fn new<S: Into<String>>(modes: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut labels = Vec::new();
        let mut dims = Vec::new();
        let mut seen = HashSet::new();
        for (label, dim) in modes {
            let label = label.into();
            if dim < 2 {
                return Err(Error::InvalidLayout(format!(
                    "mode `{label}` has dimension {dim}, need at least 2"
                )));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            labels.push(label);
            dims.push(dim);
        }
        if labels.is_empty() {
            return Err(Error::InvalidLayout("layout has no modes".into()));
        }
        Ok(Self { labels, dims })
    }

    /// All-qubit layout.
    pub fn qubits<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(labels.into_iter().map(|l| (l, 2)))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.position(label)?])
    }

    /// Place value of each mode's digit in the composite index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Composite index of a per-mode digit tuple.
    pub fn index_of(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.dims.len());
        digits.iter().zip(&self.dims).fold(0, |acc, (&d, &n)| {
            debug_assert!(d < n);
            acc * n + d
        })
    }

    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            digits[k] = index % self.dims[k];
            index /= self.dims[k];
        }
        digits
    }

    /// `self` followed by `other`; labels must be disjoint.
    pub fn concat(&self, other: &ModeLayout) -> Result<ModeLayout> {
        Self::new(
            self.labels
                .iter()
                .chain(&other.labels)
                .cloned()
                .zip(self.dims.iter().chain(&other.dims).copied()),
        )
    }

    /// Sub-layout keeping the given mode positions, in layout order.
    pub(crate) fn select(&self, positions: &[usize]) -> ModeLayout {
        ModeLayout {
            labels: positions.iter().map(|&p| self.labels[p].clone()).collect(),
            dims: positions.iter().map(|&p| self.dims[p]).collect(),
        }
    }

    /// Copy with one label renamed.
    pub fn relabel(&self, from: &str, to: &str) -> Result<ModeLayout> {
        let pos = self.position(from)?;
        let mut labels = self.labels.clone();
        labels[pos] = to.to_string();
        Self::new(labels.into_iter().zip(self.dims.iter().copied()))
    }
}

impl fmt::Display for ModeLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (l, d)) in self.labels.iter().zip(&self.dims).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}:{d}")?;
        }
        f.write_str("]")
    }
}
