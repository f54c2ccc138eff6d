//! Flattened bases of finite graded spaces.

use crate::gf2::BitVec;

/// An ordered basis of a finite graded GF(2) space, sorted by degree.
///
/// Elements are addressed either by a flat index or by `(degree, local)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    degrees: Vec<usize>,
    labels: Vec<String>,
    offsets: Vec<usize>,
}

impl GradedBasis {
    /// Builds a basis from per-degree label lists (`per_degree[n]` lists degree `n`).
    pub fn from_degrees(per_degree: Vec<Vec<String>>) -> Self {
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        let mut offsets = Vec::with_capacity(per_degree.len() + 1);
        for (n, names) in per_degree.into_iter().enumerate() {
            offsets.push(labels.len());
            for name in names {
                degrees.push(n);
                labels.push(name);
            }
        }
        offsets.push(labels.len());
        GradedBasis { degrees, labels, offsets }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn top_degree(&self) -> usize {
        self.offsets.len().saturating_sub(2)
    }

    pub fn degree(&self, k: usize) -> usize {
        self.degrees[k]
    }

    pub fn label(&self, k: usize) -> &str {
        &self.labels[k]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dim_in(&self, n: usize) -> usize {
        if n + 1 < self.offsets.len() {
            self.offsets[n + 1] - self.offsets[n]
        } else {
            0
        }
    }

    /// Flat indices of the degree-`n` elements.
    pub fn range(&self, n: usize) -> std::ops::Range<usize> {
        if n + 1 < self.offsets.len() {
            self.offsets[n]..self.offsets[n + 1]
        } else {
            0..0
        }
    }

    pub fn flat(&self, n: usize, local: usize) -> usize {
        debug_assert!(local < self.dim_in(n));
        self.offsets[n] + local
    }

    pub fn local(&self, k: usize) -> (usize, usize) {
        let n = self.degrees[k];
        (n, k - self.offsets[n])
    }

    /// Degree-`n` part of a flat vector, in local coordinates.
    pub fn component(&self, v: &BitVec, n: usize) -> BitVec {
        let r = self.range(n);
        BitVec::from_indices(r.len(), v.ones().filter(|k| r.contains(k)).map(|k| k - r.start))
    }

    pub fn embed(&self, n: usize, local: &BitVec) -> BitVec {
        let start = self.range(n).start;
        BitVec::from_indices(self.dim(), local.ones().map(|j| start + j))
    }

    /// True when every nonzero coordinate of `v` has degree `n`; zero is
    /// homogeneous of every degree.
    pub fn is_homogeneous_of(&self, v: &BitVec, n: i64) -> bool {
        v.ones().all(|k| self.degrees[k] as i64 == n)
    }

    /// Human-readable sum of labels, `0` for the zero vector.
    pub fn format(&self, v: &BitVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.ones().map(|k| self.labels[k].as_str()).collect::<Vec<_>>().join(" + ")
    }
}
