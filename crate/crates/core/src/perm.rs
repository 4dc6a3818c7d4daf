use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of the coordinates `{0,..,n-1}`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &image in &images {
            if image >= n || seen[image] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[image] = true;
        }
        Ok(Self(images))
    }

    /// Builds from 1-based images, the notation used on the command line.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?}")));
        }
        Self::new(images.iter().map(|&i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (p, &image) in self.0.iter().enumerate() {
            inv[image] = p;
        }
        Self(inv)
    }

    /// `self ∘ other`, i.e. `p ↦ self(other(p))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidPermutation(format!(
                "length {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Self(other.0.iter().map(|&p| self.0[p]).collect()))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(p, &image)| p == image)
    }

    /// Cycle notation with 1-based points, fixed points omitted; `()` for the
    /// identity.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() {
            if seen[start] || self.0[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(p + 1).to_string());
                p = self.0[p];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// All permutations of `{0,..,n-1}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let pivot = i - 1;
            let j = (i..n).rev().find(|&j| current[j] > current[pivot]).unwrap();
            current.swap(pivot, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}
