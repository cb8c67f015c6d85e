use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

use super::VertexId;

/// A bijection on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    images: Vec<VertexId>,
}

impl VertexPermutation {
    pub fn new(images: Vec<VertexId>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Structural(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(VertexPermutation { images })
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            images: (0..n).collect(),
        }
    }

    /// `v ↦ v + shift mod n`.
    pub fn rotation(n: usize, shift: usize) -> Self {
        VertexPermutation {
            images: (0..n).map(|v| (v + shift) % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[VertexId] {
        &self.images
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.images[v]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        VertexPermutation { images: inv }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &VertexPermutation) -> Self {
        VertexPermutation {
            images: first.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `P_ij = δ_{μ(i) j}`.
    pub fn matrix(&self) -> IntMatrix {
        let mut p = IntMatrix::zeros(self.images.len());
        for (i, &j) in self.images.iter().enumerate() {
            p[(i, j)] = 1;
        }
        p
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<VertexPermutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(VertexPermutation {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
    }

    /// Cycle notation over the given vertex labels, e.g. `(e1 e2)`; `()` for the identity.
    pub fn cycles(&self, label: impl Fn(VertexId) -> String) -> String {
        let mut seen = vec![false; self.images.len()];
        let mut out = String::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(label(v));
                v = self.images[v];
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

impl fmt::Display for VertexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycles(|v| v.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(VertexPermutation::new(vec![0, 0]).is_err());
        assert!(VertexPermutation::new(vec![0, 2]).is_err());
        assert!(VertexPermutation::new(vec![1, 2, 0]).is_ok());
    }

    #[test]
    fn matrix_convention() {
        let mu = VertexPermutation::new(vec![1, 2, 0]).unwrap();
        let p = mu.matrix();
        assert_eq!(p[(0, 1)], 1);
        assert_eq!(p[(2, 0)], 1);
        assert_eq!(mu.after(&mu.inverse()), VertexPermutation::identity(3));
    }

    #[test]
    fn enumerates_all() {
        assert_eq!(VertexPermutation::all(3).len(), 6);
        assert_eq!(VertexPermutation::all(1).len(), 1);
    }

    #[test]
    fn cycle_notation() {
        let swap = VertexPermutation::new(vec![1, 0]).unwrap();
        assert_eq!(swap.cycles(|v| format!("e{}", v + 1)), "(e1 e2)");
        assert_eq!(VertexPermutation::identity(2).to_string(), "()");
    }
}
