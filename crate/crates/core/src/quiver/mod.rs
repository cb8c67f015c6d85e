//! Finite quivers, their paths, and the graph predicates used to select
//! admissible adjacency data.

mod format;
mod permutation;

use std::collections::{HashMap, VecDeque};
use std::fmt;

pub use format::{ArrowEntry, QuiverDocument, VertexRef};
pub use permutation::VertexPermutation;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub type VertexId = usize;
pub type ArrowId = usize;

/// `m_ij` counts arrows `i → j`.
pub type AdjacencyMatrix = IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: ArrowId,
    pub label: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver with labelled arrows. Vertices are `0..vertex_count`;
/// `vertex_base` only affects how they are printed (`e0…` or `e1…`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    vertex_base: usize,
    arrows: Vec<Arrow>,
    by_label: HashMap<String, ArrowId>,
}

/// Arrow labels: a letter, then letters, digits or `_`; a `*` is allowed
/// only directly before `_` (as in `a*_3`), so products written with `*`
/// stay unambiguous.
pub fn is_valid_label(label: &str) -> bool {
    let bytes = label.as_bytes();
    if bytes.is_empty() || !bytes[0].is_ascii_alphabetic() {
        return false;
    }
    bytes.iter().enumerate().all(|(i, &c)| {
        c.is_ascii_alphanumeric() || c == b'_' || (c == b'*' && bytes.get(i + 1) == Some(&b'_'))
    })
}

impl Quiver {
    pub fn new<S: Into<String>>(
        vertex_count: usize,
        arrows: impl IntoIterator<Item = (S, VertexId, VertexId)>,
    ) -> Result<Self> {
        Self::with_base(vertex_count, 0, arrows)
    }

    /// Like [`Quiver::new`], printing vertex `v` as `e{v + vertex_base}`.
    pub fn with_base<S: Into<String>>(
        vertex_count: usize,
        vertex_base: usize,
        arrows: impl IntoIterator<Item = (S, VertexId, VertexId)>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Structural(
                "a quiver needs at least one vertex".into(),
            ));
        }
        let mut q = Quiver {
            vertex_count,
            vertex_base,
            arrows: Vec::new(),
            by_label: HashMap::new(),
        };
        for (label, source, target) in arrows {
            let label = label.into();
            if source >= vertex_count || target >= vertex_count {
                return Err(Error::Structural(format!(
                    "arrow {label} has an endpoint outside 0..{vertex_count}"
                )));
            }
            if !is_valid_label(&label) {
                return Err(Error::Structural(format!("invalid arrow label {label:?}")));
            }
            let id = q.arrows.len();
            if q.by_label.insert(label.clone(), id).is_some() {
                return Err(Error::Structural(format!("duplicate arrow label {label}")));
            }
            q.arrows.push(Arrow {
                id,
                label,
                source,
                target,
            });
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn vertex_base(&self) -> usize {
        self.vertex_base
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, id: ArrowId) -> Result<&Arrow> {
        self.arrows
            .get(id)
            .ok_or_else(|| Error::Structural(format!("arrow id {id} out of range")))
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<&Arrow> {
        self.by_label.get(label).map(|&id| &self.arrows[id])
    }

    pub fn vertex_label(&self, v: VertexId) -> String {
        format!("e{}", v + self.vertex_base)
    }

    /// Resolves `eK` (using the vertex base) or a bare index.
    pub fn parse_vertex(&self, s: &str) -> Result<VertexId> {
        let s = s.trim();
        let v = match s.strip_prefix('e') {
            Some(rest) => rest
                .parse::<usize>()
                .ok()
                .and_then(|k| k.checked_sub(self.vertex_base)),
            None => s.parse::<usize>().ok(),
        };
        v.filter(|&v| v < self.vertex_count)
            .ok_or_else(|| Error::Parse(format!("unknown vertex {s:?}")))
    }

    pub fn arrows_between(&self, i: VertexId, j: VertexId) -> impl Iterator<Item = &Arrow> {
        self.arrows
            .iter()
            .filter(move |a| a.source == i && a.target == j)
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let mut m = IntMatrix::zeros(self.vertex_count);
        for a in &self.arrows {
            m[(a.source, a.target)] += 1;
        }
        m
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count;
        let mut out: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for a in &self.arrows {
            out[a.source].push(a.target);
        }
        (0..n).all(|start| {
            let mut seen = vec![false; n];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &out[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        })
    }

    pub fn is_schurian(&self) -> bool {
        let m = self.adjacency();
        (0..self.vertex_count).all(|i| (0..self.vertex_count).all(|j| m[(i, j)] <= 1))
    }

    pub fn trivial_path(&self, v: VertexId) -> Result<Path> {
        if v >= self.vertex_count {
            return Err(Error::Structural(format!("vertex {v} out of range")));
        }
        Ok(Path::trivial(v))
    }

    pub fn arrow_path(&self, id: ArrowId) -> Result<Path> {
        let a = self.arrow(id)?;
        Ok(Path {
            source: a.source,
            target: a.target,
            arrows: vec![id],
        })
    }

    /// Builds the path `a₀a₁⋯` checking that consecutive arrows compose.
    pub fn path(&self, source: VertexId, arrows: &[ArrowId]) -> Result<Path> {
        let mut p = self.trivial_path(source)?;
        for &id in arrows {
            let a = self.arrow(id)?;
            if a.source != p.target {
                return Err(Error::Structural(format!(
                    "arrow {} does not start where the path ends",
                    a.label
                )));
            }
            p.arrows.push(id);
            p.target = a.target;
        }
        Ok(p)
    }

    /// Builds a nontrivial path from arrow labels.
    pub fn path_from_labels(&self, labels: &[&str]) -> Result<Path> {
        let ids = labels
            .iter()
            .map(|l| {
                self.arrow_by_label(l)
                    .map(|a| a.id)
                    .ok_or_else(|| Error::Parse(format!("unknown arrow {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let first = ids
            .first()
            .ok_or_else(|| Error::Structural("empty label list".into()))?;
        self.path(self.arrows[*first].source, &ids)
    }

    /// Concatenation `pq`; `None` is the zero of the path algebra.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Option<Path>> {
        for path in [p, q] {
            if path.source >= self.vertex_count {
                return Err(Error::Structural("path vertex out of range".into()));
            }
            for &id in &path.arrows {
                self.arrow(id)?;
            }
        }
        Ok(p.concat(q))
    }

    /// All paths of length `k` from `i` to `j`.
    pub fn paths(&self, k: usize, i: VertexId, j: VertexId) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![Path::trivial(i)];
        while let Some(p) = stack.pop() {
            if p.len() == k {
                if p.target == j {
                    out.push(p);
                }
                continue;
            }
            for a in self.arrows.iter().filter(|a| a.source == p.target) {
                let mut next = p.clone();
                next.arrows.push(a.id);
                next.target = a.target;
                stack.push(next);
            }
        }
        out.sort();
        out
    }

    /// Renders a path as labels joined by `*`, with `e_v` for trivial paths.
    pub fn render_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            return self.vertex_label(p.source);
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < p.arrows.len() {
            let id = p.arrows[i];
            let run = p.arrows[i..].iter().take_while(|&&x| x == id).count();
            let label = &self.arrows[id].label;
            if run > 1 {
                parts.push(format!("{label}^{run}"));
            } else {
                parts.push(label.clone());
            }
            i += run;
        }
        parts.join("*")
    }
}

/// A path `a₀a₁⋯aₙ` with `t(a_{i-1}) = s(a_i)`; the empty arrow list is the
/// trivial path `e_v` at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Assembles a path without consulting a quiver. Callers guarantee the
    /// arrows compose and run from `source` to `target`.
    pub(crate) fn from_parts(source: VertexId, target: VertexId, arrows: Vec<ArrowId>) -> Path {
        Path {
            source,
            target,
            arrows,
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `pq` when `t(p) = s(q)`, else `None`.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_document().to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two vertices, `a, c: e1 → e2` and `b, d: e2 → e1`.
    fn double_arrows() -> Quiver {
        Quiver::with_base(2, 1, [("a", 0, 1), ("b", 1, 0), ("c", 0, 1), ("d", 1, 0)]).unwrap()
    }

    fn loops_and_arrows() -> Quiver {
        Quiver::with_base(2, 1, [("a", 0, 0), ("b", 0, 1), ("c", 1, 1), ("d", 1, 0)]).unwrap()
    }

    fn cycle(n: usize) -> Quiver {
        let mut arrows = Vec::new();
        for i in 0..n {
            arrows.push((format!("a_{i}"), i, (i + 1) % n));
            arrows.push((format!("a*_{i}"), (i + 1) % n, i));
        }
        Quiver::new(n, arrows).unwrap()
    }

    #[test]
    fn trivial_path_is_identity() {
        let q = double_arrows();
        let a = q.arrow_path(0).unwrap();
        let e1 = q.trivial_path(0).unwrap();
        assert_eq!(q.compose(&e1, &a).unwrap(), Some(a.clone()));
        let e2 = q.trivial_path(1).unwrap();
        assert_eq!(q.compose(&a, &e2).unwrap(), Some(a.clone()));
        assert_eq!(q.compose(&e2, &a).unwrap(), None);
    }

    #[test]
    fn compose_follows_left_to_right_rule() {
        let q = double_arrows();
        let a = q.arrow_path(0).unwrap();
        let b = q.arrow_path(1).unwrap();
        let c = q.arrow_path(2).unwrap();
        let ab = q.compose(&a, &b).unwrap().unwrap();
        assert_eq!(q.render_path(&ab), "a*b");
        assert_eq!(ab.source(), 0);
        assert_eq!(ab.target(), 0);
        assert_eq!(q.compose(&a, &c).unwrap(), None);
    }

    #[test]
    fn compose_rejects_foreign_arrow_ids() {
        let q = double_arrows();
        let bogus = Path::from_parts(0, 1, vec![17]);
        let a = q.arrow_path(0).unwrap();
        assert!(matches!(q.compose(&bogus, &a), Err(Error::Structural(_))));
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(
            double_arrows().adjacency().to_rows(),
            vec![vec![0, 2], vec![2, 0]]
        );
        assert_eq!(
            loops_and_arrows().adjacency().to_rows(),
            vec![vec![1, 1], vec![1, 1]]
        );
        let one = Quiver::new(1, [("x", 0, 0)]).unwrap();
        assert_eq!(one.adjacency().to_rows(), vec![vec![1]]);
    }

    #[test]
    fn strong_connectivity() {
        assert!(cycle(4).is_strongly_connected());
        assert!(!Quiver::new(2, [("a", 0, 1)])
            .unwrap()
            .is_strongly_connected());
        assert!(Quiver::new(1, Vec::<(String, usize, usize)>::new())
            .unwrap()
            .is_strongly_connected());
    }

    #[test]
    fn schurian_examples() {
        assert!(cycle(3).is_schurian());
        assert!(!double_arrows().is_schurian());
        assert!(!cycle(2).is_schurian());
    }

    #[test]
    fn cycle_adjacency_symmetric_zero_diagonal() {
        for n in 3..7 {
            let m = cycle(n).adjacency();
            assert!(m.is_symmetric());
            assert!((0..n).all(|i| m[(i, i)] == 0));
        }
    }

    #[test]
    fn invalid_quivers() {
        assert!(Quiver::new(2, [("a", 0, 2)]).is_err());
        assert!(Quiver::new(2, [("a", 0, 1), ("a", 1, 0)]).is_err());
        assert!(Quiver::new(1, [("*x", 0, 0)]).is_err());
        assert!(Quiver::new(1, [("a*", 0, 0)]).is_err());
        assert!(Quiver::new(1, [("a*_0", 0, 0)]).is_ok());
    }

    #[test]
    fn vertex_labels() {
        let q = double_arrows();
        assert_eq!(q.vertex_label(0), "e1");
        assert_eq!(q.parse_vertex("e2").unwrap(), 1);
        assert!(q.parse_vertex("e0").is_err());
    }

    #[test]
    fn path_counts_match_adjacency_powers() {
        let quivers = [double_arrows(), loops_and_arrows(), cycle(3)];
        for q in &quivers {
            let m = q.adjacency();
            let n = q.vertex_count();
            for k in 0..=8u32 {
                let mk = m.pow(k);
                for i in 0..n {
                    for j in 0..n {
                        assert_eq!(q.paths(k as usize, i, j).len() as i64, mk[(i, j)]);
                    }
                }
            }
        }
    }
}
