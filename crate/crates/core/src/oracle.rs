//! Reference computations that share no code with the rewriting engine or
//! the closed-form deciders, used to cross-check them.
//!
//! * [`graded_dims_by_rank`] counts `dim e_i A_k e_j` as the number of paths
//!   minus the rank of the span of `u·r·v` over relations `r`.
//! * [`diagonal_iso_search`] looks for an isomorphism whose arrow matrix is
//!   diagonal up to the vertex permutation, with coefficients drawn from a
//!   finite grid.

use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::iso::GradedMap;
use crate::linalg::{IntMatrix, Matrix};
use crate::quiver::{Path, Quiver, VertexPermutation};
use crate::rewrite::AlgebraElement;
use crate::scalar::Field;

/// Row-reduced sparse vectors keyed by pivot column.
struct Echelon<F> {
    rows: BTreeMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> Echelon<F> {
    fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    fn reduce(&self, mut v: BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        let mut done = BTreeMap::new();
        while let Some((col, c)) = v.pop_first() {
            match self.rows.get(&col) {
                Some(row) => {
                    for (&k, x) in row.iter().skip(1) {
                        let entry = v.remove(&k).unwrap_or_else(F::zero) - &(c.clone() * x);
                        if !entry.is_zero() {
                            v.insert(k, entry);
                        }
                    }
                }
                None => {
                    done.insert(col, c);
                }
            }
        }
        done
    }

    /// Adds `v` to the span; returns whether the rank grew.
    fn insert(&mut self, v: BTreeMap<usize, F>) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.first_key_value() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let row = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }

    fn contains(&self, v: BTreeMap<usize, F>) -> bool {
        self.reduce(v).is_empty()
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn vector<F: Field>(x: &AlgebraElement<F>, index: &HashMap<Path, usize>) -> BTreeMap<usize, F> {
    x.terms().map(|(p, c)| (index[p], c.clone())).collect()
}

/// `H_0, …, H_max_k` by exact rank computations in each degree.
pub fn graded_dims_by_rank<F: Field>(
    quiver: &Quiver,
    relations: &[AlgebraElement<F>],
    max_k: usize,
) -> Result<Vec<IntMatrix>> {
    let n = quiver.vertex_count();
    let mut out = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        let mut h = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let paths = quiver.paths(k, i, j);
                let index: HashMap<Path, usize> = paths
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(a, p)| (p, a))
                    .collect();
                let mut span = Echelon::new();
                for r in relations {
                    let Some(d) = r.degree() else { continue };
                    let (s, t) = match r.terms().next() {
                        Some((p, _)) => (p.source(), p.target()),
                        None => continue,
                    };
                    if d > k {
                        continue;
                    }
                    for left in 0..=k - d {
                        for u in quiver.paths(left, i, s) {
                            for v in quiver.paths(k - d - left, t, j) {
                                let u = AlgebraElement::from_path(u.clone());
                                let v = AlgebraElement::from_path(v);
                                let urv = u.mul(r).mul(&v);
                                span.insert(vector(&urv, &index));
                            }
                        }
                    }
                }
                h[(i, j)] = (paths.len() - span.rank()) as i64;
            }
        }
        out.push(h);
    }
    Ok(out)
}

/// Searches for `f: src → tgt` with `σ` ranging over all vertex permutations
/// that conjugate the adjacency matrices and each arrow sent to a grid
/// multiple of the unique arrow between the image vertices.
///
/// Only meaningful for schurian quivers, where every graded isomorphism
/// has this shape. A map is accepted when the image of every source
/// relation lies in the span of the target relations.
///
/// Rescaling the target's vertices is an automorphism, so arrows on a
/// spanning tree of the source are fixed to coefficient 1 and only the
/// remaining arrows range over `grid`.
pub fn diagonal_iso_search<F: Field>(
    src: (&Quiver, &[AlgebraElement<F>]),
    tgt: (&Quiver, &[AlgebraElement<F>]),
    grid: &[F],
) -> Option<GradedMap<F>> {
    let (sq, srels) = src;
    let (tq, trels) = tgt;
    let n = sq.vertex_count();
    if tq.vertex_count() != n || sq.arrow_count() != tq.arrow_count() {
        return None;
    }
    let mut index: HashMap<Path, usize> = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            for p in tq.paths(2, i, j) {
                let k = index.len();
                index.insert(p, k);
            }
        }
    }
    let mut spans: HashMap<(usize, usize), Echelon<F>> = HashMap::new();
    for r in trels {
        if let Some((p, _)) = r.terms().next() {
            spans
                .entry((p.source(), p.target()))
                .or_insert_with(Echelon::new)
                .insert(vector(r, &index));
        }
    }
    // assign arrows relation by relation so checks fire early
    let mut order: Vec<usize> = Vec::new();
    let mut remaining: Vec<Vec<usize>> = srels
        .iter()
        .map(|r| {
            let mut a: Vec<usize> = r.terms().flat_map(|(p, _)| p.arrows().to_vec()).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    loop {
        remaining
            .iter_mut()
            .for_each(|a| a.retain(|x| !order.contains(x)));
        match remaining
            .iter()
            .filter(|a| !a.is_empty())
            .min_by_key(|a| a.len())
        {
            Some(next) => order.extend(next.clone()),
            None => break,
        }
    }
    let rest: Vec<usize> = (0..sq.arrow_count())
        .filter(|x| !order.contains(x))
        .collect();
    order.extend(rest);
    let tree = spanning_tree(sq);
    order.retain(|x| !tree.contains(x));
    // relation r becomes checkable once order[..=ready[r]] is assigned
    let ready: Vec<usize> = srels
        .iter()
        .map(|r| {
            r.terms()
                .flat_map(|(p, _)| p.arrows().to_vec())
                .filter_map(|a| order.iter().position(|&x| x == a))
                .max()
                .unwrap_or(0)
        })
        .collect();

    let (ms, mt) = (sq.adjacency(), tq.adjacency());
    for sigma in VertexPermutation::all(n) {
        let conj =
            (0..n).all(|i| (0..n).all(|j| ms[(i, j)] == mt[(sigma.apply(i), sigma.apply(j))]));
        if !conj {
            continue;
        }
        let targets: Option<Vec<usize>> = sq
            .arrows()
            .iter()
            .map(|a| {
                let mut it = tq.arrows_between(sigma.apply(a.source), sigma.apply(a.target));
                match (it.next(), it.next()) {
                    (Some(b), None) => Some(b.id),
                    _ => None,
                }
            })
            .collect();
        let Some(targets) = targets else { continue };
        let search = Search {
            tq,
            srels,
            grid,
            order: &order,
            ready: &ready,
            targets: &targets,
            spans: &spans,
            index: &index,
            sigma: &sigma,
        };
        let mut coeffs: Vec<Option<F>> = (0..sq.arrow_count())
            .map(|x| tree.contains(&x).then(F::one))
            .collect();
        if search.descend(0, &mut coeffs) {
            let m = sq.arrow_count();
            let mut matrix = Matrix::zeros(m, m);
            for (x, c) in coeffs.into_iter().enumerate() {
                matrix[(x, targets[x])] = c.expect("all assigned");
            }
            return Some(GradedMap::new(sigma, matrix));
        }
    }
    None
}

/// Arrows forming a spanning forest of the underlying undirected graph.
fn spanning_tree(q: &Quiver) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..q.vertex_count()).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut tree = Vec::new();
    for a in q.arrows() {
        let (r, s) = (root(&mut parent, a.source), root(&mut parent, a.target));
        if r != s {
            parent[r] = s;
            tree.push(a.id);
        }
    }
    tree
}

struct Search<'a, F> {
    tq: &'a Quiver,
    srels: &'a [AlgebraElement<F>],
    grid: &'a [F],
    order: &'a [usize],
    ready: &'a [usize],
    targets: &'a [usize],
    spans: &'a HashMap<(usize, usize), Echelon<F>>,
    index: &'a HashMap<Path, usize>,
    sigma: &'a VertexPermutation,
}

impl<F: Field> Search<'_, F> {
    fn descend(&self, depth: usize, coeffs: &mut Vec<Option<F>>) -> bool {
        if depth == self.order.len() {
            return self
                .srels
                .iter()
                .all(|rel| self.relation_maps_in(rel, coeffs));
        }
        let x = self.order[depth];
        for g in self.grid {
            coeffs[x] = Some(g.clone());
            let ok = self
                .srels
                .iter()
                .zip(self.ready)
                .filter(|(_, &r)| r == depth)
                .all(|(rel, _)| self.relation_maps_in(rel, coeffs));
            if ok && self.descend(depth + 1, coeffs) {
                return true;
            }
        }
        coeffs[x] = None;
        false
    }

    fn relation_maps_in(&self, rel: &AlgebraElement<F>, coeffs: &[Option<F>]) -> bool {
        let mut v: BTreeMap<usize, F> = BTreeMap::new();
        let mut block = None;
        for (p, c) in rel.terms() {
            let mut coeff = c.clone();
            let mut arrows = Vec::with_capacity(p.len());
            for &a in p.arrows() {
                coeff = coeff * coeffs[a].as_ref().expect("assigned");
                arrows.push(self.targets[a]);
            }
            let image = self
                .tq
                .path(self.sigma.apply(p.source()), &arrows)
                .expect("block-compatible image");
            block = Some((image.source(), image.target()));
            let k = self.index[&image];
            let e = v.remove(&k).unwrap_or_else(F::zero) + coeff;
            if !e.is_zero() {
                v.insert(k, e);
            }
        }
        if v.is_empty() {
            return true;
        }
        match block.and_then(|b| self.spans.get(&b)) {
            Some(span) => span.contains(v),
            None => false,
        }
    }
}
