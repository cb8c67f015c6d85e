//! Mesh algebras `A(Q, τ) = 𝕜Q / (ω)` with `ω = Σ τ(x)·x`, and the named
//! families built from them.

mod families;
mod format;

use std::fmt;

use crate::error::{Error, Result};
use crate::hilbert::CyPolynomial;
use crate::linalg::Matrix;
use crate::quiver::{ArrowId, Path, Quiver, VertexId, VertexPermutation};
use crate::rewrite::AlgebraElement;
use crate::scalar::Field;

pub use families::{construct_family, Family, FamilyAlgebra, FamilyParams};
pub(crate) use families::{kronecker_pair_quiver, looped_pair_quiver};
pub use format::MeshDocument;

/// A quiver with a vertex permutation `μ` and a linear map `τ` on arrows.
///
/// Row `x` of `tau` holds the coordinates of `τ(x)` in the arrow basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshData<F> {
    quiver: Quiver,
    mu: VertexPermutation,
    tau: Matrix<F>,
}

/// Outcome of [`validate_mesh`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MeshReport {
    pub invertible: bool,
    pub zero_rows: Vec<ArrowId>,
    /// `(x, y)` with `τ(x)` having a `y`-coefficient outside its allowed block.
    pub violations: Vec<(ArrowId, ArrowId)>,
}

impl MeshReport {
    pub fn is_valid(&self) -> bool {
        self.invertible && self.violations.is_empty()
    }
}

impl<F: Field> MeshData<F> {
    /// Checks only the shapes; use [`validate_mesh`] for the mesh conditions.
    pub fn new(quiver: Quiver, mu: VertexPermutation, tau: Matrix<F>) -> Result<Self> {
        let m = quiver.arrow_count();
        if tau.rows() != m || tau.cols() != m {
            return Err(Error::Structural(format!(
                "tau is {}x{} but the quiver has {m} arrows",
                tau.rows(),
                tau.cols()
            )));
        }
        if mu.len() != quiver.vertex_count() {
            return Err(Error::Structural(
                "mu does not act on the quiver's vertices".into(),
            ));
        }
        Ok(MeshData { quiver, mu, tau })
    }

    /// Builds `τ` from `(arrow, [(image arrow, coefficient)])` by label.
    pub fn from_images(
        quiver: Quiver,
        mu: VertexPermutation,
        images: &[(&str, Vec<(&str, F)>)],
    ) -> Result<Self> {
        let m = quiver.arrow_count();
        let mut tau = Matrix::zeros(m, m);
        let id = |l: &str| {
            quiver
                .arrow_by_label(l)
                .map(|a| a.id)
                .ok_or_else(|| Error::Structural(format!("unknown arrow {l}")))
        };
        for (x, image) in images {
            let x = id(x)?;
            for (y, c) in image {
                tau[(x, id(y)?)] = c.clone();
            }
        }
        Self::new(quiver, mu, tau)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn mu(&self) -> &VertexPermutation {
        &self.mu
    }

    pub fn tau(&self) -> &Matrix<F> {
        &self.tau
    }

    /// `τ(x)` as a degree-one element.
    pub fn tau_image(&self, x: ArrowId) -> AlgebraElement<F> {
        AlgebraElement::from_terms(
            self.tau
                .row(x)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(y, c)| (self.arrow(y), c.clone())),
        )
    }

    fn arrow(&self, id: ArrowId) -> Path {
        self.quiver.arrow_path(id).expect("arrow id in range")
    }

    pub fn scaled(&self, s: &F) -> Self {
        MeshData {
            quiver: self.quiver.clone(),
            mu: self.mu.clone(),
            tau: self.tau.scale(s),
        }
    }

    pub fn cy_polynomial(&self) -> CyPolynomial {
        CyPolynomial::new(self.quiver.adjacency(), self.mu.clone()).expect("sizes agree")
    }

    /// `ω_j`: the terms `τ(x)·x` over arrows `x` ending at `j`.
    pub fn component(&self, j: VertexId) -> Result<AlgebraElement<F>> {
        let mut out = AlgebraElement::zero();
        for x in self.quiver.arrows().iter().filter(|a| a.target == j) {
            let xp = self.arrow(x.id);
            for (y, c) in self.tau_image(x.id).terms() {
                let yx = self.quiver.compose(y, &xp)?.ok_or_else(|| {
                    Error::Structural(format!(
                        "tau({}) has a term {} that does not compose with it",
                        x.label,
                        self.quiver.render_path(y)
                    ))
                })?;
                out.add_term(yx, c.clone());
            }
        }
        Ok(out)
    }
}

/// Checks that `τ` is invertible and maps each arrow `i → j` into the span
/// of arrows `μ⁻¹(j) → i`.
pub fn validate_mesh<F: Field>(m: &MeshData<F>) -> MeshReport {
    let mu_inv = m.mu.inverse();
    let arrows = m.quiver.arrows();
    let mut report = MeshReport {
        invertible: m.tau.is_invertible(),
        ..MeshReport::default()
    };
    for x in arrows {
        let row = m.tau.row(x.id);
        if row.iter().all(Field::is_zero) {
            report.zero_rows.push(x.id);
        }
        for y in arrows {
            if !row[y.id].is_zero() && (y.source != mu_inv.apply(x.target) || y.target != x.source)
            {
                report.violations.push((x.id, y.id));
            }
        }
    }
    report
}

fn require_compatible<F: Field>(m: &MeshData<F>) -> Result<()> {
    let report = validate_mesh(m);
    if let Some(&(x, y)) = report.violations.first() {
        return Err(Error::Structural(format!(
            "tau({}) has a {}-term outside the allowed block",
            m.quiver.arrows()[x].label,
            m.quiver.arrows()[y].label
        )));
    }
    Ok(())
}

/// `ω = Σ_x τ(x)·x`.
pub fn potential<F: Field>(m: &MeshData<F>) -> Result<AlgebraElement<F>> {
    require_compatible(m)?;
    let mut out = AlgebraElement::zero();
    for j in 0..m.quiver.vertex_count() {
        out = out.add(&m.component(j)?);
    }
    Ok(out)
}

/// The components `ω_0, …, ω_{n−1}`, one per vertex.
pub fn mesh_relations<F: Field>(m: &MeshData<F>) -> Result<Vec<AlgebraElement<F>>> {
    require_compatible(m)?;
    (0..m.quiver.vertex_count())
        .map(|j| {
            let w = m.component(j)?;
            if w.is_zero() {
                Err(Error::Degenerate(format!(
                    "mesh component at {} vanishes",
                    m.quiver.vertex_label(j)
                )))
            } else {
                Ok(w)
            }
        })
        .collect()
}

impl fmt::Display for MeshReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let mut parts = Vec::new();
        if !self.invertible {
            parts.push("tau is not invertible".to_string());
        }
        if !self.zero_rows.is_empty() {
            parts.push(format!("zero rows at arrows {:?}", self.zero_rows));
        }
        if !self.violations.is_empty() {
            parts.push(format!("block violations {:?}", self.violations));
        }
        write!(f, "invalid: {}", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{parse_element, MonomialOrder};
    use crate::scalar::Rational;

    fn j_mesh() -> MeshData<Rational> {
        let q =
            Quiver::with_base(2, 1, [("a", 0, 0), ("b", 0, 1), ("c", 1, 1), ("d", 1, 0)]).unwrap();
        let one = Rational::from(1);
        MeshData::from_images(
            q,
            VertexPermutation::identity(2),
            &[
                ("a", vec![("a", one.clone())]),
                ("b", vec![("d", -one.clone())]),
                ("c", vec![("c", one.clone())]),
                ("d", vec![("b", -one)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn j_potential_splits() {
        let m = j_mesh();
        let q = m.quiver().clone();
        let w = potential(&m).unwrap();
        assert_eq!(w, parse_element(&q, "a^2 - d*b + c^2 - b*d").unwrap());
        let rels = mesh_relations(&m).unwrap();
        assert_eq!(rels[0], parse_element(&q, "a^2 - b*d").unwrap());
        assert_eq!(rels[1], parse_element(&q, "c^2 - d*b").unwrap());
        assert_eq!(rels[0].add(&rels[1]), w);
        assert!(validate_mesh(&m).is_valid());
        let ord = MonomialOrder::declaration(&q);
        assert_eq!(rels[1].display(&q, &ord).to_string(), "-d*b + c^2");
    }

    #[test]
    fn invalid_meshes_are_reported() {
        let m = j_mesh();
        let mut tau = m.tau().clone();
        tau[(1, 3)] = Rational::from(0);
        let bad = MeshData::new(m.quiver().clone(), m.mu().clone(), tau).unwrap();
        let r = validate_mesh(&bad);
        assert!(!r.invertible);
        assert_eq!(r.zero_rows, vec![1]);
        let mut tau = m.tau().clone();
        tau[(0, 1)] = Rational::from(5);
        let bad = MeshData::new(m.quiver().clone(), m.mu().clone(), tau).unwrap();
        let r = validate_mesh(&bad);
        assert_eq!(r.violations, vec![(0, 1)]);
        assert!(potential(&bad).is_err());
    }
}
