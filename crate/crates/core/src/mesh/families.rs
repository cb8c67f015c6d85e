use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hilbert::CyPolynomial;
use crate::quiver::{Quiver, VertexPermutation};
use crate::rewrite::{AlgebraElement, MonomialOrder, RewriteSystem};
use crate::scalar::Field;

use super::{mesh_relations, MeshData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    An,
    Bn,
    Aq,
    Bq,
    J,
    Dq,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::An,
        Family::Bn,
        Family::Aq,
        Family::Bq,
        Family::J,
        Family::Dq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::An => "An",
            Family::Bn => "Bn",
            Family::Aq => "Aq",
            Family::Bq => "Bq",
            Family::J => "J",
            Family::Dq => "Dq",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown family {s:?}; expected an, bn, aq, bq, j or dq"
                ))
            })
    }
}

/// A family tag with its parameters. `n` is the number of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams<F> {
    pub family: Family,
    pub n: usize,
    pub q: Vec<F>,
}

impl<F: Field> FamilyParams<F> {
    pub fn an(q: Vec<F>) -> Self {
        FamilyParams {
            family: Family::An,
            n: q.len(),
            q,
        }
    }

    pub fn bn(q: Vec<F>) -> Self {
        FamilyParams {
            family: Family::Bn,
            n: q.len(),
            q,
        }
    }

    pub fn aq(q: F) -> Self {
        FamilyParams {
            family: Family::Aq,
            n: 2,
            q: vec![q],
        }
    }

    pub fn bq(q: F) -> Self {
        FamilyParams {
            family: Family::Bq,
            n: 2,
            q: vec![q],
        }
    }

    pub fn dq(q: F) -> Self {
        FamilyParams {
            family: Family::Dq,
            n: 2,
            q: vec![q],
        }
    }

    pub fn j() -> Self {
        FamilyParams {
            family: Family::J,
            n: 2,
            q: Vec::new(),
        }
    }

    /// Builds parameters from a tag and a parameter list, inferring `n`.
    pub fn from_parts(family: Family, q: Vec<F>) -> Result<Self> {
        let p = match family {
            Family::An => Self::an(q),
            Family::Bn => Self::bn(q),
            Family::J => FamilyParams { family, n: 2, q },
            _ => FamilyParams { family, n: 2, q },
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let expected_len = match self.family {
            Family::An => {
                if self.n < 1 {
                    return Err(Error::Parameter("An needs n >= 1".into()));
                }
                self.n
            }
            Family::Bn => {
                if self.n < 2 {
                    return Err(Error::Parameter("Bn needs n >= 2".into()));
                }
                self.n
            }
            Family::J => 0,
            Family::Aq | Family::Bq | Family::Dq => 1,
        };
        if self.q.len() != expected_len {
            return Err(Error::Parameter(format!(
                "{} takes {expected_len} parameter(s), got {}",
                self.family,
                self.q.len()
            )));
        }
        if self.q.iter().any(Field::is_zero) {
            return Err(Error::Parameter("parameters must be nonzero".into()));
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for FamilyParams<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::J => write!(f, "J"),
            Family::An | Family::Bn => {
                let q: Vec<String> = self.q.iter().map(ToString::to_string).collect();
                write!(f, "{}{}({})", &self.family.name()[..1], self.n, q.join(","))
            }
            fam => write!(f, "{}({})", &fam.name()[..1], self.q[0]),
        }
    }
}

/// A constructed family member: quiver, mesh data, relations and the
/// monomial order used for its rewriting system.
#[derive(Clone, Debug)]
pub struct FamilyAlgebra<F> {
    pub params: FamilyParams<F>,
    pub mesh: MeshData<F>,
    pub relations: Vec<AlgebraElement<F>>,
    pub order: MonomialOrder,
}

impl<F: Field> FamilyAlgebra<F> {
    pub fn quiver(&self) -> &Quiver {
        self.mesh.quiver()
    }

    pub fn cy_polynomial(&self) -> CyPolynomial {
        self.mesh.cy_polynomial()
    }

    pub fn system(&self, max_degree: usize) -> Result<RewriteSystem<F>> {
        RewriteSystem::complete(
            self.quiver(),
            &self.relations,
            self.order.clone(),
            max_degree,
        )
    }
}

fn two_vertex(arrows: [(&str, usize, usize); 4]) -> Quiver {
    Quiver::with_base(2, 1, arrows).expect("fixed quiver")
}

/// Quiver `a, c: e1 → e2`, `b, d: e2 → e1`.
pub(crate) fn kronecker_pair_quiver() -> Quiver {
    two_vertex([("a", 0, 1), ("b", 1, 0), ("c", 0, 1), ("d", 1, 0)])
}

/// Quiver with loops `a` at `e1`, `c` at `e2`, and `b: e1 → e2`, `d: e2 → e1`.
pub(crate) fn looped_pair_quiver() -> Quiver {
    two_vertex([("a", 0, 0), ("b", 0, 1), ("c", 1, 1), ("d", 1, 0)])
}

pub fn construct_family<F: Field>(params: &FamilyParams<F>) -> Result<FamilyAlgebra<F>> {
    params.validate()?;
    let one = F::one();
    let q = &params.q;
    let n = params.n;
    let mesh = match params.family {
        Family::An => {
            let mut arrows: Vec<(String, usize, usize)> =
                (0..n).map(|i| (format!("a_{i}"), i, (i + 1) % n)).collect();
            arrows.extend((0..n).map(|i| (format!("a*_{i}"), (i + 1) % n, i)));
            let quiver = Quiver::new(n, arrows)?;
            let labels: Vec<(String, String)> = (0..n)
                .map(|i| (format!("a_{i}"), format!("a*_{i}")))
                .collect();
            let mut images = Vec::new();
            for (i, (a, a_star)) in labels.iter().enumerate() {
                images.push((a.as_str(), vec![(a_star.as_str(), -q[(i + 1) % n].clone())]));
                images.push((a_star.as_str(), vec![(a.as_str(), one.clone())]));
            }
            MeshData::from_images(quiver, VertexPermutation::identity(n), &images)?
        }
        Family::Bn => {
            let mut arrows: Vec<(String, usize, usize)> =
                (0..n).map(|i| (format!("a_{i}"), i, (i + 1) % n)).collect();
            arrows.extend((0..n).map(|i| (format!("b_{i}"), i, i)));
            let quiver = Quiver::new(n, arrows)?;
            let a: Vec<String> = (0..n).map(|i| format!("a_{i}")).collect();
            let b: Vec<String> = (0..n).map(|i| format!("b_{i}")).collect();
            let mut images = Vec::new();
            for i in 0..n {
                let prev = (i + n - 1) % n;
                images.push((a[i].as_str(), vec![(b[i].as_str(), one.clone())]));
                images.push((b[i].as_str(), vec![(a[prev].as_str(), -q[prev].clone())]));
            }
            MeshData::from_images(quiver, VertexPermutation::rotation(n, 1), &images)?
        }
        Family::Aq => MeshData::from_images(
            kronecker_pair_quiver(),
            VertexPermutation::identity(2),
            &[
                ("a", vec![("b", one.clone())]),
                ("b", vec![("a", one.clone())]),
                ("c", vec![("d", -q[0].clone())]),
                ("d", vec![("c", -one.clone())]),
            ],
        )?,
        Family::Dq => MeshData::from_images(
            kronecker_pair_quiver(),
            VertexPermutation::identity(2),
            &[
                ("a", vec![("b", one.clone())]),
                ("b", vec![("a", one.clone())]),
                ("c", vec![("d", -q[0].clone())]),
                ("d", vec![("a", -one.clone()), ("c", -one.clone())]),
            ],
        )?,
        Family::Bq => MeshData::from_images(
            looped_pair_quiver(),
            VertexPermutation::new(vec![1, 0])?,
            &[
                ("a", vec![("d", -q[0].clone())]),
                ("b", vec![("a", one.clone())]),
                ("c", vec![("b", -one.clone())]),
                ("d", vec![("c", one.clone())]),
            ],
        )?,
        Family::J => MeshData::from_images(
            looped_pair_quiver(),
            VertexPermutation::identity(2),
            &[
                ("a", vec![("a", one.clone())]),
                ("b", vec![("d", -one.clone())]),
                ("c", vec![("c", one.clone())]),
                ("d", vec![("b", -one.clone())]),
            ],
        )?,
    };
    let relations = mesh_relations(&mesh)?;
    let order = match params.family {
        Family::Dq => MonomialOrder::parse(mesh.quiver(), "c>b>d>a")?,
        _ => MonomialOrder::declaration(mesh.quiver()),
    };
    Ok(FamilyAlgebra {
        params: params.clone(),
        mesh,
        relations,
        order,
    })
}
