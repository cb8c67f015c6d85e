//! Mesh text format: a JSON document holding the quiver, `μ` as a list of
//! vertex images, and `τ` as a map from arrow label to a linear combination
//! of arrows.
//!
//! ```text
//! { "quiver": { … }, "mu": ["e1", "e2"], "tau": { "a": "b", "d": "-a - c" } }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MeshData;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{QuiverDocument, VertexPermutation, VertexRef};
use crate::rewrite::{parse_element, MonomialOrder};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshDocument {
    pub quiver: QuiverDocument,
    pub mu: Vec<VertexRef>,
    pub tau: BTreeMap<String, String>,
}

impl MeshDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("mesh document: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("mesh documents serialize");
        s.push('\n');
        s
    }

    pub fn to_mesh<F: Field>(&self) -> Result<MeshData<F>> {
        let quiver = self.quiver.to_quiver()?;
        let n = quiver.vertex_count();
        let images = self
            .mu
            .iter()
            .map(|v| v.resolve(quiver.vertex_base(), n))
            .collect::<Result<Vec<_>>>()?;
        let mu = VertexPermutation::new(images).map_err(|e| Error::Parse(e.to_string()))?;
        let m = quiver.arrow_count();
        let mut tau = Matrix::zeros(m, m);
        for (label, image) in &self.tau {
            let x = quiver
                .arrow_by_label(label)
                .ok_or_else(|| Error::Parse(format!("tau names unknown arrow {label}")))?
                .id;
            let elem = parse_element::<F>(&quiver, image)?;
            for (p, c) in elem.terms() {
                if p.len() != 1 {
                    return Err(Error::Parse(format!(
                        "tau({label}) must be a combination of arrows"
                    )));
                }
                tau[(x, p.arrows()[0])] = c.clone();
            }
        }
        MeshData::new(quiver, mu, tau)
    }
}

impl<F: Field> MeshData<F> {
    pub fn to_document(&self) -> MeshDocument {
        let q = self.quiver();
        let order = MonomialOrder::declaration(q);
        let tau = q
            .arrows()
            .iter()
            .filter(|a| self.tau().row(a.id).iter().any(|c| !c.is_zero()))
            .map(|a| {
                (
                    a.label.clone(),
                    self.tau_image(a.id).display(q, &order).to_string(),
                )
            })
            .collect();
        MeshDocument {
            quiver: q.to_document(),
            mu: self
                .mu()
                .images()
                .iter()
                .map(|&v| VertexRef::Label(q.vertex_label(v)))
                .collect(),
            tau,
        }
    }

    pub fn to_text(&self) -> String {
        self.to_document().to_text()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        MeshDocument::parse(text)?.to_mesh()
    }
}

#[cfg(test)]
mod tests {
    use crate::mesh::{construct_family, FamilyParams, MeshData};
    use crate::scalar::{QuadExt, Rational};

    #[test]
    fn round_trip() {
        let alg = construct_family(&FamilyParams::dq(Rational::new(-2, 3))).unwrap();
        let text = alg.mesh.to_text();
        let back: MeshData<Rational> = MeshData::from_text(&text).unwrap();
        assert_eq!(back, alg.mesh);
        assert_eq!(back.to_text(), text);
        let alg = construct_family(&FamilyParams::bq(
            QuadExt::new(Rational::from(1), Rational::from(2), 3).unwrap(),
        ))
        .unwrap();
        let back: MeshData<QuadExt> = MeshData::from_text(&alg.mesh.to_text()).unwrap();
        assert_eq!(back, alg.mesh);
    }

    #[test]
    fn rejects_paths_of_length_two() {
        let alg = construct_family(&FamilyParams::<Rational>::j()).unwrap();
        let text = alg.mesh.to_text().replace("\"-d\"", "\"-d*a\"");
        assert!(MeshData::<Rational>::from_text(&text).is_err());
    }
}
