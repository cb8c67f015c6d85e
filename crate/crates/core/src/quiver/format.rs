//! The quiver text format: a JSON document
//!
//! ```text
//! {
//!   "vertices": 2,
//!   "vertex_base": 1,
//!   "arrows": [
//!     { "label": "a", "source": "e1", "target": "e2" }
//!   ]
//! }
//! ```
//!
//! Endpoints may be written as `"eK"` (offset by `vertex_base`) or as bare
//! 0-based indices; serialization always emits the `"eK"` form.

use serde::{Deserialize, Serialize};

use super::Quiver;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    pub vertices: usize,
    #[serde(default)]
    pub vertex_base: usize,
    pub arrows: Vec<ArrowEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub label: String,
    pub source: VertexRef,
    pub target: VertexRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Label(String),
}

impl VertexRef {
    pub(crate) fn resolve(&self, base: usize, n: usize) -> Result<usize> {
        let v = match self {
            VertexRef::Index(i) => Some(*i),
            VertexRef::Label(s) => s
                .strip_prefix('e')
                .and_then(|k| k.parse::<usize>().ok())
                .and_then(|k| k.checked_sub(base)),
        };
        v.filter(|&v| v < n)
            .ok_or_else(|| Error::Parse(format!("bad vertex reference {self:?}")))
    }
}

impl QuiverDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("quiver document: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("quiver documents serialize");
        s.push('\n');
        s
    }

    pub fn to_quiver(&self) -> Result<Quiver> {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                Ok((
                    a.label.clone(),
                    a.source.resolve(self.vertex_base, self.vertices)?,
                    a.target.resolve(self.vertex_base, self.vertices)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::with_base(self.vertices, self.vertex_base, arrows)
    }
}

impl Quiver {
    pub fn to_document(&self) -> QuiverDocument {
        QuiverDocument {
            vertices: self.vertex_count,
            vertex_base: self.vertex_base,
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowEntry {
                    label: a.label.clone(),
                    source: VertexRef::Label(self.vertex_label(a.source)),
                    target: VertexRef::Label(self.vertex_label(a.target)),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_document().to_text()
    }

    pub fn from_text(text: &str) -> Result<Quiver> {
        QuiverDocument::parse(text)?.to_quiver()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_indices_and_labels() {
        let text = r#"{"vertices": 2, "vertex_base": 1,
            "arrows": [{"label": "a", "source": "e1", "target": 1},
                       {"label": "b", "source": 1, "target": "e1"}]}"#;
        let q = Quiver::from_text(text).unwrap();
        assert_eq!(q.adjacency().to_rows(), vec![vec![0, 1], vec![1, 0]]);
        let again = Quiver::from_text(&q.to_text()).unwrap();
        assert_eq!(q, again);
        assert_eq!(again.to_text(), q.to_text());
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(Quiver::from_text("{").is_err());
        assert!(Quiver::from_text(
            r#"{"vertices": 1, "arrows": [{"label": "a", "source": "e1", "target": "e0"}]}"#
        )
        .is_err());
        assert!(Quiver::from_text(r#"{"vertices": 1, "arrows": [], "extra": 1}"#).is_err());
    }
}
