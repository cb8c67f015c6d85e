use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Path, Quiver};

/// Degree-lexicographic order on paths induced by a total order on arrows.
///
/// Paths compare by length, then by `(source, target)`, then left to right
/// by arrow rank. Reductions only ever compare paths inside one
/// `(source, target)` block, so the middle key just makes the order total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    rank: Vec<u32>,
}

impl MonomialOrder {
    /// Later-declared arrows are larger: declaring `a, b, c, d` gives `d > c > b > a`.
    pub fn declaration(quiver: &Quiver) -> Self {
        MonomialOrder {
            rank: (0..quiver.arrow_count() as u32).collect(),
        }
    }

    /// Arrows listed from largest to smallest.
    pub fn from_descending(quiver: &Quiver, descending: &[ArrowId]) -> Result<Self> {
        let n = quiver.arrow_count();
        let mut rank = vec![u32::MAX; n];
        if descending.len() != n {
            return Err(Error::Parse(format!(
                "arrow order lists {} arrows, quiver has {n}",
                descending.len()
            )));
        }
        for (pos, &id) in descending.iter().enumerate() {
            quiver.arrow(id)?;
            if rank[id] != u32::MAX {
                return Err(Error::Parse("arrow listed twice in order".into()));
            }
            rank[id] = (n - 1 - pos) as u32;
        }
        Ok(MonomialOrder { rank })
    }

    /// Parses `d>c>b>a` (labels, largest first).
    pub fn parse(quiver: &Quiver, spec: &str) -> Result<Self> {
        let ids = spec
            .split('>')
            .map(|l| {
                quiver
                    .arrow_by_label(l.trim())
                    .map(|a| a.id)
                    .ok_or_else(|| Error::Parse(format!("unknown arrow {:?} in order", l.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_descending(quiver, &ids)
    }

    pub fn rank(&self, id: ArrowId) -> u32 {
        self.rank[id]
    }

    pub fn arrow_count(&self) -> usize {
        self.rank.len()
    }

    /// The arrow of a given rank.
    pub(crate) fn unrank_table(&self) -> Vec<ArrowId> {
        let mut table = vec![0; self.rank.len()];
        for (id, &r) in self.rank.iter().enumerate() {
            table[r as usize] = id;
        }
        table
    }

    pub fn compare(&self, p: &Path, q: &Path) -> Ordering {
        p.len()
            .cmp(&q.len())
            .then((p.source(), p.target()).cmp(&(q.source(), q.target())))
            .then_with(|| {
                let pr = p.arrows().iter().map(|&a| self.rank[a]);
                let qr = q.arrows().iter().map(|&a| self.rank[a]);
                pr.cmp(qr)
            })
    }

    /// Renders as `d>c>b>a`.
    pub fn describe(&self, quiver: &Quiver) -> String {
        let table = self.unrank_table();
        table
            .iter()
            .rev()
            .map(|&id| quiver.arrows()[id].label.as_str())
            .collect::<Vec<_>>()
            .join(">")
    }
}
