use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver, VertexId};
use crate::scalar::Field;

use super::MonomialOrder;

/// A finite linear combination of paths with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<F> {
    terms: BTreeMap<Path, F>,
}

impl<F: Field> Default for AlgebraElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(p, F::one())
    }

    pub fn term(p: Path, coeff: F) -> Self {
        let mut e = Self::zero();
        e.add_term(p, coeff);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Path, F)>) -> Self {
        let mut e = Self::zero();
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn add_term(&mut self, p: Path, coeff: F) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> F {
        self.terms.get(p).cloned().unwrap_or_else(F::zero)
    }

    /// Largest path length among the terms; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Path::len).max()
    }

    /// `(length, source, target)` shared by all terms, if any.
    pub fn homogeneous_block(&self) -> Option<(usize, VertexId, VertexId)> {
        let mut keys = self.terms.keys();
        let first = keys.next()?;
        let block = (first.len(), first.source(), first.target());
        keys.all(|p| (p.len(), p.source(), p.target()) == block)
            .then_some(block)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Path, &F)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), c.clone() * s))
                .collect(),
        }
    }

    /// Product in the path algebra; non-composable pairs contribute zero.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.concat(q) {
                    out.add_term(pq, a.clone() * b);
                }
            }
        }
        out
    }

    /// Terms ending at vertex `v`, i.e. `x·e_v`.
    pub fn ending_at(&self, v: VertexId) -> Self {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.target() == v)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// `e_u · x · e_v`.
    pub fn block(&self, u: VertexId, v: VertexId) -> Self {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.source() == u && p.target() == v)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> AlgebraElement<G> {
        AlgebraElement::from_terms(self.terms.iter().map(|(p, c)| (p.clone(), f(c))))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, order: &MonomialOrder) -> Result<Self> {
        let (_, lc) = self
            .leading_term(order)
            .ok_or_else(|| Error::Degenerate("zero element has no leading term".into()))?;
        Ok(self.scale(&lc.inv()?))
    }

    /// Displays terms from largest to smallest under `order`.
    pub fn display<'a>(
        &'a self,
        quiver: &'a Quiver,
        order: &'a MonomialOrder,
    ) -> ElementDisplay<'a, F> {
        ElementDisplay {
            element: self,
            quiver,
            order,
        }
    }
}

pub struct ElementDisplay<'a, F> {
    element: &'a AlgebraElement<F>,
    quiver: &'a Quiver,
    order: &'a MonomialOrder,
}

impl<F: Field> fmt::Display for ElementDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.element.terms.iter().collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        terms.sort_by(|a, b| self.order.compare(b.0, a.0));
        for (i, (p, c)) in terms.into_iter().enumerate() {
            let word = self.quiver.render_path(p);
            let negative = c.to_rational().is_some_and(|r| r.is_negative());
            let mag = if negative { -c.clone() } else { c.clone() };
            let sign = match (i, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            f.write_str(sign)?;
            if mag.is_one() {
                write!(f, "{word}")?;
            } else if mag.is_simple() {
                write!(f, "{mag}*{word}")?;
            } else {
                write!(f, "({mag})*{word}")?;
            }
        }
        Ok(())
    }
}
