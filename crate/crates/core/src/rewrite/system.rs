//! Degree-truncated completion of homogeneous relations and reduction to
//! normal form.
//!
//! Internally paths are stored as words of arrow *ranks* so the monomial
//! order inside a `(source, target)` block is plain lexicographic order on
//! `Vec<u32>`, and a `BTreeMap` keeps the largest term at the back.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::quiver::{ArrowId, Path, Quiver, VertexId};
use crate::scalar::Field;

use super::{AlgebraElement, MonomialOrder};

type Word = Vec<u32>;
type Poly<F> = BTreeMap<Word, F>;

#[derive(Clone, Debug)]
struct Rule<F> {
    lead: Word,
    tail: Poly<F>,
}

/// `lead → tail`, read as `lead ≡ tail` modulo the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule<F> {
    pub lead: Path,
    pub tail: AlgebraElement<F>,
}

/// An overlap `u·w·v` of two rule leads `u·w` and `w·v`, together with the
/// normal form of the difference of its two one-step reductions.
#[derive(Clone, Debug)]
pub struct Ambiguity<F> {
    pub word: Path,
    pub left_rule: usize,
    pub right_rule: usize,
    pub resolution: AlgebraElement<F>,
}

/// An occurrence of a rule lead inside a term of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub path: Path,
    pub rule: usize,
    pub position: usize,
}

/// A completed, inter-reduced rewriting system for a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct RewriteSystem<F> {
    quiver: Quiver,
    order: MonomialOrder,
    unrank: Vec<ArrowId>,
    relations: Vec<AlgebraElement<F>>,
    rules: Vec<Rule<F>>,
    index: HashMap<Word, usize>,
    lead_lengths: BTreeSet<usize>,
    completed_to: usize,
    finite: bool,
    notices: Vec<String>,
}

impl<F: Field> RewriteSystem<F> {
    /// Runs overlap completion degree by degree up to `max_degree`.
    ///
    /// Rules are kept inter-reduced after every addition. Input relations
    /// that reduce to zero are dropped and recorded in [`Self::notices`].
    pub fn complete(
        quiver: &Quiver,
        relations: &[AlgebraElement<F>],
        order: MonomialOrder,
        max_degree: usize,
    ) -> Result<Self> {
        if max_degree < 2 {
            return Err(Error::Parameter(format!(
                "completion degree must be at least 2, got {max_degree}"
            )));
        }
        if order.arrow_count() != quiver.arrow_count() {
            return Err(Error::Structural(
                "monomial order does not match quiver".into(),
            ));
        }
        let mut sys = RewriteSystem {
            quiver: quiver.clone(),
            unrank: order.unrank_table(),
            order,
            relations: relations.to_vec(),
            rules: Vec::new(),
            index: HashMap::new(),
            lead_lengths: BTreeSet::new(),
            completed_to: max_degree,
            finite: false,
            notices: Vec::new(),
        };
        let mut inputs: BTreeMap<usize, Vec<(usize, Poly<F>)>> = BTreeMap::new();
        for (n, rel) in relations.iter().enumerate() {
            if rel.is_zero() {
                sys.notices
                    .push(format!("relation {n} is zero and was dropped"));
                continue;
            }
            let (len, _, _) = rel
                .homogeneous_block()
                .ok_or_else(|| Error::Structural(format!("relation {n} is not homogeneous")))?;
            if len < 2 {
                return Err(Error::Structural(format!(
                    "relation {n} has degree {len}; relations must lie in degree at least 2"
                )));
            }
            inputs.entry(len).or_default().push((n, sys.to_poly(rel)));
        }

        for degree in 2..=max_degree {
            let mut candidates: Vec<(Option<usize>, Poly<F>)> = sys
                .overlaps(degree, degree)
                .into_iter()
                .map(|(i, j, ov)| (None, sys.s_poly(i, j, ov)))
                .collect();
            for (n, p) in inputs.remove(&degree).unwrap_or_default() {
                candidates.push((Some(n), p));
            }
            for (origin, poly) in candidates {
                let reduced = sys.reduce(poly);
                if reduced.is_empty() {
                    if let Some(n) = origin {
                        sys.notices
                            .push(format!("relation {n} reduces to zero and was dropped"));
                    }
                    continue;
                }
                sys.add_rule(reduced)?;
            }
        }
        // relations above the cap are never seen; count them as truncation
        let beyond_inputs = !inputs.is_empty();
        sys.finite = !beyond_inputs && sys.overlaps(max_degree + 1, usize::MAX).is_empty();
        Ok(sys)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// The defining relations the system was built from.
    pub fn relations(&self) -> &[AlgebraElement<F>] {
        &self.relations
    }

    pub fn notices(&self) -> &[String] {
        &self.notices
    }

    pub fn completed_to(&self) -> usize {
        self.completed_to
    }

    /// Every ambiguity of degree at most this value resolves.
    pub fn confluent_to(&self) -> usize {
        self.completed_to
    }

    /// True when no overlap beyond the cap exists, so the rules form a
    /// finite complete system and normal forms are canonical in every degree.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// True when normal forms of degree `k` are canonical.
    pub fn guarantees(&self, k: usize) -> bool {
        self.finite || k <= self.completed_to
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        if self.guarantees(k) {
            Ok(())
        } else {
            Err(Error::Truncation {
                requested: k,
                available: self.completed_to,
            })
        }
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> Vec<RewriteRule<F>> {
        self.rules
            .iter()
            .map(|r| RewriteRule {
                lead: self.word_to_path(&r.lead, None),
                tail: self.poly_to_element(&r.tail, self.block_of(&r.lead)),
            })
            .collect()
    }

    /// Rewrites until no term contains a rule lead.
    pub fn normal_form(&self, x: &AlgebraElement<F>) -> AlgebraElement<F> {
        let mut blocks: BTreeMap<(VertexId, VertexId, usize), Poly<F>> = BTreeMap::new();
        for (p, c) in x.terms() {
            let word = self.path_to_word(p);
            add_to(
                blocks.entry((p.source(), p.target(), p.len())).or_default(),
                word,
                c.clone(),
            );
        }
        let mut out = AlgebraElement::zero();
        for ((s, t, _), poly) in blocks {
            let reduced = self.reduce(poly);
            for (p, c) in self.poly_to_element(&reduced, (s, t)).terms() {
                out.add_term(p.clone(), c.clone());
            }
        }
        out
    }

    /// True iff `x` lies in the ideal; needs `deg x` within the canonical range.
    pub fn ideal_membership(&self, x: &AlgebraElement<F>) -> Result<bool> {
        if let Some(d) = x.degree() {
            self.check_degree(d)?;
        }
        Ok(self.normal_form(x).is_zero())
    }

    /// Number of irreducible paths of length `k` from `i` to `j`.
    pub fn graded_dim(&self, k: usize, i: VertexId, j: VertexId) -> Result<usize> {
        Ok(self.irreducible_paths(k, i, j)?.len())
    }

    /// Irreducible paths of length `k` from `i` to `j`: a basis of `e_i A_k e_j`.
    pub fn irreducible_paths(&self, k: usize, i: VertexId, j: VertexId) -> Result<Vec<Path>> {
        self.check_degree(k)?;
        let n = self.quiver.vertex_count();
        if i >= n || j >= n {
            return Err(Error::Structural("vertex out of range".into()));
        }
        let mut out = Vec::new();
        self.walk_irreducible(i, k, &mut |word, target| {
            if word.len() == k && target == j {
                out.push(self.word_to_path(word, Some(i)));
            }
        });
        Ok(out)
    }

    /// `H_0, …, H_D` with `(H_k)_{ij}` the number of irreducible paths.
    pub fn graded_dims(&self, max_k: usize) -> Result<Vec<IntMatrix>> {
        self.check_degree(max_k)?;
        let n = self.quiver.vertex_count();
        let mut out = vec![IntMatrix::zeros(n); max_k + 1];
        for i in 0..n {
            self.walk_irreducible(i, max_k, &mut |word, target| {
                out[word.len()][(i, target)] += 1;
            });
        }
        Ok(out)
    }

    /// Depth-first walk over irreducible paths from `source` up to `max_len`.
    fn walk_irreducible(
        &self,
        source: VertexId,
        max_len: usize,
        visit: &mut impl FnMut(&[u32], VertexId),
    ) {
        let n = self.quiver.vertex_count();
        let mut out_arrows: Vec<Vec<(u32, VertexId)>> = vec![Vec::new(); n];
        for a in self.quiver.arrows() {
            out_arrows[a.source].push((self.order.rank(a.id), a.target));
        }
        let mut word: Word = Vec::new();
        self.walk_rec(source, max_len, &out_arrows, &mut word, visit);
    }

    fn walk_rec(
        &self,
        at: VertexId,
        max_len: usize,
        out_arrows: &[Vec<(u32, VertexId)>],
        word: &mut Word,
        visit: &mut impl FnMut(&[u32], VertexId),
    ) {
        visit(word, at);
        if word.len() == max_len {
            return;
        }
        for &(rank, next) in &out_arrows[at] {
            word.push(rank);
            if !self.has_lead_suffix(word) {
                self.walk_rec(next, max_len, out_arrows, word, visit);
            }
            word.pop();
        }
    }

    fn has_lead_suffix(&self, word: &[u32]) -> bool {
        self.lead_lengths
            .iter()
            .take_while(|&&l| l <= word.len())
            .any(|&l| self.index.contains_key(&word[word.len() - l..]))
    }

    /// All overlaps among current leads with the ambiguity's degree in
    /// `lo..=hi`; returned as `(left rule, right rule, overlap length)`.
    fn overlaps(&self, lo: usize, hi: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (r1.lead.len(), r2.lead.len());
                for ov in 1..l1.min(l2) {
                    let deg = l1 + l2 - ov;
                    if deg < lo || deg > hi {
                        continue;
                    }
                    if r1.lead[l1 - ov..] == r2.lead[..ov] {
                        out.push((i, j, ov));
                    }
                }
            }
        }
        out
    }

    /// For leads `u·w` and `w·v`: `tail₁·v − u·tail₂`.
    fn s_poly(&self, i: usize, j: usize, ov: usize) -> Poly<F> {
        let (r1, r2) = (&self.rules[i], &self.rules[j]);
        let u = &r1.lead[..r1.lead.len() - ov];
        let v = &r2.lead[ov..];
        let mut out = Poly::new();
        for (w, c) in &r1.tail {
            add_to(&mut out, [w.as_slice(), v].concat(), c.clone());
        }
        for (w, c) in &r2.tail {
            add_to(&mut out, [u, w.as_slice()].concat(), -c.clone());
        }
        out
    }

    /// Ambiguities of degree at most `max_degree` with their resolutions.
    pub fn ambiguities(&self, max_degree: usize) -> Vec<Ambiguity<F>> {
        self.overlaps(0, max_degree)
            .into_iter()
            .map(|(i, j, ov)| {
                let r1 = &self.rules[i];
                let word: Word = [r1.lead.as_slice(), &self.rules[j].lead[ov..]].concat();
                let block = self.block_of(&word);
                Ambiguity {
                    word: self.word_to_path(&word, None),
                    left_rule: i,
                    right_rule: j,
                    resolution: self.poly_to_element(&self.reduce(self.s_poly(i, j, ov)), block),
                }
            })
            .collect()
    }

    fn find_lead(&self, word: &[u32]) -> Option<(usize, usize)> {
        for &l in &self.lead_lengths {
            if l > word.len() {
                break;
            }
            for pos in 0..=word.len() - l {
                if let Some(&r) = self.index.get(&word[pos..pos + l]) {
                    return Some((r, pos));
                }
            }
        }
        None
    }

    fn reduce(&self, mut work: Poly<F>) -> Poly<F> {
        let mut done = Poly::new();
        while let Some((word, coeff)) = work.pop_last() {
            match self.find_lead(&word) {
                Some((r, pos)) => {
                    let rule = &self.rules[r];
                    let end = pos + rule.lead.len();
                    for (w, c) in &rule.tail {
                        let replaced = [&word[..pos], w.as_slice(), &word[end..]].concat();
                        add_to(&mut work, replaced, coeff.clone() * c);
                    }
                }
                None => {
                    done.insert(word, coeff);
                }
            }
        }
        done
    }

    fn add_rule(&mut self, poly: Poly<F>) -> Result<()> {
        let (lead, lc) = poly
            .iter()
            .next_back()
            .map(|(w, c)| (w.clone(), c.clone()))
            .expect("nonzero polynomial");
        let neg_inv = -lc.inv()?;
        let tail: Poly<F> = poly
            .into_iter()
            .filter(|(w, _)| *w != lead)
            .map(|(w, c)| (w, c * &neg_inv))
            .collect();
        let idx = self.rules.len();
        self.index.insert(lead.clone(), idx);
        self.lead_lengths.insert(lead.len());
        self.rules.push(Rule {
            lead: lead.clone(),
            tail,
        });
        // keep tails irreducible
        for k in 0..self.rules.len() {
            if k == idx {
                continue;
            }
            let touched = self.rules[k].tail.keys().any(|w| contains(w, &lead));
            if touched {
                let tail = std::mem::take(&mut self.rules[k].tail);
                self.rules[k].tail = self.reduce(tail);
            }
        }
        Ok(())
    }

    fn path_to_word(&self, p: &Path) -> Word {
        p.arrows().iter().map(|&a| self.order.rank(a)).collect()
    }

    fn block_of(&self, word: &[u32]) -> (VertexId, VertexId) {
        let first = &self.quiver.arrows()[self.unrank[word[0] as usize]];
        let last = &self.quiver.arrows()[self.unrank[word[word.len() - 1] as usize]];
        (first.source, last.target)
    }

    /// `source` is needed only for the empty word.
    fn word_to_path(&self, word: &[u32], source: Option<VertexId>) -> Path {
        if word.is_empty() {
            return Path::trivial(source.expect("trivial path needs a vertex"));
        }
        let (s, t) = self.block_of(word);
        Path::from_parts(
            s,
            t,
            word.iter().map(|&r| self.unrank[r as usize]).collect(),
        )
    }

    fn to_poly(&self, x: &AlgebraElement<F>) -> Poly<F> {
        let mut out = Poly::new();
        for (p, c) in x.terms() {
            add_to(&mut out, self.path_to_word(p), c.clone());
        }
        out
    }

    fn poly_to_element(&self, poly: &Poly<F>, block: (VertexId, VertexId)) -> AlgebraElement<F> {
        AlgebraElement::from_terms(poly.iter().map(|(w, c)| {
            let p = if w.is_empty() {
                Path::trivial(block.0)
            } else {
                self.word_to_path(w, None)
            };
            (p, c.clone())
        }))
    }

    /// Every place a rule applies inside a term of `x`.
    pub fn reducible_sites(&self, x: &AlgebraElement<F>) -> Vec<Site> {
        let mut out = Vec::new();
        for (p, _) in x.terms() {
            let word = self.path_to_word(p);
            for (lead, &r) in &self.index {
                let l = lead.len();
                if l > word.len() {
                    continue;
                }
                for pos in 0..=word.len() - l {
                    if word[pos..pos + l] == lead[..] {
                        out.push(Site {
                            path: p.clone(),
                            rule: r,
                            position: pos,
                        });
                    }
                }
            }
        }
        out.sort_by(|a, b| (&a.path, a.rule, a.position).cmp(&(&b.path, b.rule, b.position)));
        out
    }

    /// Applies one rule at one site.
    pub fn rewrite_at(&self, x: &AlgebraElement<F>, site: &Site) -> Result<AlgebraElement<F>> {
        let coeff = x.coefficient(&site.path);
        let rule = self
            .rules
            .get(site.rule)
            .ok_or_else(|| Error::Structural("rule index out of range".into()))?;
        let word = self.path_to_word(&site.path);
        let end = site.position + rule.lead.len();
        if coeff.is_zero() || end > word.len() || word[site.position..end] != rule.lead[..] {
            return Err(Error::Structural("site does not match the element".into()));
        }
        let mut out = x.clone();
        out.add_term(site.path.clone(), -coeff.clone());
        for (w, c) in &rule.tail {
            let replaced = [&word[..site.position], w.as_slice(), &word[end..]].concat();
            out.add_term(self.word_to_path(&replaced, None), coeff.clone() * c);
        }
        Ok(out)
    }
}

fn add_to<F: Field>(poly: &mut Poly<F>, word: Word, coeff: F) {
    if coeff.is_zero() {
        return;
    }
    match poly.entry(word) {
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

fn contains(haystack: &[u32], needle: &[u32]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

impl<F: Field> fmt::Display for RewriteSystem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in self.rules() {
            writeln!(
                f,
                "{} -> {}",
                self.quiver.render_path(&rule.lead),
                rule.tail.display(&self.quiver, &self.order)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::parse_element;
    use crate::scalar::Rational;

    fn j_quiver() -> Quiver {
        Quiver::with_base(2, 1, [("a", 0, 0), ("b", 0, 1), ("c", 1, 1), ("d", 1, 0)]).unwrap()
    }

    fn system(q: &Quiver, rels: &[&str], order: Option<&str>, d: usize) -> RewriteSystem<Rational> {
        let rels: Vec<_> = rels.iter().map(|r| parse_element(q, r).unwrap()).collect();
        let ord = match order {
            Some(o) => MonomialOrder::parse(q, o).unwrap(),
            None => MonomialOrder::declaration(q),
        };
        RewriteSystem::complete(q, &rels, ord, d).unwrap()
    }

    fn el(q: &Quiver, s: &str) -> AlgebraElement<Rational> {
        parse_element(q, s).unwrap()
    }

    #[test]
    fn j_completion() {
        let q = j_quiver();
        let rs = system(&q, &["a^2 - b*d", "c^2 - d*b"], None, 6);
        assert_eq!(
            rs.to_string(),
            "b*d -> a^2\nd*b -> c^2\nb*c^2 -> a^2*b\nd*a^2 -> c^2*d\n"
        );
        assert!(rs.is_finite());
        assert_eq!(rs.normal_form(&el(&q, "b*d")), el(&q, "a^2"));
        assert_eq!(rs.normal_form(&el(&q, "b*d*a^2")), el(&q, "a^4"));
        assert_eq!(rs.normal_form(&el(&q, "e1")), el(&q, "e1"));
        assert!(rs.ambiguities(8).iter().all(|a| a.resolution.is_zero()));
        assert_eq!(rs.graded_dim(2, 0, 0).unwrap(), 1);
        assert!(!rs.ideal_membership(&el(&q, "a")).unwrap());
    }

    #[test]
    fn dq_has_no_new_rules() {
        let q =
            Quiver::with_base(2, 1, [("a", 0, 1), ("b", 1, 0), ("c", 0, 1), ("d", 1, 0)]).unwrap();
        let rs = system(&q, &["a*b - a*d - c*d", "b*a - 5*d*c"], Some("c>b>d>a"), 6);
        assert_eq!(rs.rule_count(), 2);
        assert_eq!(rs.graded_dim(2, 0, 0).unwrap(), 3);
        assert_eq!(rs.graded_dim(0, 0, 1).unwrap(), 0);
    }

    #[test]
    fn quantum_plane() {
        let q = Quiver::new(1, [("x", 0, 0), ("y", 0, 0)]).unwrap();
        let rs = system(&q, &["x*y - 3*y*x"], None, 6);
        assert_eq!(rs.rule_count(), 1);
        assert!(rs.is_finite());
        for k in 0..=6 {
            assert_eq!(rs.graded_dim(k, 0, 0).unwrap(), k + 1);
        }
    }

    #[test]
    fn truncation_is_reported() {
        let q = Quiver::new(1, [("x", 0, 0), ("y", 0, 0)]).unwrap();
        // y^2 -> x*y spawns y*x^k*y -> x^(k+1)*y in every degree
        let rs = system(&q, &["x*y - y^2"], None, 5);
        assert_eq!(rs.rule_count(), 4);
        assert!(!rs.is_finite());
        assert!(rs.graded_dim(5, 0, 0).is_ok());
        assert!(matches!(
            rs.graded_dim(6, 0, 0),
            Err(Error::Truncation {
                requested: 6,
                available: 5
            })
        ));
    }

    #[test]
    fn finite_system_counts_beyond_cap() {
        let q =
            Quiver::with_base(2, 1, [("a", 0, 1), ("b", 1, 0), ("c", 0, 1), ("d", 1, 0)]).unwrap();
        let rs = system(&q, &["a*b - c*d", "b*a - 2*d*c"], None, 4);
        assert!(rs.is_finite());
        assert_eq!(rs.graded_dim(9, 0, 1).unwrap(), 10);
    }

    #[test]
    fn dependent_relation_is_dropped() {
        let q = j_quiver();
        let rs = system(&q, &["a^2 - b*d", "2*a^2 - 2*b*d"], None, 4);
        assert_eq!(rs.rule_count(), 1);
        assert_eq!(rs.notices().len(), 1);
    }

    #[test]
    fn single_step_rewrites() {
        let q = j_quiver();
        let rs = system(&q, &["a^2 - b*d", "c^2 - d*b"], None, 6);
        let x = el(&q, "b*d*b*d");
        let sites = rs.reducible_sites(&x);
        assert!(sites.len() >= 3);
        let y = rs.rewrite_at(&x, &sites[0]).unwrap();
        assert_eq!(rs.normal_form(&y), rs.normal_form(&x));
    }
}
