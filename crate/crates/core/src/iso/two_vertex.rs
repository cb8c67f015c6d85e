//! Two-vertex classification: admissible `(M, P)` pairs, normal forms of
//! mesh data, and isomorphism decisions between two-vertex mesh algebras.
//!
//! On the quiver with two arrows each way write the relations as
//! `ω_1 = xᵀ B y` and `ω_2 = yᵀ A x` with `x = (a, c)`, `y = (b, d)`. A change
//! of arrow bases conjugates `N = (Aᵀ)⁻¹ B`, rescaling a relation rescales
//! it, and swapping the vertices inverts it. So the class of `N` up to
//! scalars and inversion is an isomorphism invariant, and it is complete:
//! two eigenvalues `μ₁, μ₂` give `A(μ₁/μ₂)`, a scalar gives `A(1)`, and a
//! Jordan block gives `D(1)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::hilbert::{finite_gk_check, CyPolynomial, GkReport};
use crate::linalg::{IntMatrix, Matrix};
use crate::mesh::{
    construct_family, mesh_relations, validate_mesh, Family, FamilyParams, MeshData,
};
use crate::quiver::{ArrowId, Quiver, VertexPermutation};
use crate::rewrite::AlgebraElement;
use crate::scalar::{quadratic_roots, Field, QuadExt, QuadraticRoots, Rational};

use super::deciders::IsoVerdict;
use super::{is_isomorphism, two_param_iso_decide, GradedMap};

/// An admissible adjacency matrix with a Nakayama permutation.
#[derive(Clone, Debug)]
pub struct Cy2Case {
    pub m: IntMatrix,
    pub p: VertexPermutation,
    pub gk: GkReport,
}

fn spectral_radius_is_two(m: &IntMatrix) -> bool {
    let (a, b, d) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    // symmetric: t² − (a+d)t + (ad − b²)
    let roots = quadratic_roots(
        &Rational::from(1),
        &Rational::from(-(a + d)),
        &Rational::from(a * d - b * b),
    );
    let two = Rational::from(2);
    match roots {
        Ok(QuadraticRoots::Rational(_, hi)) => hi == two,
        Ok(QuadraticRoots::Repeated(r)) => r == two,
        _ => false,
    }
}

/// All `(M, P)` on two vertices with `M` normal, `ρ(M) = 2`, strongly
/// connected support, `MP = PM`, and finite GK dimension.
///
/// Entries are searched in `0..=4`; normality forces `M` symmetric and then
/// `ρ(M) ≥ max m_ij` bounds the entries by 2.
pub fn enumerate_cy2_matrices() -> Result<Vec<Cy2Case>> {
    let mut out = Vec::new();
    let perms = VertexPermutation::all(2);
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                for d in 0..=4 {
                    let m = IntMatrix::from_rows(&[vec![a, b], vec![c, d]])?;
                    if m.mul(&m.transpose()) != m.transpose().mul(&m) {
                        continue;
                    }
                    if b == 0 || c == 0 || !spectral_radius_is_two(&m) {
                        continue;
                    }
                    for p in &perms {
                        let pm = p.matrix();
                        if m.mul(&pm) != pm.mul(&m) {
                            continue;
                        }
                        let gk = finite_gk_check(&CyPolynomial::new(m.clone(), p.clone())?)?;
                        if gk.finite() {
                            out.push(Cy2Case {
                                m: m.clone(),
                                p: p.clone(),
                                gk,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// How `N` was normalized in the `[[0,2],[2,0]]` case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenData {
    Distinct(QuadExt, QuadExt),
    Scalar(QuadExt),
    Jordan(QuadExt),
}

impl fmt::Display for EigenData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenData::Distinct(a, b) => write!(f, "eigenvalues {a}, {b}"),
            EigenData::Scalar(a) => write!(f, "scalar {a}"),
            EigenData::Jordan(a) => write!(f, "Jordan block at {a}"),
        }
    }
}

/// A family tag with its parameter and a verified isomorphism onto it.
#[derive(Clone, Debug)]
pub struct ClassificationResult {
    pub tag: Family,
    pub parameter: Option<QuadExt>,
    pub eigen_data: Option<EigenData>,
    /// Input algebra → tagged family member.
    pub witness: GradedMap<QuadExt>,
    /// Square root adjoined to write the witness, if any.
    pub radicand: Option<i64>,
}

impl ClassificationResult {
    pub fn family_params(&self) -> FamilyParams<QuadExt> {
        match self.tag {
            Family::J => FamilyParams::j(),
            Family::Aq => FamilyParams::aq(self.parameter.clone().expect("Aq has a parameter")),
            Family::Bq => FamilyParams::bq(self.parameter.clone().expect("Bq has a parameter")),
            Family::Dq => FamilyParams::dq(self.parameter.clone().expect("Dq has a parameter")),
            Family::An | Family::Bn => unreachable!("two-vertex tags only"),
        }
    }
}

impl fmt::Display for ClassificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if let Some(q) = &self.parameter {
            write!(f, " q={q}")?;
        }
        if let Some(e) = &self.eigen_data {
            write!(f, " ({e})")?;
        }
        if let Some(d) = self.radicand {
            write!(f, " [witness over Q(sqrt({d}))]")?;
        }
        Ok(())
    }
}

fn radicand_of<'a>(entries: impl IntoIterator<Item = &'a QuadExt>) -> Result<Option<i64>> {
    let mut found = None;
    for d in entries.into_iter().filter_map(QuadExt::radicand) {
        match found {
            None => found = Some(d),
            Some(e) if e == d => {}
            Some(e) => {
                return Err(Error::OutOfScope(format!(
                    "needs both sqrt({e}) and sqrt({d})"
                )))
            }
        }
    }
    Ok(found)
}

fn map_radicand(w: &GradedMap<QuadExt>) -> Result<Option<i64>> {
    let rows = w.matrix().to_rows();
    radicand_of(rows.iter().flatten())
}

pub(crate) fn to_quad(m: &MeshData<Rational>) -> MeshData<QuadExt> {
    MeshData::new(
        m.quiver().clone(),
        m.mu().clone(),
        m.tau().map(|c| QuadExt::rational(c.clone())),
    )
    .expect("same shapes")
}

fn arrows_between(q: &Quiver, s: usize, t: usize) -> Vec<ArrowId> {
    q.arrows_between(s, t).map(|a| a.id).collect()
}

/// `(B, A)` with `ω_1 = Σ B_ij x_i y_j` and `ω_2 = Σ A_ij y_i x_j`.
fn bilinear_blocks<F: Field>(
    q: &Quiver,
    rels: &[AlgebraElement<F>],
    x: &[ArrowId],
    y: &[ArrowId],
) -> Result<(Matrix<F>, Matrix<F>)> {
    let coeff = |rel: &AlgebraElement<F>, u: ArrowId, v: ArrowId| -> Result<F> {
        Ok(rel.coefficient(&q.path(q.arrow(u)?.source, &[u, v])?))
    };
    let mut b = Matrix::zeros(2, 2);
    let mut a = Matrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            b[(i, j)] = coeff(&rels[0], x[i], y[j])?;
            a[(i, j)] = coeff(&rels[1], y[i], x[j])?;
        }
    }
    Ok((b, a))
}

/// `N = (Aᵀ)⁻¹ B` for a mesh on the quiver with two arrows each way.
pub fn kronecker_invariant<F: Field>(m: &MeshData<F>) -> Result<Matrix<F>> {
    let q = m.quiver();
    let (x, y) = (arrows_between(q, 0, 1), arrows_between(q, 1, 0));
    if x.len() != 2 || y.len() != 2 {
        return Err(Error::OutOfScope(
            "needs two arrows in each direction".into(),
        ));
    }
    let rels = mesh_relations(m)?;
    let (b, a) = bilinear_blocks(q, &rels, &x, &y)?;
    a.transpose().inverse()?.mul(&b)
}

fn column(m: &Matrix<QuadExt>, j: usize) -> Vec<QuadExt> {
    vec![m[(0, j)].clone(), m[(1, j)].clone()]
}

/// A nonzero kernel vector of a rank-one 2x2 matrix.
fn kernel_vector(m: &Matrix<QuadExt>) -> Vec<QuadExt> {
    let row = if m.row(0).iter().any(|c| !c.is_zero()) {
        0
    } else {
        1
    };
    vec![m[(row, 1)].clone(), -m[(row, 0)].clone()]
}

fn classify_kronecker(mesh: &MeshData<QuadExt>) -> Result<ClassificationResult> {
    let n = kronecker_invariant(mesh)?;
    let tr = n[(0, 0)].clone() + &n[(1, 1)];
    let det = n.det()?;
    let (tr_r, det_r) = match (tr.to_rational(), det.to_rational()) {
        (Some(t), Some(d)) => (t, d),
        _ => return Err(Error::OutOfScope("mesh data must be rational".into())),
    };
    let roots = quadratic_roots(&Rational::from(1), &-tr_r, &det_r)?;
    let id = Matrix::<QuadExt>::identity(2);
    let (tag, param, eigen, h, scale) = match roots {
        QuadraticRoots::Repeated(mu) if n.is_scalar() => {
            let mu = QuadExt::rational(mu);
            (
                Family::Aq,
                QuadExt::one(),
                EigenData::Scalar(mu.clone()),
                id,
                mu,
            )
        }
        QuadraticRoots::Repeated(mu) => {
            let mu = QuadExt::rational(mu);
            let shifted = Matrix::from_rows(vec![
                vec![n[(0, 0)].clone() - &mu, n[(0, 1)].clone()],
                vec![n[(1, 0)].clone(), n[(1, 1)].clone() - &mu],
            ])?;
            // h2 outside ker(N − μ), h1 = −(N − μ)h2/μ
            let j = if column(&shifted, 0).iter().any(|c| !c.is_zero()) {
                0
            } else {
                1
            };
            let neg_inv = -mu.inv()?;
            let h1: Vec<QuadExt> = column(&shifted, j)
                .into_iter()
                .map(|c| c * &neg_inv)
                .collect();
            let mut h2 = [QuadExt::zero(), QuadExt::zero()];
            h2[j] = QuadExt::one();
            let h = Matrix::from_rows(vec![
                vec![h1[0].clone(), h2[0].clone()],
                vec![h1[1].clone(), h2[1].clone()],
            ])?;
            (
                Family::Dq,
                QuadExt::one(),
                EigenData::Jordan(mu.clone()),
                h,
                mu,
            )
        }
        other => {
            let (mu1, mu2) = other.as_pair();
            let eig = |mu: &QuadExt| -> Result<Vec<QuadExt>> {
                let shifted = Matrix::from_rows(vec![
                    vec![n[(0, 0)].clone() - mu, n[(0, 1)].clone()],
                    vec![n[(1, 0)].clone(), n[(1, 1)].clone() - mu],
                ])?;
                Ok(kernel_vector(&shifted))
            };
            let (v1, v2) = (eig(&mu1)?, eig(&mu2)?);
            let h = Matrix::from_rows(vec![
                vec![v1[0].clone(), v2[0].clone()],
                vec![v1[1].clone(), v2[1].clone()],
            ])?;
            let q = mu1.div(&mu2)?;
            (Family::Aq, q, EigenData::Distinct(mu1.clone(), mu2), h, mu1)
        }
    };
    let params = if tag == Family::Dq {
        FamilyParams::dq(param.clone())
    } else {
        FamilyParams::aq(param.clone())
    };
    let target = construct_family(&params)?;
    let tq = target.quiver();
    let (tx, ty) = (arrows_between(tq, 0, 1), arrows_between(tq, 1, 0));
    let (bt, at) = bilinear_blocks(tq, &target.relations, &tx, &ty)?;
    let nt = at.transpose().inverse()?.mul(&bt)?;
    let h_inv = h.inverse()?;
    if h_inv.mul(&n)?.mul(&h)? != nt.scale(&scale) {
        return Err(Error::Internal("eigenbasis does not normalize N".into()));
    }
    let q = mesh.quiver();
    let (x, y) = (arrows_between(q, 0, 1), arrows_between(q, 1, 0));
    let (b, _) = bilinear_blocks(q, &mesh_relations(mesh)?, &x, &y)?;
    let g = bt.mul(&h_inv)?.mul(&b.inverse()?)?.transpose();
    let mut matrix = Matrix::zeros(4, 4);
    for i in 0..2 {
        for k in 0..2 {
            matrix[(x[i], tx[k])] = g[(i, k)].clone();
            matrix[(y[i], ty[k])] = h[(i, k)].clone();
        }
    }
    let witness = GradedMap::new(VertexPermutation::identity(2), matrix);
    finish(mesh, tag, Some(param), Some(eigen), witness)
}

fn finish(
    mesh: &MeshData<QuadExt>,
    tag: Family,
    parameter: Option<QuadExt>,
    eigen_data: Option<EigenData>,
    witness: GradedMap<QuadExt>,
) -> Result<ClassificationResult> {
    let mut result = ClassificationResult {
        tag,
        parameter,
        eigen_data,
        radicand: map_radicand(&witness)?,
        witness,
    };
    let target = construct_family(&result.family_params())?;
    let src = crate::rewrite::RewriteSystem::complete(
        mesh.quiver(),
        &mesh_relations(mesh)?,
        crate::rewrite::MonomialOrder::declaration(mesh.quiver()),
        2,
    )?;
    let check = is_isomorphism(&result.witness, &src, &target.system(2)?)?;
    if let Some(msg) = check.failure {
        return Err(Error::Internal(format!(
            "classification witness rejected: {msg}"
        )));
    }
    if result.radicand.is_none() {
        result.radicand = result.parameter.as_ref().and_then(QuadExt::radicand);
    }
    Ok(result)
}

/// Loops and connecting arrows of the looped two-vertex quiver, in the
/// order `(loop at e1, e1→e2, loop at e2, e2→e1)`.
fn looped_arrows(q: &Quiver) -> Result<[ArrowId; 4]> {
    let one = |s, t| -> Result<ArrowId> {
        let v = arrows_between(q, s, t);
        v.first()
            .copied()
            .filter(|_| v.len() == 1)
            .ok_or_else(|| Error::OutOfScope("expected one arrow between each ordered pair".into()))
    };
    Ok([one(0, 0)?, one(0, 1)?, one(1, 1)?, one(1, 0)?])
}

fn classify_looped(mesh: &MeshData<QuadExt>, swap: bool) -> Result<ClassificationResult> {
    let [a, b, c, d] = looped_arrows(mesh.quiver())?;
    let t = |x: ArrowId, y: ArrowId| mesh.tau()[(x, y)].clone();
    let mut matrix = Matrix::<QuadExt>::zeros(4, 4);
    let target_ids = [0usize, 1, 2, 3];
    for (k, &src) in [a, b, c, d].iter().enumerate() {
        matrix[(src, target_ids[k])] = QuadExt::one();
    }
    if swap {
        // τ(a)=β1 d, τ(b)=β2 a, τ(c)=β3 b, τ(d)=β4 c
        let (b1, b2, b3, b4) = (t(a, d), t(b, a), t(c, b), t(d, c));
        let q = b1.clone() * &b3;
        let q = q.div(&(b2.clone() * &b4))?;
        matrix[(a, 0)] = -b3.div(&b2)?;
        let w = GradedMap::new(VertexPermutation::identity(2), matrix);
        finish(mesh, Family::Bq, Some(q), None, w)
    } else {
        // τ(a)=α1 a, τ(b)=α2 d, τ(c)=α3 c, τ(d)=α4 b
        let (a1, a2, a3, a4) = (t(a, a), t(b, d), t(c, c), t(d, b));
        let lambda = -a1.div(&a4)?;
        let r2 = (a1 * &a2).div(&(a3 * &a4))?;
        let r = QuadExt::sqrt_of(
            &r2.to_rational()
                .ok_or_else(|| Error::OutOfScope("mesh data must be rational".into()))?,
        );
        matrix[(b, 1)] = lambda;
        matrix[(c, 2)] = r;
        let w = GradedMap::new(VertexPermutation::identity(2), matrix);
        finish(mesh, Family::J, None, None, w)
    }
}

/// Tags a two-vertex mesh algebra with the family it is isomorphic to and
/// returns a verified isomorphism onto that family member.
pub fn classify_two_vertex(m: &MeshData<Rational>) -> Result<ClassificationResult> {
    if m.quiver().vertex_count() != 2 {
        return Err(Error::OutOfScope(
            "classification covers two vertices only".into(),
        ));
    }
    let report = validate_mesh(m);
    if !report.is_valid() {
        return Err(Error::Structural(format!("mesh data {report}")));
    }
    let adj = m.quiver().adjacency().to_rows();
    let swap = !m.mu().is_identity();
    let mesh = to_quad(m);
    match (adj.as_slice(), swap) {
        ([r0, r1], false) if r0 == &[0, 2] && r1 == &[2, 0] => classify_kronecker(&mesh),
        ([r0, r1], _) if r0 == &[1, 1] && r1 == &[1, 1] => classify_looped(&mesh, swap),
        _ => Err(Error::OutOfScope(format!(
            "adjacency {} with {} permutation is not an admissible case",
            m.quiver().adjacency(),
            if swap { "swap" } else { "identity" }
        ))),
    }
}

fn conjugate_adjacency(x: &Quiver, y: &Quiver) -> bool {
    let (mx, my) = (x.adjacency(), y.adjacency());
    VertexPermutation::all(2)
        .iter()
        .any(|s| (0..2).all(|i| (0..2).all(|j| mx[(i, j)] == my[(s.apply(i), s.apply(j))])))
}

/// Decides `A(Q, τ) ≅ A(Q', τ')` for two-vertex mesh algebras.
///
/// Obstructions are checked in order: adjacency up to relabelling, the
/// Nakayama permutation, the family tag, and the family parameter. A
/// positive answer composes the two classification witnesses with the
/// in-family witness and re-verifies the result.
pub fn two_vertex_iso_decide(
    x: &MeshData<Rational>,
    y: &MeshData<Rational>,
) -> Result<IsoVerdict<QuadExt>> {
    if !conjugate_adjacency(x.quiver(), y.quiver()) {
        return Ok(IsoVerdict {
            isomorphic: false,
            witness: None,
            certificate: format!(
                "adjacency {} vs {}",
                x.quiver().adjacency(),
                y.quiver().adjacency()
            ),
        });
    }
    if x.mu().is_identity() != y.mu().is_identity() {
        return Ok(IsoVerdict {
            isomorphic: false,
            witness: None,
            certificate: "Nakayama permutations differ".into(),
        });
    }
    let (cx, cy) = (classify_two_vertex(x)?, classify_two_vertex(y)?);
    if cx.tag != cy.tag {
        let why = match (&cx.eigen_data, &cy.eigen_data) {
            (Some(e), Some(f)) => format!("invariant N: {e} vs {f}"),
            _ => format!("{} vs {}", cx.tag, cy.tag),
        };
        return Ok(IsoVerdict {
            isomorphic: false,
            witness: None,
            certificate: why,
        });
    }
    let (p, q) = (
        cx.parameter.clone().unwrap_or_else(QuadExt::one),
        cy.parameter.clone().unwrap_or_else(QuadExt::one),
    );
    if let (Some(d), Some(e)) = (p.radicand(), q.radicand()) {
        if d != e {
            return Ok(IsoVerdict {
                isomorphic: false,
                witness: None,
                certificate: format!("parameters {p} and {q} lie in different quadratic fields"),
            });
        }
    }
    let inner = two_param_iso_decide(cx.tag, &p, &q)?;
    if !inner.isomorphic {
        return Ok(IsoVerdict {
            isomorphic: false,
            witness: None,
            certificate: format!("{} {}", cx.tag, inner.certificate),
        });
    }
    let certificate = format!("{} q={p} and q={q}: {}", cx.tag, inner.certificate);
    let radicands = radicand_of(
        [cx.radicand, cy.radicand]
            .iter()
            .flatten()
            .map(|&d| QuadExt::new(Rational::from(0), Rational::from(1), d))
            .collect::<Result<Vec<_>>>()?
            .iter(),
    );
    if radicands.is_err() {
        return Ok(IsoVerdict {
            isomorphic: true,
            witness: None,
            certificate: format!(
                "{certificate}; witness needs Q(sqrt({}), sqrt({}))",
                cx.radicand.unwrap_or(1),
                cy.radicand.unwrap_or(1)
            ),
        });
    }
    let w = cx
        .witness
        .then(
            inner
                .witness
                .as_ref()
                .expect("positive verdicts carry witnesses"),
        )?
        .then(&cy.witness.inverse()?)?;
    let (qx, qy) = (to_quad(x), to_quad(y));
    let sys = |m: &MeshData<QuadExt>| {
        crate::rewrite::RewriteSystem::complete(
            m.quiver(),
            &mesh_relations(m)?,
            crate::rewrite::MonomialOrder::declaration(m.quiver()),
            2,
        )
    };
    let check = is_isomorphism(&w, &sys(&qx)?, &sys(&qy)?)?;
    if let Some(msg) = check.failure {
        return Err(Error::Internal(format!("composed witness rejected: {msg}")));
    }
    Ok(IsoVerdict {
        isomorphic: true,
        witness: Some(w),
        certificate,
    })
}

/// One row of [`pairwise_distinct_check`].
#[derive(Clone, Debug)]
pub struct PairwiseRow {
    pub left: String,
    pub right: String,
    /// What the classification theorem's exception list predicts.
    pub expected: bool,
    pub computed: bool,
    pub certificate: String,
    pub witness_verified: bool,
}

#[derive(Clone, Debug)]
pub struct PairwiseReport {
    pub rows: Vec<PairwiseRow>,
}

impl PairwiseReport {
    pub fn disagreements(&self) -> Vec<&PairwiseRow> {
        self.rows
            .iter()
            .filter(|r| r.expected != r.computed)
            .collect()
    }

    pub fn agrees(&self) -> bool {
        self.disagreements().is_empty()
    }
}

impl fmt::Display for PairwiseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "iso" } else { "distinct" };
        for r in &self.rows {
            writeln!(
                f,
                "{:<8} {:<8} expected {:<8} computed {:<8} {}{}",
                r.left,
                r.right,
                yn(r.expected),
                yn(r.computed),
                r.certificate,
                if r.witness_verified {
                    " [witness verified]"
                } else {
                    ""
                }
            )?;
        }
        Ok(())
    }
}

/// Compares every pair among `A(s)`, `B(s)`, `D(s)` for `s` in `sample`, and
/// `J`, against the exception list `A(q) ≅ A(q⁻¹)`, `D(q) ≅ D(q⁻¹)`.
pub fn pairwise_distinct_check(sample: &[Rational]) -> Result<PairwiseReport> {
    let mut members: Vec<FamilyParams<Rational>> = Vec::new();
    for fam in [Family::Aq, Family::Bq, Family::Dq] {
        for s in sample {
            members.push(FamilyParams::from_parts(fam, vec![s.clone()])?);
        }
    }
    members.push(FamilyParams::j());
    let meshes = members
        .iter()
        .map(|p| Ok(construct_family(p)?.mesh))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (p, q) = (&members[i], &members[j]);
            let expected = p.family == q.family
                && match p.family {
                    Family::J => true,
                    Family::Bq => p.q[0] == q.q[0],
                    _ => p.q[0] == q.q[0] || (p.q[0].clone() * &q.q[0]).is_one(),
                };
            let verdict = two_vertex_iso_decide(&meshes[i], &meshes[j])?;
            rows.push(PairwiseRow {
                left: p.to_string(),
                right: q.to_string(),
                expected,
                computed: verdict.isomorphic,
                certificate: verdict.certificate,
                witness_verified: verdict.witness.is_some(),
            });
        }
    }
    Ok(PairwiseReport { rows })
}
