use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{Path, Quiver, VertexPermutation};
use crate::rewrite::{parse_element, AlgebraElement, MonomialOrder, RewriteSystem};
use crate::scalar::Field;

/// A degree-preserving map of path algebras: vertices move by `sigma`, and
/// row `x` of `matrix` holds the image of source arrow `x` in the target's
/// arrow basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap<F> {
    sigma: VertexPermutation,
    matrix: Matrix<F>,
}

/// Result of [`is_isomorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    pub failure: Option<String>,
}

impl IsoCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(msg: String) -> Self {
        IsoCheck { failure: Some(msg) }
    }
}

impl fmt::Display for IsoCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "isomorphism"),
            Some(m) => write!(f, "not an isomorphism: {m}"),
        }
    }
}

impl<F: Field> GradedMap<F> {
    pub fn new(sigma: VertexPermutation, matrix: Matrix<F>) -> Self {
        GradedMap { sigma, matrix }
    }

    pub fn identity(quiver: &Quiver) -> Self {
        GradedMap {
            sigma: VertexPermutation::identity(quiver.vertex_count()),
            matrix: Matrix::identity(quiver.arrow_count()),
        }
    }

    /// Images given by label, e.g. `("a", "2*b + c")`; unlisted arrows map to zero.
    pub fn from_images(
        source: &Quiver,
        target: &Quiver,
        sigma: VertexPermutation,
        images: &[(&str, &str)],
    ) -> Result<Self> {
        let mut matrix = Matrix::zeros(source.arrow_count(), target.arrow_count());
        for (x, image) in images {
            let x = source
                .arrow_by_label(x)
                .ok_or_else(|| Error::Parse(format!("unknown source arrow {x}")))?
                .id;
            let elem: AlgebraElement<F> = parse_element(target, image)?;
            for (p, c) in elem.terms() {
                if p.len() != 1 {
                    return Err(Error::Parse(format!(
                        "image {image:?} is not a combination of arrows"
                    )));
                }
                matrix[(x, p.arrows()[0])] = c.clone();
            }
        }
        Ok(GradedMap { sigma, matrix })
    }

    pub fn sigma(&self) -> &VertexPermutation {
        &self.sigma
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> GradedMap<G> {
        GradedMap {
            sigma: self.sigma.clone(),
            matrix: self.matrix.map(f),
        }
    }

    /// Image of one source arrow.
    pub fn arrow_image(&self, target: &Quiver, x: usize) -> AlgebraElement<F> {
        AlgebraElement::from_terms(
            self.matrix
                .row(x)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(y, c)| (target.arrow_path(y).expect("arrow in range"), c.clone())),
        )
    }

    /// Extends multiplicatively to paths and linearly to elements.
    pub fn apply(&self, target: &Quiver, x: &AlgebraElement<F>) -> AlgebraElement<F> {
        let mut out = AlgebraElement::zero();
        for (p, c) in x.terms() {
            out = out.add(&self.apply_path(target, p).scale(c));
        }
        out
    }

    fn apply_path(&self, target: &Quiver, p: &Path) -> AlgebraElement<F> {
        let mut acc = AlgebraElement::from_path(Path::trivial(self.sigma.apply(p.source())));
        for &a in p.arrows() {
            acc = acc.mul(&self.arrow_image(target, a));
        }
        acc
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GradedMap<F>) -> Result<GradedMap<F>> {
        Ok(GradedMap {
            sigma: next.sigma.after(&self.sigma),
            matrix: self.matrix.mul(&next.matrix)?,
        })
    }

    pub fn inverse(&self) -> Result<GradedMap<F>> {
        Ok(GradedMap {
            sigma: self.sigma.inverse(),
            matrix: self.matrix.inverse()?,
        })
    }

    /// `sigma: (e1 e2)` followed by one `arrow -> image` line per source arrow.
    pub fn describe(&self, source: &Quiver, target: &Quiver) -> String {
        let order = MonomialOrder::declaration(target);
        let mut out = format!("sigma: {}\n", self.sigma.cycles(|v| source.vertex_label(v)));
        for a in source.arrows() {
            let img = self.arrow_image(target, a.id);
            let shown = if img.is_zero() {
                "0".to_string()
            } else {
                img.display(target, &order).to_string()
            };
            out.push_str(&format!("{} -> {}\n", a.label, shown));
        }
        out
    }

    /// Rows of the arrow matrix, e.g. `[[0,1,0,0],[1,0,0,0],…]`.
    pub fn matrix_rows(&self) -> String {
        let rows: Vec<String> = self
            .matrix
            .to_rows()
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Checks that `f` is an isomorphism `src → tgt` of graded quotients.
///
/// The arrow matrix must be invertible and block-compatible with `sigma`,
/// every defining relation of `src` must map into the ideal of `tgt`, and
/// the two degree-2 relation spaces must have the same dimension (so the
/// image of the source ideal is all of the target ideal).
pub fn is_isomorphism<F: Field>(
    f: &GradedMap<F>,
    src: &RewriteSystem<F>,
    tgt: &RewriteSystem<F>,
) -> Result<IsoCheck> {
    let (sq, tq) = (src.quiver(), tgt.quiver());
    let n = sq.vertex_count();
    if tq.vertex_count() != n || f.sigma.len() != n {
        return Err(Error::Structural("vertex counts differ".into()));
    }
    if f.matrix.rows() != sq.arrow_count() || f.matrix.cols() != tq.arrow_count() {
        return Err(Error::Structural("arrow matrix has the wrong shape".into()));
    }
    let (ms, mt) = (sq.adjacency(), tq.adjacency());
    for i in 0..n {
        for j in 0..n {
            if ms[(i, j)] != mt[(f.sigma.apply(i), f.sigma.apply(j))] {
                return Err(Error::Structural(
                    "sigma does not conjugate the adjacency matrices".into(),
                ));
            }
        }
    }
    for a in sq.arrows() {
        for b in tq.arrows() {
            let c = &f.matrix[(a.id, b.id)];
            if !c.is_zero()
                && (b.source != f.sigma.apply(a.source) || b.target != f.sigma.apply(a.target))
            {
                return Ok(IsoCheck::fail(format!(
                    "image of {} has a {} term outside the block {}->{}",
                    a.label,
                    b.label,
                    tq.vertex_label(f.sigma.apply(a.source)),
                    tq.vertex_label(f.sigma.apply(a.target))
                )));
            }
        }
    }
    if !f.matrix.is_invertible() {
        return Ok(IsoCheck::fail("arrow matrix is singular".into()));
    }
    let order = src.order();
    for rel in src.relations() {
        let img = f.apply(tq, rel);
        if !tgt.ideal_membership(&img)? {
            return Ok(IsoCheck::fail(format!(
                "relation {} maps outside the target ideal (normal form {})",
                rel.display(sq, order),
                tgt.normal_form(&img).display(tq, tgt.order())
            )));
        }
    }
    let ideal_dim = |rs: &RewriteSystem<F>| -> Result<i64> {
        let paths = rs.quiver().adjacency().pow(2);
        let dims = rs.graded_dims(2)?;
        let mut total = 0;
        for i in 0..n {
            for j in 0..n {
                total += paths[(i, j)] - dims[2][(i, j)];
            }
        }
        Ok(total)
    };
    let (ds, dt) = (ideal_dim(src)?, ideal_dim(tgt)?);
    if ds != dt {
        return Ok(IsoCheck::fail(format!(
            "degree-2 relation spaces differ in dimension ({ds} vs {dt})"
        )));
    }
    Ok(IsoCheck { failure: None })
}
