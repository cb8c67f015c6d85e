//! Matrix-valued Hilbert series: the closed form `(I − Mt + Pt²)⁻¹`, the
//! series counted from normal forms, and the finite-GK test on `det p(t)`.

mod poly;

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::quiver::VertexPermutation;
use crate::rewrite::RewriteSystem;
use crate::scalar::Field;

pub use poly::IntPoly;

/// `H_0, …, H_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSeries {
    coeffs: Vec<IntMatrix>,
}

/// First coefficient where two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub expected: i64,
    pub found: i64,
}

impl MatrixSeries {
    pub fn new(coeffs: Vec<IntMatrix>) -> Result<Self> {
        let n = coeffs.first().map(IntMatrix::dim).unwrap_or(0);
        if coeffs.iter().any(|h| h.dim() != n) {
            return Err(Error::Structural(
                "series coefficients differ in size".into(),
            ));
        }
        Ok(MatrixSeries { coeffs })
    }

    pub fn coeffs(&self) -> &[IntMatrix] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<&IntMatrix> {
        self.coeffs.get(k)
    }

    /// Least `(k, i, j)` at which `self` (expected) and `other` (found) differ
    /// over their common range.
    pub fn first_mismatch(&self, other: &MatrixSeries) -> Option<Mismatch> {
        for (k, (a, b)) in self.coeffs.iter().zip(&other.coeffs).enumerate() {
            let n = a.dim();
            for i in 0..n {
                for j in 0..n {
                    if a[(i, j)] != b[(i, j)] {
                        return Some(Mismatch {
                            k,
                            i,
                            j,
                            expected: a[(i, j)],
                            found: b[(i, j)],
                        });
                    }
                }
            }
        }
        None
    }

    /// One line `k` followed by the rows of `H_k`, tab separated.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (k, h) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{k}");
            let _ = h.write_tsv(&mut out);
        }
        out
    }
}

/// `p(t) = I − Mt + Pt²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyPolynomial {
    m: IntMatrix,
    p: VertexPermutation,
}

impl CyPolynomial {
    pub fn new(m: IntMatrix, p: VertexPermutation) -> Result<Self> {
        if m.dim() != p.len() {
            return Err(Error::Structural(format!(
                "M is {0}x{0} but the permutation acts on {1} vertices",
                m.dim(),
                p.len()
            )));
        }
        Ok(CyPolynomial { m, p })
    }

    pub fn m(&self) -> &IntMatrix {
        &self.m
    }

    pub fn permutation(&self) -> &VertexPermutation {
        &self.p
    }

    pub fn p_matrix(&self) -> IntMatrix {
        self.p.matrix()
    }

    pub fn det(&self) -> Result<IntPoly> {
        IntPoly::det_quadratic_pencil(&self.m, &self.p_matrix())
    }
}

/// Power-series inverse of `p(t)` via `H_{k+1} = M H_k − P H_{k−1}`.
pub fn closed_form_series(cp: &CyPolynomial, max_degree: usize) -> MatrixSeries {
    let n = cp.m.dim();
    let p = cp.p_matrix();
    let mut coeffs = vec![IntMatrix::identity(n)];
    if max_degree >= 1 {
        coeffs.push(cp.m.clone());
    }
    for k in 1..max_degree {
        let next = cp.m.mul(&coeffs[k]).sub(&p.mul(&coeffs[k - 1]));
        coeffs.push(next);
    }
    MatrixSeries { coeffs }
}

/// Series of the quotient algebra counted from irreducible paths.
pub fn algebra_series<F: Field>(rs: &RewriteSystem<F>, max_degree: usize) -> Result<MatrixSeries> {
    Ok(MatrixSeries {
        coeffs: rs.graded_dims(max_degree)?,
    })
}

/// Outcome of comparing the algebra's series with `p(t)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyReport {
    pub degree: usize,
    pub mismatch: Option<Mismatch>,
}

impl CyReport {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for CyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "h(t) = p(t)^-1 through degree {}", self.degree),
            Some(m) => write!(
                f,
                "mismatch at k={} entry ({},{}): closed form {}, algebra {}",
                m.k, m.i, m.j, m.expected, m.found
            ),
        }
    }
}

/// Checks `h_A(t) = p(t)⁻¹` coefficient-wise through `max_degree`.
pub fn cy2_check<F: Field>(
    rs: &RewriteSystem<F>,
    cp: &CyPolynomial,
    max_degree: usize,
) -> Result<CyReport> {
    if rs.quiver().vertex_count() != cp.m.dim() {
        return Err(Error::Structural(
            "quiver and p(t) have different sizes".into(),
        ));
    }
    let expected = closed_form_series(cp, max_degree);
    let found = algebra_series(rs, max_degree)?;
    Ok(CyReport {
        degree: max_degree,
        mismatch: expected.first_mismatch(&found),
    })
}

/// `det p(t) = sign · t^m · residual · ∏ Φ_k^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkReport {
    pub det: IntPoly,
    pub t_power: usize,
    pub negative: bool,
    pub cyclotomic: Vec<(usize, u32)>,
    /// Positive leading coefficient; constant `1` iff every root is on the unit circle.
    pub residual: IntPoly,
}

impl GkReport {
    pub fn finite(&self) -> bool {
        self.residual == IntPoly::one()
    }

    /// Product of the recorded factors; equals `det` by construction.
    pub fn expand(&self) -> IntPoly {
        let mut out = IntPoly::monomial(self.t_power).mul(&self.residual);
        for &(k, e) in &self.cyclotomic {
            out = out.mul(&IntPoly::cyclotomic(k).pow(e));
        }
        if self.negative {
            out.neg()
        } else {
            out
        }
    }
}

impl fmt::Display for GkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        let mut any = false;
        match self.t_power {
            0 => {}
            1 => {
                write!(f, "t")?;
                any = true;
            }
            m => {
                write!(f, "t^{m}")?;
                any = true;
            }
        }
        if self.residual != IntPoly::one() {
            write!(f, "({})", self.residual)?;
            any = true;
        }
        for &(k, e) in &self.cyclotomic {
            write!(f, "({})", IntPoly::cyclotomic(k))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            any = true;
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

fn euler_phi(mut k: usize) -> usize {
    let mut out = k;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            while k.is_multiple_of(p) {
                k /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if k > 1 {
        out -= out / k;
    }
    out
}

/// Kronecker test: all roots of `det p(t)` lie on the unit circle iff the
/// determinant is `± t^m` times a product of cyclotomic polynomials.
pub fn finite_gk_check(cp: &CyPolynomial) -> Result<GkReport> {
    let det = cp.det()?;
    if det.is_zero() {
        return Err(Error::Degenerate("det p(t) is identically zero".into()));
    }
    let (t_power, mut rest) = det.strip_t();
    let negative = rest
        .leading()
        .is_some_and(|c| c.sign() == num_bigint::Sign::Minus);
    if negative {
        rest = rest.neg();
    }
    let deg = rest.degree().unwrap_or(0);
    let mut cyclotomic = Vec::new();
    // φ(k) ≥ √(k/2), so k ≤ 2·deg² covers every factor of degree ≤ deg
    for k in 1..=(2 * deg * deg).max(2) {
        if euler_phi(k) > rest.degree().unwrap_or(0) {
            continue;
        }
        let phi = IntPoly::cyclotomic(k);
        let mut e = 0;
        while let Some(q) = rest.div_exact_monic(&phi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            cyclotomic.push((k, e));
        }
    }
    Ok(GkReport {
        det,
        t_power,
        negative,
        cyclotomic,
        residual: rest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(m: &[Vec<i64>], p: &[usize]) -> CyPolynomial {
        CyPolynomial::new(
            IntMatrix::from_rows(m).unwrap(),
            VertexPermutation::new(p.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let b2 = cp(&[vec![1, 1], vec![1, 1]], &[1, 0]);
        let h = closed_form_series(&b2, 4);
        assert_eq!(h.coeff(2).unwrap().to_rows(), vec![vec![2, 1], vec![1, 2]]);
        let j = cp(&[vec![1, 1], vec![1, 1]], &[0, 1]);
        assert_eq!(
            closed_form_series(&j, 4).coeff(4).unwrap().to_rows(),
            vec![vec![3, 2], vec![2, 3]]
        );
        let d = cp(&[vec![0, 2], vec![2, 0]], &[0, 1]);
        assert_eq!(
            closed_form_series(&d, 3).coeff(3).unwrap().to_rows(),
            vec![vec![0, 4], vec![4, 0]]
        );
    }

    #[test]
    fn series_inverts_pencil() {
        let c = cp(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]], &[0, 1, 2]);
        let h = closed_form_series(&c, 8);
        let p = c.p_matrix();
        for k in 2..=8 {
            let lhs = h.coeff(k).unwrap().sub(&c.m().mul(h.coeff(k - 1).unwrap()));
            assert_eq!(
                lhs.add(&p.mul(h.coeff(k - 2).unwrap())),
                IntMatrix::zeros(3)
            );
        }
    }

    #[test]
    fn gk_examples() {
        let bad = finite_gk_check(&cp(&[vec![0, 2], vec![2, 0]], &[1, 0])).unwrap();
        assert!(!bad.finite());
        assert_eq!(bad.to_string(), "-(t^2 - 2t - 1)(t - 1)^2");
        assert_eq!(bad.expand(), bad.det);
        let a = finite_gk_check(&cp(&[vec![0, 2], vec![2, 0]], &[0, 1])).unwrap();
        assert!(a.finite());
        assert_eq!(a.to_string(), "(t - 1)^2(t + 1)^2");
        let j = finite_gk_check(&cp(&[vec![1, 1], vec![1, 1]], &[0, 1])).unwrap();
        assert!(j.finite());
        assert_eq!(j.to_string(), "(t - 1)^2(t^2 + 1)");
        let b = finite_gk_check(&cp(&[vec![1, 1], vec![1, 1]], &[1, 0])).unwrap();
        assert!(b.finite());
    }

    #[test]
    fn quantum_plane_pencil() {
        // 1 − 2t + t² = (t − 1)²
        let c = CyPolynomial::new(
            IntMatrix::from_rows(&[vec![2]]).unwrap(),
            VertexPermutation::identity(1),
        )
        .unwrap();
        let r = finite_gk_check(&c).unwrap();
        assert!(r.finite());
        assert_eq!(r.to_string(), "(t - 1)^2");
    }
}
