//! Dense integer polynomials in one variable `t`, just enough for
//! determinants of `I − Mt + Pt²` and cyclotomic trial division.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Matrix};
use crate::scalar::{Field, Rational};

/// Coefficients low degree first; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient by a monic divisor when the division is exact.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if !divisor.leading().is_some_and(|l| l.is_one()) {
            return None;
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return self.is_zero().then(Self::zero);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::new(quot))
    }

    /// Splits off the largest power of `t` dividing `self`.
    pub fn strip_t(&self) -> (usize, Self) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (
            m,
            Self::new(self.coeffs[m.min(self.coeffs.len())..].to_vec()),
        )
    }

    /// The `k`-th cyclotomic polynomial.
    pub fn cyclotomic(k: usize) -> Self {
        assert!(k >= 1);
        let mut p = Self::monomial(k).sub(&Self::one());
        for d in 1..k {
            if k.is_multiple_of(d) {
                p = p
                    .div_exact_monic(&Self::cyclotomic(d))
                    .expect("cyclotomic factors divide t^k - 1");
            }
        }
        p
    }

    /// Determinant of `I − Mt + Pt²` by exact evaluation and interpolation.
    pub fn det_quadratic_pencil(m: &IntMatrix, p: &IntMatrix) -> Result<Self> {
        let n = m.dim();
        if p.dim() != n {
            return Err(Error::Structural("M and P have different sizes".into()));
        }
        let points: Vec<i64> = (0..=2 * n as i64).collect();
        let mut values = Vec::with_capacity(points.len());
        for &t in &points {
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let id = i64::from(i == j);
                            Rational::from_i64(id - m[(i, j)] * t + p[(i, j)] * t * t)
                        })
                        .collect()
                })
                .collect();
            values.push(Matrix::from_rows(rows)?.det()?);
        }
        interpolate(&points, &values)
    }
}

/// Newton interpolation through integer nodes, expanded to monomial form.
fn interpolate(xs: &[i64], ys: &[Rational]) -> Result<IntPoly> {
    let n = xs.len();
    let mut table = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = table[i].clone() - &table[i - 1];
            table[i] = num.div(&Rational::from_i64(xs[i] - xs[i - level]))?;
        }
    }
    // Horner on the Newton basis
    let mut acc: Vec<Rational> = vec![table[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![Rational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + c;
            next[k] = next[k].clone() - &(c.clone() * &Rational::from_i64(xs[i]));
        }
        next[0] = next[0].clone() + &table[i];
        acc = next;
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.numer().clone())
            } else {
                Err(Error::Arithmetic(
                    "interpolated determinant is not integral".into(),
                ))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomics() {
        assert_eq!(IntPoly::cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(IntPoly::cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(IntPoly::cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(IntPoly::cyclotomic(12).degree(), Some(4));
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[-1, -2, 1]).to_string(), "t^2 - 2t - 1");
        assert_eq!(IntPoly::from_i64(&[3, 0, 0, -1]).to_string(), "-t^3 + 3");
    }

    #[test]
    fn pencil_determinant_matches_hand_expansion() {
        let m = IntMatrix::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap();
        let id = IntMatrix::identity(2);
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        // (1+t²)² − 4t²
        let expect = IntPoly::from_i64(&[1, 0, 1])
            .pow(2)
            .sub(&IntPoly::from_i64(&[0, 0, 4]));
        assert_eq!(IntPoly::det_quadratic_pencil(&m, &id).unwrap(), expect);
        // 1 − (2t − t²)²
        let off = IntPoly::from_i64(&[0, 2, -1]);
        let expect = IntPoly::one().sub(&off.pow(2));
        assert_eq!(IntPoly::det_quadratic_pencil(&m, &swap).unwrap(), expect);
    }
}
