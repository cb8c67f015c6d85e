use super::{Field, QuadExt, Rational};
use crate::error::{Error, Result};

/// The roots of a quadratic with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadraticRoots {
    /// Two distinct rational roots, smaller first.
    Rational(Rational, Rational),
    /// A double root.
    Repeated(Rational),
    /// Conjugate roots in `ℚ(√d)`, the `+√` root first.
    Conjugate(QuadExt, QuadExt),
}

impl QuadraticRoots {
    /// Both roots (a repeated root twice) in the extension field.
    pub fn as_pair(&self) -> (QuadExt, QuadExt) {
        match self {
            QuadraticRoots::Rational(x, y) => (x.clone().into(), y.clone().into()),
            QuadraticRoots::Repeated(x) => (x.clone().into(), x.clone().into()),
            QuadraticRoots::Conjugate(x, y) => (x.clone(), y.clone()),
        }
    }

    pub fn is_repeated(&self) -> bool {
        matches!(self, QuadraticRoots::Repeated(_))
    }
}

/// Roots of `a x² + b x + c`.
pub fn quadratic_roots(a: &Rational, b: &Rational, c: &Rational) -> Result<QuadraticRoots> {
    if a.is_zero() {
        return Err(Error::Degenerate("leading coefficient is zero".into()));
    }
    let disc = b * b - Rational::from(4) * a * c;
    let two_a = Rational::from(2) * a;
    let inv_two_a = two_a.inv()?;
    if disc.is_zero() {
        return Ok(QuadraticRoots::Repeated(-b * &inv_two_a));
    }
    if let Some(root) = disc.sqrt_exact() {
        let x = (-b - &root) * &inv_two_a;
        let y = (-b + &root) * &inv_two_a;
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        return Ok(QuadraticRoots::Rational(lo, hi));
    }
    let root = QuadExt::sqrt_of(&disc);
    let base = QuadExt::from(-b);
    let scale = QuadExt::from(inv_two_a);
    Ok(QuadraticRoots::Conjugate(
        (base.clone() + &root) * &scale,
        (base - &root) * &scale,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn eval(a: &Rational, b: &Rational, c: &Rational, x: &QuadExt) -> QuadExt {
        QuadExt::from(a.clone()) * x * x + QuadExt::from(b.clone()) * x + QuadExt::from(c.clone())
    }

    #[test]
    fn distinct_rational_roots() {
        assert_eq!(
            quadratic_roots(&r(1), &r(-3), &r(2)).unwrap(),
            QuadraticRoots::Rational(r(1), r(2))
        );
    }

    #[test]
    fn irrational_roots_in_extension() {
        let roots = quadratic_roots(&r(1), &r(0), &r(-2)).unwrap();
        let (x, y) = roots.as_pair();
        assert_eq!(x, QuadExt::sqrt_of(&r(2)));
        assert_eq!(y, -QuadExt::sqrt_of(&r(2)));
    }

    #[test]
    fn repeated_root() {
        assert_eq!(
            quadratic_roots(&r(1), &r(-2), &r(1)).unwrap(),
            QuadraticRoots::Repeated(r(1))
        );
    }

    #[test]
    fn degenerate_leading_coefficient() {
        assert!(matches!(
            quadratic_roots(&r(0), &r(1), &r(1)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn roots_satisfy_polynomial() {
        for (a, b, c) in [(1, 1, 1), (2, -3, -7), (3, 0, 5), (-1, 4, 4), (5, 10, 5)] {
            let (a, b, c) = (r(a), r(b), r(c));
            let (x, y) = quadratic_roots(&a, &b, &c).unwrap().as_pair();
            assert!(eval(&a, &b, &c, &x).is_zero());
            assert!(eval(&a, &b, &c, &y).is_zero());
        }
    }
}
