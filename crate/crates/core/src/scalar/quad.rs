use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Field, Rational};
use crate::error::{Error, Result};

/// An element `a + b√d` of `ℚ(√d)` for a squarefree `d ∉ {0, 1}`.
///
/// Elements with `b = 0` carry no radicand and combine with any extension,
/// so rational constants can be written without knowing `d` up front.
/// Combining two irrational elements of different extensions panics: a
/// computation lives in exactly one quadratic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    radicand: i64,
}

/// Splits `n ≠ 0` as `s² · m` with `m` squarefree (sign kept on `m`).
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, i64) {
    assert!(!n.is_zero(), "squarefree part of zero");
    let sign: i64 = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut square = BigInt::from(1);
    let mut free = BigInt::from(1);
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        if count > 0 {
            square *= num_traits::pow(p.clone(), (count / 2) as usize);
            if count % 2 == 1 {
                free *= &p;
            }
        }
        p += 1;
    }
    free *= rest;
    let free = free.to_i64().expect("squarefree part exceeds i64 range");
    (square, sign * free)
}

impl QuadExt {
    /// `a + b√d`; `d` is reduced to its squarefree part.
    pub fn new(a: Rational, b: Rational, d: i64) -> Result<Self> {
        if b.is_zero() {
            return Ok(Self::rational(a));
        }
        if d == 0 {
            return Err(Error::Arithmetic("radicand zero".into()));
        }
        let (s, m) = squarefree_decompose(&BigInt::from(d));
        let b = b * Rational::from(s);
        if m == 1 {
            return Ok(Self::rational(a + b));
        }
        Ok(QuadExt { a, b, radicand: m })
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            radicand: 0,
        }
    }

    /// `√r` for a rational `r`, landing in `ℚ` when `r` is a square.
    pub fn sqrt_of(r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        // √(p/q) = √(pq) / q
        let pq = r.numer() * r.denom();
        let (s, m) = squarefree_decompose(&pq);
        let coeff = Rational::from_big(s, r.denom().clone()).expect("nonzero denominator");
        if m == 1 {
            Self::rational(coeff)
        } else {
            QuadExt {
                a: Rational::zero(),
                b: coeff,
                radicand: m,
            }
        }
    }

    pub fn real_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Rational {
        &self.b
    }

    /// The radicand, or `None` for a rational element.
    pub fn radicand(&self) -> Option<i64> {
        (self.radicand != 0).then_some(self.radicand)
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            radicand: self.radicand,
        }
    }

    /// `a² − d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from(self.radicand) * &self.b * &self.b
    }

    fn join(d1: i64, d2: i64) -> i64 {
        match (d1, d2) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("cannot combine elements of Q(sqrt({x})) and Q(sqrt({y}))"),
        }
    }

    fn normalized(a: Rational, b: Rational, radicand: i64) -> Self {
        if b.is_zero() {
            Self::rational(a)
        } else {
            QuadExt { a, b, radicand }
        }
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        self + &rhs
    }
}

impl<'a> Add<&'a QuadExt> for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &'a QuadExt) -> QuadExt {
        let d = QuadExt::join(self.radicand, rhs.radicand);
        QuadExt::normalized(self.a + &rhs.a, self.b + &rhs.b, d)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        self - &rhs
    }
}

impl<'a> Sub<&'a QuadExt> for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &'a QuadExt) -> QuadExt {
        let d = QuadExt::join(self.radicand, rhs.radicand);
        QuadExt::normalized(self.a - &rhs.a, self.b - &rhs.b, d)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        self * &rhs
    }
}

impl<'a> Mul<&'a QuadExt> for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &'a QuadExt) -> QuadExt {
        let d = QuadExt::join(self.radicand, rhs.radicand);
        let a = &self.a * &rhs.a + Rational::from(d) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt::normalized(a, b, d)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            radicand: self.radicand,
        }
    }
}

impl Field for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        // d is not a square, so the norm vanishes only at zero
        let n = self.norm().inv()?;
        Ok(QuadExt::normalized(
            &self.a * &n,
            -(&self.b * &n),
            self.radicand,
        ))
    }
    fn from_rational(r: Rational) -> Self {
        QuadExt::rational(r)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }
    fn parse_scalar(s: &str) -> Result<Self> {
        parse_quad(s)
    }
    fn is_simple(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.radicand);
        let mag = self.b.abs();
        let body = if mag.is_one() {
            root
        } else {
            format!("{mag}*{root}")
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{body}"),
            (true, true) => write!(f, "-{body}"),
            (false, false) => write!(f, "{}+{body}", self.a),
            (false, true) => write!(f, "{}-{body}", self.a),
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `r`, `sqrt(d)`, `r*sqrt(d)`, `r+sqrt(d)`, `r-s*sqrt(d)`, optionally
/// wrapped in parentheses.
fn parse_quad(s: &str) -> Result<QuadExt> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(&t);
    let bad = || Error::Parse(format!("not a quadratic element: {s:?}"));
    let Some(pos) = t.find("sqrt(") else {
        return Ok(QuadExt::rational(t.parse()?));
    };
    let inner = t[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
    let d: i64 = inner.parse().map_err(|_| bad())?;
    let head = &t[..pos];
    let head = head.strip_suffix('*').unwrap_or(head);
    // split `head` into the rational part and the signed coefficient of the root
    let split = head
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !head[..i].ends_with('/'))
        .map(|(i, _)| i)
        .last();
    let (real, coeff) = match split {
        Some(i) => (&head[..i], &head[i..]),
        None if head.is_empty() || head == "-" || head == "+" => ("", head),
        None if t[..pos].ends_with('*') => ("", head),
        None => (head, "+"),
    };
    let real = if real.is_empty() {
        Rational::zero()
    } else {
        real.parse()?
    };
    let coeff = match coeff {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        c => c.strip_prefix('+').unwrap_or(c).parse()?,
    };
    QuadExt::new(real, coeff, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: i64) -> QuadExt {
        QuadExt::new(Rational::from(a), Rational::from(b), d).unwrap()
    }

    #[test]
    fn norm_form_product() {
        assert_eq!(q(1, 1, 2) * q(1, -1, 2), QuadExt::from_i64(-1));
    }

    #[test]
    fn inverse_by_rationalizing() {
        let x = q(1, 1, 2);
        let inv = x.inv().unwrap();
        assert_eq!(inv, q(-1, 1, 2));
        assert!((x * &inv).is_one());
    }

    #[test]
    fn radicand_is_reduced() {
        let x = q(0, 1, 8);
        assert_eq!(x.radicand(), Some(2));
        assert_eq!(x.sqrt_part(), &Rational::from(2));
        assert_eq!(q(1, 1, 4), QuadExt::from_i64(3));
        assert_eq!(
            QuadExt::sqrt_of(&Rational::new(1, 2)).to_string(),
            "1/2*sqrt(2)"
        );
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "3",
            "-1/2",
            "sqrt(2)",
            "-sqrt(3)",
            "1+sqrt(5)",
            "1/2-3/4*sqrt(-7)",
            "2*sqrt(2)",
        ] {
            let x = QuadExt::parse_scalar(s).unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(QuadExt::parse_scalar(&x.to_string()).unwrap(), x);
        }
        assert_eq!(
            QuadExt::parse_scalar("(1 + 2*sqrt(3))").unwrap(),
            q(1, 2, 3)
        );
    }

    #[test]
    #[should_panic(expected = "cannot combine")]
    fn mixing_extensions_panics() {
        let _ = q(0, 1, 2) + q(0, 1, 3);
    }
}
