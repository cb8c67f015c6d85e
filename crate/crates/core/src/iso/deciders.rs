use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mesh::{construct_family, Family, FamilyAlgebra, FamilyParams};
use crate::quiver::VertexPermutation;
use crate::scalar::Field;

use super::{is_isomorphism, GradedMap};

/// A decision together with the clause that produced it and, when
/// isomorphic, a map that has already passed [`is_isomorphism`].
#[derive(Clone, Debug)]
pub struct IsoVerdict<F> {
    pub isomorphic: bool,
    pub witness: Option<GradedMap<F>>,
    pub certificate: String,
}

impl<F> IsoVerdict<F> {
    fn no(certificate: String) -> Self {
        IsoVerdict {
            isomorphic: false,
            witness: None,
            certificate,
        }
    }
}

impl<F: Field> fmt::Display for IsoVerdict<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.isomorphic {
            "isomorphic"
        } else {
            "not isomorphic"
        };
        write!(f, "{verdict} ({})", self.certificate)
    }
}

fn product<F: Field>(xs: &[F]) -> F {
    xs.iter().fold(F::one(), |acc, x| acc * x)
}

fn check_params<F: Field>(p: &[F], q: &[F]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::Parameter(format!(
            "parameter vectors have lengths {} and {}",
            p.len(),
            q.len()
        )));
    }
    if p.iter().chain(q).any(Field::is_zero) {
        return Err(Error::Parameter("parameters must be nonzero".into()));
    }
    Ok(())
}

/// Runs [`is_isomorphism`] on a freshly built witness; a failure is a bug.
pub(crate) fn confirm<F: Field>(
    map: &GradedMap<F>,
    src: &FamilyAlgebra<F>,
    tgt: &FamilyAlgebra<F>,
) -> Result<()> {
    let check = is_isomorphism(map, &src.system(2)?, &tgt.system(2)?)?;
    match check.failure {
        None => Ok(()),
        Some(msg) => Err(Error::Internal(format!(
            "witness {} -> {} rejected: {msg}",
            src.params, tgt.params
        ))),
    }
}

fn diagonal<F: Field>(sigma: VertexPermutation, entries: Vec<F>) -> GradedMap<F> {
    let m = entries.len();
    let mut matrix = Matrix::zeros(m, m);
    for (i, c) in entries.into_iter().enumerate() {
        matrix[(i, i)] = c;
    }
    GradedMap::new(sigma, matrix)
}

/// `a_i ↦ a_i`, `a*_i ↦ α_i a*_i` with `α_0 = 1` and `α_i = α_{i−1} p_i/q_i`:
/// an isomorphism `A_n(p) → A_n(q)` whenever the products agree.
fn an_rescaling<F: Field>(p: &[F], q: &[F]) -> Result<GradedMap<F>> {
    let n = p.len();
    let mut alpha = vec![F::one()];
    for i in 1..n {
        let next = alpha[i - 1].clone() * &p[i].div(&q[i])?;
        alpha.push(next);
    }
    let mut entries = vec![F::one(); n];
    entries.extend(alpha);
    Ok(diagonal(VertexPermutation::identity(n), entries))
}

/// The reflection `e_i ↦ e_{−i}`, `a_i ↦ a*_{−i−1}`, `a*_i ↦ a_{−i−1}`:
/// an isomorphism `A_n(p) → A_n(q)` when `q_{−i} = p_i⁻¹`.
fn an_reflection<F: Field>(n: usize) -> GradedMap<F> {
    let sigma = VertexPermutation::new((0..n).map(|i| (n - i) % n).collect()).expect("reflection");
    let mut matrix = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        let j = (2 * n - i - 1) % n;
        matrix[(i, n + j)] = F::one();
        matrix[(n + i, j)] = F::one();
    }
    GradedMap::new(sigma, matrix)
}

/// Decides `A_n(p) ≅ A_n(q)`: isomorphic iff `∏p = (∏q)^{±1}`.
///
/// Equal products are witnessed by a rescaling of the starred arrows,
/// inverse products by a rescaling followed by the reflection. For `n = 1`
/// the algebras are quantum planes and the same product test applies.
pub fn an_iso_decide<F: Field>(p: &[F], q: &[F]) -> Result<IsoVerdict<F>> {
    check_params(p, q)?;
    let n = p.len();
    match n {
        0 => return Err(Error::Parameter("An needs n >= 1".into())),
        2 => {
            return Err(Error::OutOfScope(
                "A2 lives on a non-schurian quiver; use the two-vertex classifier".into(),
            ))
        }
        _ => {}
    }
    let (pp, pq) = (product(p), product(q));
    let src = construct_family(&FamilyParams::an(p.to_vec()))?;
    let tgt = construct_family(&FamilyParams::an(q.to_vec()))?;
    let background = if n == 1 {
        "; quantum plane criterion"
    } else {
        ""
    };
    if pp == pq {
        let w = an_rescaling(p, q)?;
        confirm(&w, &src, &tgt)?;
        return Ok(IsoVerdict {
            isomorphic: true,
            witness: Some(w),
            certificate: format!("rescaling: prod p = prod q = {pp}{background}"),
        });
    }
    if (pp.clone() * &pq).is_one() {
        // rescale onto p'' with p''_i = q_{-i}^{-1}, then reflect onto q
        let mid: Vec<F> = (0..n)
            .map(|i| q[(n - i) % n].inv())
            .collect::<Result<_>>()?;
        let w = an_rescaling(p, &mid)?.then(&an_reflection(n))?;
        confirm(&w, &src, &tgt)?;
        return Ok(IsoVerdict {
            isomorphic: true,
            witness: Some(w),
            certificate: format!(
                "rescaling and reflection: prod p = {pp} = (prod q)^-1{background}"
            ),
        });
    }
    Ok(IsoVerdict::no(format!(
        "prod p = {pp} is neither prod q = {pq} nor its inverse{background}"
    )))
}

/// Decides `B_n(p) ≅ B_n(q)`: isomorphic iff `∏p = ∏q`, witnessed by
/// `b_i ↦ β_i b_i` with `β_{i+1} = β_i q_i/p_i`.
pub fn bn_iso_decide<F: Field>(p: &[F], q: &[F]) -> Result<IsoVerdict<F>> {
    check_params(p, q)?;
    let n = p.len();
    if n < 2 {
        return Err(Error::Parameter("Bn needs n >= 2".into()));
    }
    let (pp, pq) = (product(p), product(q));
    if pp != pq {
        return Ok(IsoVerdict::no(format!(
            "prod p = {pp} differs from prod q = {pq}"
        )));
    }
    let mut beta = vec![F::one()];
    for i in 0..n - 1 {
        let next = beta[i].clone() * &q[i].div(&p[i])?;
        beta.push(next);
    }
    let mut entries = vec![F::one(); n];
    entries.extend(beta);
    let w = diagonal(VertexPermutation::identity(n), entries);
    let src = construct_family(&FamilyParams::bn(p.to_vec()))?;
    let tgt = construct_family(&FamilyParams::bn(q.to_vec()))?;
    confirm(&w, &src, &tgt)?;
    Ok(IsoVerdict {
        isomorphic: true,
        witness: Some(w),
        certificate: format!("prod p = prod q = {pp}"),
    })
}

/// Decides isomorphism inside one two-vertex family.
///
/// `Aq`, `Dq`: isomorphic iff `p = q^{±1}`; `Bq`: iff `p = q`; `J` has no
/// parameter. Witnesses map the `p`-algebra to the `q`-algebra.
pub fn two_param_iso_decide<F: Field>(family: Family, p: &F, q: &F) -> Result<IsoVerdict<F>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Parameter("parameters must be nonzero".into()));
    }
    let params = |x: &F| match family {
        Family::Aq => Ok(FamilyParams::aq(x.clone())),
        Family::Bq => Ok(FamilyParams::bq(x.clone())),
        Family::Dq => Ok(FamilyParams::dq(x.clone())),
        Family::J => Ok(FamilyParams::j()),
        other => Err(Error::Parameter(format!(
            "{other} is not a two-vertex family"
        ))),
    };
    let src = construct_family(&params(p)?)?;
    let tgt = construct_family(&params(q)?)?;
    if family == Family::J || p == q {
        let w = GradedMap::identity(src.quiver());
        confirm(&w, &src, &tgt)?;
        return Ok(IsoVerdict {
            isomorphic: true,
            witness: Some(w),
            certificate: "identity".into(),
        });
    }
    let inverse = (p.clone() * q).is_one();
    let (sq, tq) = (src.quiver(), tgt.quiver());
    let w = match family {
        Family::Aq if inverse => Some((
            GradedMap::from_images(
                sq,
                tq,
                VertexPermutation::new(vec![1, 0])?,
                &[
                    ("a", &format!("({p})*b")),
                    ("b", "a"),
                    ("c", "d"),
                    ("d", "c"),
                ],
            )?,
            "p = q^-1 via the vertex swap psi",
        )),
        Family::Dq if inverse => {
            let pm1 = p.clone() - F::one();
            Some((
                GradedMap::from_images(
                    sq,
                    tq,
                    VertexPermutation::identity(2),
                    &[
                        ("a", &format!("({p})*a + ({pm1})*c")),
                        ("b", &format!("({p})*b")),
                        ("c", "c"),
                        ("d", &format!("({pm1})*b + d")),
                    ],
                )?,
                "p = q^-1 via phi",
            ))
        }
        _ => None,
    };
    match w {
        Some((w, how)) => {
            confirm(&w, &src, &tgt)?;
            Ok(IsoVerdict {
                isomorphic: true,
                witness: Some(w),
                certificate: how.into(),
            })
        }
        None => {
            let rule = if family == Family::Bq {
                "p = q"
            } else {
                "p = q^(+-1)"
            };
            Ok(IsoVerdict::no(format!(
                "{family} criterion {rule} fails for p = {p}, q = {q}"
            )))
        }
    }
}
