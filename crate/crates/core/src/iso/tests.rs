use super::*;
use crate::mesh::{construct_family, Family, FamilyParams, MeshData};
use crate::quiver::VertexPermutation;
use crate::rewrite::parse_element;
use crate::scalar::{Field, QuadExt, Rational};

fn r(n: i64) -> Rational {
    Rational::from(n)
}

fn rs(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(a, b)| Rational::new(a, b)).collect()
}

fn sys(p: FamilyParams<Rational>) -> crate::rewrite::RewriteSystem<Rational> {
    construct_family(&p).unwrap().system(4).unwrap()
}

#[test]
fn psi_on_a_q() {
    let src = sys(FamilyParams::aq(r(2)));
    let tgt = sys(FamilyParams::aq(Rational::new(1, 2)));
    let w = GradedMap::from_images(
        src.quiver(),
        tgt.quiver(),
        VertexPermutation::new(vec![1, 0]).unwrap(),
        &[("a", "2*b"), ("b", "a"), ("c", "d"), ("d", "c")],
    )
    .unwrap();
    assert!(is_isomorphism(&w, &src, &tgt).unwrap().holds());
    // image of b*a - 2*d*c is 2(ab - cd)
    let img = w.apply(tgt.quiver(), &src.relations()[1]);
    assert_eq!(img, parse_element(tgt.quiver(), "2*a*b - 2*c*d").unwrap());
    assert!(tgt.ideal_membership(&img).unwrap());
}

#[test]
fn identity_does_not_change_parameter() {
    let src = sys(FamilyParams::aq(r(2)));
    let tgt = sys(FamilyParams::aq(r(3)));
    let check = is_isomorphism(&GradedMap::identity(src.quiver()), &src, &tgt).unwrap();
    assert!(!check.holds());
    assert!(check.to_string().contains("d*c"), "{check}");
}

#[test]
fn adjacency_mismatch_is_an_error() {
    let src = sys(FamilyParams::aq(r(2)));
    let tgt = sys(FamilyParams::<Rational>::j());
    assert!(is_isomorphism(&GradedMap::identity(src.quiver()), &src, &tgt).is_err());
}

#[test]
fn an_examples() {
    let v = an_iso_decide(
        &rs(&[(1, 1), (2, 1), (3, 1)]),
        &rs(&[(3, 1), (2, 1), (1, 1)]),
    )
    .unwrap();
    assert!(v.isomorphic && v.certificate.contains("rescaling:"));
    let v = an_iso_decide(
        &rs(&[(6, 1), (1, 1), (1, 1)]),
        &rs(&[(1, 1), (1, 1), (1, 6)]),
    )
    .unwrap();
    assert!(v.isomorphic && v.certificate.contains("reflection"), "{v}");
    let v = an_iso_decide(
        &rs(&[(2, 1), (1, 1), (1, 1)]),
        &rs(&[(1, 1), (1, 1), (1, 1)]),
    )
    .unwrap();
    assert!(!v.isomorphic);
    assert!(matches!(
        an_iso_decide(&rs(&[(1, 1), (2, 1)]), &rs(&[(1, 1), (2, 1)])),
        Err(crate::Error::OutOfScope(_))
    ));
    let v = an_iso_decide(&rs(&[(3, 1)]), &rs(&[(1, 3)])).unwrap();
    assert!(v.isomorphic);
    let v = an_iso_decide(
        &rs(&[(2, 1), (-1, 1), (3, 1), (1, 2), (5, 1)]),
        &rs(&[(1, 5), (2, 1), (1, 3), (-1, 1), (1, 2)]),
    )
    .unwrap();
    assert!(v.isomorphic, "{v}");
}

#[test]
fn bn_examples() {
    let v = bn_iso_decide(&rs(&[(2, 1), (3, 1)]), &rs(&[(6, 1), (1, 1)])).unwrap();
    assert!(v.isomorphic);
    let v = bn_iso_decide(&rs(&[(2, 1), (1, 1)]), &rs(&[(1, 1), (1, 1)])).unwrap();
    assert!(!v.isomorphic);
    let p = rs(&[(2, 1), (-3, 1), (1, 2)]);
    let v = bn_iso_decide(&p, &p).unwrap();
    assert!(v.isomorphic);
    assert_eq!(
        v.witness.unwrap().matrix(),
        &crate::linalg::Matrix::identity(6)
    );
    assert!(bn_iso_decide(&rs(&[(2, 1)]), &rs(&[(2, 1)])).is_err());
}

#[test]
fn two_param_examples() {
    let v = two_param_iso_decide(Family::Aq, &r(2), &Rational::new(1, 2)).unwrap();
    assert!(v.isomorphic && v.certificate.contains("psi"));
    let v = two_param_iso_decide(Family::Dq, &r(3), &Rational::new(1, 3)).unwrap();
    assert!(v.isomorphic && v.certificate.contains("phi"));
    let v = two_param_iso_decide(Family::Bq, &r(2), &Rational::new(1, 2)).unwrap();
    assert!(!v.isomorphic);
    let v = two_param_iso_decide(Family::Bq, &r(2), &r(3)).unwrap();
    assert!(!v.isomorphic);
}

#[test]
fn composition_of_accepted_maps() {
    let a2 = sys(FamilyParams::aq(r(2)));
    let ah = sys(FamilyParams::aq(Rational::new(1, 2)));
    let f = two_param_iso_decide(Family::Aq, &r(2), &Rational::new(1, 2))
        .unwrap()
        .witness
        .unwrap();
    let g = two_param_iso_decide(Family::Aq, &Rational::new(1, 2), &r(2))
        .unwrap()
        .witness
        .unwrap();
    let fg = f.then(&g).unwrap();
    assert!(is_isomorphism(&fg, &a2, &a2).unwrap().holds());
    assert!(is_isomorphism(&f.inverse().unwrap(), &ah, &a2)
        .unwrap()
        .holds());
}

#[test]
fn enumeration() {
    let cases = enumerate_cy2_matrices().unwrap();
    let shown: Vec<String> = cases
        .iter()
        .map(|c| format!("{} {}", c.m, c.p.cycles(|v| format!("e{}", v + 1))))
        .collect();
    assert_eq!(
        shown,
        vec![
            "[[0,2],[2,0]] ()",
            "[[1,1],[1,1]] ()",
            "[[1,1],[1,1]] (e1 e2)"
        ]
    );
}

fn kronecker_mesh(alpha: [[i64; 2]; 2], beta: [[i64; 2]; 2]) -> MeshData<Rational> {
    // τ(a) = α11 b + α12 d, τ(c) = α21 b + α22 d, τ(b) = β11 a + β12 c, τ(d) = β21 a + β22 c
    let q = construct_family(&FamilyParams::aq(r(1)))
        .unwrap()
        .mesh
        .quiver()
        .clone();
    MeshData::from_images(
        q,
        VertexPermutation::identity(2),
        &[
            ("a", vec![("b", r(alpha[0][0])), ("d", r(alpha[0][1]))]),
            ("c", vec![("b", r(alpha[1][0])), ("d", r(alpha[1][1]))]),
            ("b", vec![("a", r(beta[0][0])), ("c", r(beta[0][1]))]),
            ("d", vec![("a", r(beta[1][0])), ("c", r(beta[1][1]))]),
        ],
    )
    .unwrap()
}

#[test]
fn classify_diagonal_kronecker() {
    let m = kronecker_mesh([[1, 0], [0, 1]], [[1, 0], [0, 2]]);
    let c = classify_two_vertex(&m).unwrap();
    assert_eq!(c.tag, Family::Aq);
    let q = c.parameter.clone().unwrap();
    let two = QuadExt::from_i64(2);
    assert!(q == two || q == two.inv().unwrap(), "{c}");
}

#[test]
fn classify_irrational_eigenvalues() {
    // N has characteristic polynomial t² − t − 1
    let m = kronecker_mesh([[1, 0], [0, 1]], [[0, 1], [1, 1]]);
    let c = classify_two_vertex(&m).unwrap();
    assert_eq!(c.tag, Family::Aq);
    assert_eq!(c.radicand, Some(5), "{c}");
}

#[test]
fn classify_families_recover_themselves() {
    let j = construct_family(&FamilyParams::<Rational>::j()).unwrap();
    assert_eq!(classify_two_vertex(&j.mesh).unwrap().tag, Family::J);
    let b = construct_family(&FamilyParams::bq(r(1))).unwrap();
    let c = classify_two_vertex(&b.mesh).unwrap();
    assert_eq!((c.tag, c.parameter), (Family::Bq, Some(QuadExt::one())));
    let d1 = construct_family(&FamilyParams::dq(r(1))).unwrap();
    let c = classify_two_vertex(&d1.mesh).unwrap();
    assert_eq!(c.tag, Family::Dq);
    assert!(matches!(c.eigen_data, Some(EigenData::Jordan(_))));
    let a1 = construct_family(&FamilyParams::aq(r(1))).unwrap();
    let c = classify_two_vertex(&a1.mesh).unwrap();
    assert!(matches!(c.eigen_data, Some(EigenData::Scalar(_))));
}

#[test]
fn d_q_is_a_q_away_from_one() {
    let d2 = construct_family(&FamilyParams::dq(r(2))).unwrap();
    let c = classify_two_vertex(&d2.mesh).unwrap();
    assert_eq!(c.tag, Family::Aq);
    let a2 = construct_family(&FamilyParams::aq(r(2))).unwrap();
    let v = two_vertex_iso_decide(&d2.mesh, &a2.mesh).unwrap();
    assert!(v.isomorphic && v.witness.is_some(), "{v}");
}

#[test]
fn j_witness_needs_square_root() {
    let q = construct_family(&FamilyParams::<Rational>::j())
        .unwrap()
        .mesh
        .quiver()
        .clone();
    // α1 α2 / (α3 α4) = 2
    let m = MeshData::from_images(
        q,
        VertexPermutation::identity(2),
        &[
            ("a", vec![("a", r(1))]),
            ("b", vec![("d", r(2))]),
            ("c", vec![("c", r(1))]),
            ("d", vec![("b", r(1))]),
        ],
    )
    .unwrap();
    let c = classify_two_vertex(&m).unwrap();
    assert_eq!((c.tag, c.radicand), (Family::J, Some(2)));
}

#[test]
fn pairwise_examples() {
    let report = pairwise_distinct_check(&[r(2), Rational::new(1, 2)]).unwrap();
    let row = |l: &str, rt: &str| {
        report
            .rows
            .iter()
            .find(|x| x.left == l && x.right == rt)
            .unwrap_or_else(|| panic!("{l} {rt}"))
            .clone()
    };
    assert!(!row("A(2)", "B(2)").computed);
    assert!(row("A(2)", "B(2)").certificate.contains("adjacency"));
    assert!(row("A(2)", "A(1/2)").computed);
    assert!(!row("B(2)", "B(1/2)").computed);
}
