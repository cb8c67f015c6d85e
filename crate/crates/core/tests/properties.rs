use meshcy::iso::{an_iso_decide, bn_iso_decide, is_isomorphism, GradedMap};
use meshcy::mesh::{construct_family, mesh_relations, FamilyAlgebra, FamilyParams, MeshData};
use meshcy::oracle::graded_dims_by_rank;
use meshcy::rewrite::parse_element;
use meshcy::scalar::{quadratic_roots, Field, QuadExt};
use meshcy::{AlgebraElement, MonomialOrder, Quiver, Rational, RewriteSystem};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rational::new(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn small_unit() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![
        Rational::from(1),
        Rational::from(-1),
        Rational::from(2),
        Rational::from(-2),
        Rational::new(1, 2),
    ])
}

fn algebra(choice: usize, q: &[Rational]) -> FamilyAlgebra<Rational> {
    let params = match choice {
        0 => FamilyParams::j(),
        1 => FamilyParams::an(q[..3].to_vec()),
        2 => FamilyParams::dq(q[0].clone()),
        3 => FamilyParams::aq(q[0].clone()),
        _ => FamilyParams::bn(q[..2].to_vec()),
    };
    construct_family(&params).unwrap()
}

/// A homogeneous element of degree `k` in the block it picks.
fn element(quiver: &Quiver, k: usize, seed: &[i64]) -> AlgebraElement<Rational> {
    let n = quiver.vertex_count();
    let (i, j) = (seed[0] as usize % n, seed[1] as usize % n);
    let paths = quiver.paths(k, i, j);
    AlgebraElement::from_terms(
        paths
            .into_iter()
            .zip(seed[2..].iter().cycle())
            .map(|(p, &c)| (p, Rational::from(c))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert!((a.clone() - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((a.clone() * &a.inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn quadratic_roots_are_roots(a in nonzero(), b in rational(), c in rational()) {
        let (x, y) = quadratic_roots(&a, &b, &c).unwrap().as_pair();
        for r in [x.clone(), y.clone()] {
            let value = QuadExt::from(a.clone()) * &r * &r + &(QuadExt::from(b.clone()) * &r) + &QuadExt::from(c.clone());
            prop_assert!(value.is_zero());
        }
        // Vieta
        prop_assert_eq!(x.clone() + &y, QuadExt::from(-b.clone() * &a.inv().unwrap()));
        prop_assert_eq!(x * &y, QuadExt::from(c.clone() * &a.inv().unwrap()));
    }

    #[test]
    fn quadratic_extension_inverses(a in rational(), b in nonzero(), d in prop::sample::select(vec![2i64, 3, 5, -1, -7])) {
        let x = QuadExt::new(a, b, d).unwrap();
        prop_assert!((x.clone() * &x.inv().unwrap()).is_one());
        prop_assert_eq!(x.conjugate().conjugate(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_form_is_idempotent(
        choice in 0usize..5,
        q in prop::collection::vec(nonzero(), 3),
        k in 0usize..6,
        seed in prop::collection::vec(-3i64..=3, 8),
    ) {
        let alg = algebra(choice, &q);
        let rs = alg.system(7).unwrap();
        let x = element(alg.quiver(), k, &seed);
        let nf = rs.normal_form(&x);
        prop_assert_eq!(rs.normal_form(&nf), nf.clone());
        prop_assert!(rs.ideal_membership(&x.sub(&nf)).unwrap());
    }

    #[test]
    fn completion_is_order_independent(
        choice in 0usize..5,
        q in prop::collection::vec(nonzero(), 3),
        shuffle in Just(()).prop_perturb(|_, mut rng| rng.next_u64()),
        k in 0usize..5,
        seed in prop::collection::vec(-3i64..=3, 8),
    ) {
        let alg = algebra(choice, &q);
        let degree = 6;
        let first = alg.system(degree).unwrap();
        let mut arrows: Vec<usize> = (0..alg.quiver().arrow_count()).collect();
        let mut s = shuffle;
        for i in (1..arrows.len()).rev() {
            arrows.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let order = MonomialOrder::from_descending(alg.quiver(), &arrows).unwrap();
        let second = RewriteSystem::complete(alg.quiver(), &alg.relations, order, degree).unwrap();
        prop_assert_eq!(first.graded_dims(degree).unwrap(), second.graded_dims(degree).unwrap());
        let x = element(alg.quiver(), k, &seed);
        let nf = first.normal_form(&x);
        prop_assert!(second.ideal_membership(&x.sub(&nf)).unwrap());
        prop_assert_eq!(second.normal_form(&nf), second.normal_form(&x));
    }

    #[test]
    fn rank_oracle_agrees_with_rewriting(choice in 0usize..5, q in prop::collection::vec(nonzero(), 3)) {
        let alg = algebra(choice, &q);
        let degree = 5;
        let rs = alg.system(degree).unwrap();
        prop_assert_eq!(
            rs.graded_dims(degree).unwrap(),
            graded_dims_by_rank(alg.quiver(), &alg.relations, degree).unwrap()
        );
    }

    #[test]
    fn scaling_the_mesh_changes_nothing(choice in 0usize..5, q in prop::collection::vec(nonzero(), 3), s in nonzero()) {
        let alg = algebra(choice, &q);
        let scaled = alg.mesh.scaled(&s);
        let system = |m: &MeshData<Rational>| {
            RewriteSystem::complete(m.quiver(), &mesh_relations(m).unwrap(), alg.order.clone(), 5).unwrap()
        };
        let (x, y) = (system(&alg.mesh), system(&scaled));
        prop_assert_eq!(x.graded_dims(5).unwrap(), y.graded_dims(5).unwrap());
        let check = is_isomorphism(&GradedMap::identity(alg.quiver()), &x, &y).unwrap();
        prop_assert!(check.holds(), "{}", check);
    }

    #[test]
    fn an_decider_respects_symmetries(
        p in prop::collection::vec(small_unit(), 3),
        q in prop::collection::vec(small_unit(), 3),
        r in 0usize..3,
    ) {
        let verdict = an_iso_decide(&p, &q).unwrap().isomorphic;
        prop_assert_eq!(an_iso_decide(&q, &p).unwrap().isomorphic, verdict);
        let mut rotated = p.clone();
        rotated.rotate_left(r);
        prop_assert_eq!(an_iso_decide(&rotated, &q).unwrap().isomorphic, verdict);
        // reindexing i ↦ −i and inverting every parameter is the reflection
        let reflected: Vec<Rational> = (0..3).map(|i| p[(3 - i) % 3].inv().unwrap()).collect();
        prop_assert_eq!(an_iso_decide(&reflected, &q).unwrap().isomorphic, verdict);
    }

    #[test]
    fn bn_decider_respects_rotation(
        p in prop::collection::vec(small_unit(), 3),
        q in prop::collection::vec(small_unit(), 3),
        r in 0usize..3,
    ) {
        let verdict = bn_iso_decide(&p, &q).unwrap().isomorphic;
        prop_assert_eq!(bn_iso_decide(&q, &p).unwrap().isomorphic, verdict);
        let mut rotated = q.clone();
        rotated.rotate_right(r);
        prop_assert_eq!(bn_iso_decide(&p, &rotated).unwrap().isomorphic, verdict);
    }

    #[test]
    fn text_formats_round_trip(
        choice in 0usize..5,
        q in prop::collection::vec(nonzero(), 3),
        k in 1usize..5,
        seed in prop::collection::vec(-3i64..=3, 8),
    ) {
        let alg = algebra(choice, &q);
        let quiver = alg.quiver();
        prop_assert_eq!(&Quiver::from_text(&quiver.to_text()).unwrap(), quiver);
        let mesh = MeshData::<Rational>::from_text(&alg.mesh.to_text()).unwrap();
        prop_assert_eq!(mesh.tau(), alg.mesh.tau());
        prop_assert_eq!(mesh.mu(), alg.mesh.mu());
        let x = element(quiver, k, &seed);
        let shown = x.display(quiver, &alg.order).to_string();
        prop_assert_eq!(parse_element::<Rational>(quiver, &shown).unwrap(), x);
    }
}
