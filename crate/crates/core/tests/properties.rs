mod common;

use mirrortoric::birational::{MonomialMap, Ring};
use mirrortoric::exactnum::q;
use mirrortoric::{Fan, LatticeMatrix, LatticeVector};
use proptest::prelude::*;

fn lattice_points(dim: usize, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<LatticeVector>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, dim), n)
        .prop_map(|v| v.iter().map(|x| LatticeVector::from_i64s(x)).collect())
}

fn newt_case() -> impl Strategy<Value = (Vec<LatticeVector>, LatticeMatrix)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, k)| {
        (
            lattice_points(m, 1..=5),
            prop::collection::vec(prop::collection::vec(-2i64..=2, k), m).prop_map(move |rows| {
                let r: Vec<LatticeVector> = rows.iter().map(|x| LatticeVector::from_i64s(x)).collect();
                LatticeMatrix::from_rows_with_cols(&r, k).unwrap()
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn pullback_of_newton_function_is_image((pts, p) in newt_case()) {
        prop_assert_eq!(common::check_newt_law(&pts, &p), Ok(()));
    }

    #[test]
    fn lower_hull_of_convex_heights(seed in any::<u64>(), dim in 2usize..=3, newton in lattice_points(3, 1..=4)) {
        let mut rng = common::rng(seed);
        let delta = common::random_reflexive(&mut rng, dim, 15);
        let newton: Vec<LatticeVector> =
            newton.iter().map(|v| LatticeVector::new(v.entries()[..dim].to_vec())).collect();
        let probes: Vec<_> = (0..5).map(|_| common::random_rational_point(&mut rng, &delta)).collect();
        prop_assert_eq!(common::check_lower_hull_parts(&delta, &newton, &probes), Ok(()));
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>(), dim in 2usize..=3) {
        let body = common::random_body(&mut common::rng(seed), dim);
        prop_assert_eq!(common::check_dual_involution(&body), Ok(()));
    }

    #[test]
    fn minkowski_sum_is_function_sum(seed in any::<u64>(), dim in 2usize..=3) {
        let mut rng = common::rng(seed);
        let a = common::random_body(&mut rng, dim);
        let b = common::random_body(&mut rng, dim);
        let probes = common::random_points(&mut rng, dim, 10, 5);
        prop_assert_eq!(common::check_minkowski_addition(&a, &b, &probes), Ok(()));
    }

    #[test]
    fn face_lattice_satisfies_euler_relation(seed in any::<u64>(), dim in 2usize..=3) {
        let body = common::random_body(&mut common::rng(seed), dim);
        let chi: i64 = (0..dim).map(|k| if k % 2 == 0 { 1 } else { -1 } * body.faces(k).len() as i64).sum();
        prop_assert_eq!(chi, if dim == 2 { 0 } else { 2 });
    }

    #[test]
    fn face_fans_are_valid_and_stellar_subdivisions_refine(seed in any::<u64>(), dim in 2usize..=3) {
        let body = common::random_body(&mut common::rng(seed), dim);
        let fan = Fan::over_faces(&body).unwrap();
        prop_assert!(fan.validate().is_ok());
        let cone = fan.maximal_cones()[0].clone();
        let split = fan.stellar_subdivision(&cone.interior_point()).unwrap();
        prop_assert!(split.validate().is_ok());
        prop_assert!(split.refines(&fan));
        let fewer = fan.remove_cones(std::slice::from_ref(&cone)).unwrap();
        prop_assert!(fewer.validate().is_ok());
        prop_assert!(!fewer.contains_cone(&cone));
        prop_assert!(fan.maximal_cones().iter().filter(|c| **c != &cone).all(|c| fewer.contains_cone(c)));
    }

    #[test]
    fn laurent_evaluation_is_a_ring_map(
        a in prop::collection::vec((-3i64..=3, -3i64..=3, -5i64..=5), 1..4),
        b in prop::collection::vec((-3i64..=3, -3i64..=3, -5i64..=5), 1..4),
        x in (1i64..=9, 1i64..=9, 1i64..=9, 1i64..=9),
    ) {
        let ring = Ring::new(&["x", "y"]);
        let poly = |t: &[(i64, i64, i64)]| t.iter().fold(ring.zero(), |acc, &(i, j, c)| acc.add(&ring.monomial(vec![i, j], q(c, 1))).unwrap());
        let (f, g) = (poly(&a), poly(&b));
        let pt = [q(x.0, x.1), q(-x.2, x.3)];
        let (fv, gv) = (f.evaluate(&pt).unwrap(), g.evaluate(&pt).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().evaluate(&pt).unwrap(), &fv * &gv);
        prop_assert_eq!(f.add(&g).unwrap().evaluate(&pt).unwrap(), &fv + &gv);
        let reparsed = ring.parse(&f.to_string()).unwrap();
        prop_assert!(reparsed.equals(&mirrortoric::birational::RationalFn::from_poly(f.clone())).unwrap());
    }

    #[test]
    fn unimodular_monomial_maps_invert(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 2)) {
        let m = LatticeMatrix::from_i64_rows(&[&rows[0], &rows[1]]).unwrap();
        let det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
        prop_assume!(det == 1 || det == -1);
        let inv = LatticeMatrix::from_i64_rows(&[&[rows[1][1] * det, -rows[0][1] * det], &[-rows[1][0] * det, rows[0][0] * det]]).unwrap();
        let r = Ring::new(&["s", "t"]);
        let f = MonomialMap::new(r.clone(), r.clone(), m).unwrap();
        let g = MonomialMap::new(r.clone(), r.clone(), inv).unwrap();
        let pt = [q(2, 3), q(-5, 7)];
        prop_assert_eq!(g.pullback_point(&f.pullback_point(&pt).unwrap()).unwrap(), pt.to_vec());
        let id = g.compose(&f).unwrap();
        prop_assert_eq!(id.pullback_point(&pt).unwrap(), pt.to_vec());
    }
}
