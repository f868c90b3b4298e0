//! Computed values checked against independent brute-force oracles.

mod common;

use std::collections::BTreeSet;

use mirrortoric::birational::{Family, Ring, Theorem};
use mirrortoric::exactnum::{q, qi, solve_rational, to_rational};
use mirrortoric::fan::Fan;
use mirrortoric::plconvex::Convexity;
use mirrortoric::scenarios::fixtures::{GrassmannFixture, WeightedFixture};
use mirrortoric::subdivision::gkz_mpcp;
use mirrortoric::{lv, LatticeVector, PlConvexFunction, Polytope, Rational, RationalVector};
use rand::Rng;

#[test]
fn kernel_of_weighted_dual_map_by_box_search() {
    let w = WeightedFixture::new().unwrap();
    let h = &w.embedding;
    let mut found = BTreeSet::new();
    let r = 2i64;
    let side = (2 * r + 1) as u32;
    for idx in 0..side.pow(5) {
        let mut k = idx;
        let n: Vec<i64> = (0..5)
            .map(|_| {
                let c = (k % side) as i64 - r;
                k /= side;
                c
            })
            .collect();
        let n = LatticeVector::from_i64s(&n);
        if !n.is_zero() && (0..4).all(|j| n.dot(&h.column(j)).unwrap() == 0.into()) {
            found.insert(n.primitive().unwrap());
        }
    }
    let want = lv![0, 0, 0, 2, -1];
    assert_eq!(found, BTreeSet::from([want.clone(), -&want]));
    let k = w.projection().kernel_basis();
    assert_eq!(k.len(), 1);
    assert!(k[0] == want || k[0] == -&want);
}

#[test]
fn dual_of_weighted_polytope_by_facet_enumeration() {
    let w = WeightedFixture::new().unwrap();
    let p = w.polytope().unwrap();
    let dual = p.dual().unwrap();
    let oracle: BTreeSet<RationalVector> = common::brute_dual_vertices(&w.polytope_vertices).into_iter().collect();
    let got: BTreeSet<RationalVector> = dual.vertices().iter().cloned().collect();
    assert_eq!(got, oracle);
    assert_eq!(got.len(), 5);
    assert!(got.iter().all(RationalVector::is_integral));
}

#[test]
fn lattice_points_of_grassmann_polytope_by_box_scan() {
    let g = GrassmannFixture::new().unwrap();
    let p = g.degenerate_grassmann_polytope().unwrap();
    let oracle = common::brute_lattice_points(&g.grassmann_rays, 2);
    let mut got = p.lattice_points();
    got.sort();
    assert_eq!(got, oracle);
    assert_eq!(got.len(), 7);
}

#[test]
fn lattice_points_of_random_bodies_by_box_scan() {
    let mut rng = common::rng(3);
    for _ in 0..20 {
        let d = rng.gen_range(2..=3);
        let body = common::random_body(&mut rng, d);
        let verts = body.lattice_vertices().unwrap();
        let mut got = body.lattice_points();
        got.sort();
        assert_eq!(got, common::brute_lattice_points(&verts, 2));
    }
}

#[test]
fn sum_of_nef_functions_matches_minkowski_sum() {
    let g = GrassmannFixture::new().unwrap();
    let n1 = g.nef_function(0).unwrap().newton().unwrap();
    let n2 = g.nef_function(1).unwrap().newton().unwrap();
    let sum = n1.minkowski(&n2).unwrap();
    let f = g.nef_function(0).unwrap().add(&g.nef_function(1).unwrap()).unwrap();
    let mut rng = common::rng(5);
    for v in common::random_points(&mut rng, 5, 100, 9) {
        let x = v.to_rational();
        let support = -(sum.vertices().iter().map(|u| u.dot(&x).unwrap()).min().unwrap());
        assert_eq!(f.evaluate(&x).unwrap(), support, "at {v}");
    }
    assert_eq!(f.newton().unwrap(), sum);
}

#[test]
fn linearity_fan_of_first_nef_function_by_minimizing_vertex() {
    let g = GrassmannFixture::new().unwrap();
    let phi = g.nef_function(0).unwrap();
    let newton = phi.newton().unwrap();
    let lin = phi.linearity_fan().unwrap();
    assert_eq!(lin.fan.maximal_cones().len(), 6);
    let mut rng = common::rng(9);
    let mut groups = BTreeSet::new();
    for v in common::random_points(&mut rng, 5, 200, 20) {
        let x = v.to_rational();
        let values: Vec<Rational> = newton.vertices().iter().map(|u| u.dot(&x).unwrap()).collect();
        let min = values.iter().min().unwrap().clone();
        let argmin: Vec<usize> = (0..values.len()).filter(|&i| values[i] == min).collect();
        if argmin.len() == 1 {
            groups.insert(argmin[0]);
            let covector = lin.covector_at(&x).expect("covered");
            assert_eq!(covector.dot(&x).unwrap(), -min);
        }
    }
    assert_eq!(groups.len(), 6);
}

#[test]
fn nef_function_covectors_on_simplex_cones() {
    let g = GrassmannFixture::new().unwrap();
    let fan = Fan::over_faces(&g.simplex).unwrap();
    let mut covectors = Vec::new();
    for c in fan.maximal_cones() {
        let a: Vec<Vec<Rational>> = c.rays().iter().map(|r| r.entries().iter().map(to_rational).collect()).collect();
        let b: Vec<Rational> = c
            .rays()
            .iter()
            .map(|r| {
                let i = g.simplex_rays.iter().position(|s| s == r).unwrap();
                qi(g.nef_values[1][i])
            })
            .collect();
        covectors.push(solve_rational(&a, &b, 5).unwrap());
    }
    let distinct: BTreeSet<_> = covectors.iter().cloned().collect();
    assert_eq!(distinct.len(), covectors.len());
    assert!(g.nef_function(1).unwrap().is_strictly_convex_on(&fan).unwrap().holds());

    let zero = PlConvexFunction::zero(5);
    let verdict = zero.is_strictly_convex_on(&fan).unwrap();
    assert!(matches!(verdict, Convexity::NotStrictlyConvex { .. }));
    let big = g.big().unwrap();
    let star = PlConvexFunction::from_polytope(&big);
    assert!(matches!(star.is_strictly_convex_on(&fan).unwrap(), Convexity::NotPiecewiseLinear { .. }));
}

#[test]
fn simplex_boundary_function_is_already_mpcp() {
    let g = GrassmannFixture::new().unwrap();
    let boundary: Vec<LatticeVector> =
        common::brute_lattice_points(&g.simplex_rays, 1).into_iter().filter(|p| !p.is_zero()).collect();
    assert_eq!(boundary.iter().cloned().collect::<BTreeSet<_>>(), g.simplex_rays.iter().cloned().collect());
    let seed = PlConvexFunction::from_polytope(&g.simplex.dual().unwrap());
    let cert = gkz_mpcp(&g.simplex, &seed).unwrap();
    assert!(cert.rounds.is_empty());
    assert_eq!(cert.scale, 1.into());
    assert!(cert.check().passed());
}

#[test]
fn reflexive_quadrilateral_with_one_midpoint() {
    let verts = [lv![1, 0], lv![0, 1], lv![-1, -1], lv![1, -1]];
    let delta = Polytope::hull_lattice(&verts).unwrap();
    assert!(delta.is_reflexive());
    assert_eq!(delta.boundary_lattice_points().len(), 5);
    let seed = PlConvexFunction::from_polytope(&delta.dual().unwrap());
    let cert = gkz_mpcp(&delta, &seed).unwrap();
    assert_eq!(cert.rounds.len(), 1);
    assert_eq!(cert.rounds[0].point, lv![0, -1]);
    let fan = cert.fan().unwrap();
    assert_eq!(fan.rays().len(), 5);
    assert!(cert.check().passed());

    let sub = &cert.subdivision;
    let pts = sub.points().to_vec();
    let oracle = common::BruteLowerHull::new(&pts, sub.heights());
    let mut rng = common::rng(1);
    for _ in 0..30 {
        let x = common::random_rational_point(&mut rng, &delta);
        assert_eq!(sub.evaluate(&x).unwrap(), oracle.value(&x));
    }
}

#[test]
fn laurent_expansion_by_distribution() {
    let ring = Ring::new(&["X1", "X2", "X3", "X4"]);
    let product = ring.parse("(1 + X4*X2^-1) * (X4^-1*X1*X2 + X2)").unwrap();
    let x = |n: &str| ring.var(n).unwrap();
    let terms = [
        x("X4").pow(-1).unwrap().mul(&x("X1")).unwrap().mul(&x("X2")).unwrap(),
        x("X2"),
        x("X1"),
        x("X4"),
    ];
    let mut sum = ring.zero();
    for t in &terms {
        sum = sum.add(t).unwrap();
    }
    assert_eq!(sum.num_terms(), 4);
    assert!(product.equals(&mirrortoric::birational::RationalFn::from_poly(sum)).unwrap());
}

#[test]
fn monomial_map_at_a_point_by_direct_evaluation() {
    let y = [qi(1), qi(2), qi(1), qi(1), qi(3)];
    let x = Theorem::Quartic.forward().pullback_point(&y).unwrap();
    let direct = [
        qi(1) / (&y[1] * &y[2] * &y[3] * &y[4]),
        &y[1] * &y[4],
        y[2].clone(),
        qi(1) / (&y[0] * &y[2] * &y[3] * &y[4]),
    ];
    assert_eq!(x, direct);
    assert_eq!(x, [q(1, 6), qi(6), qi(1), q(1, 3)]);
}

#[test]
fn family_parameters_solved_from_the_equations() {
    let x = [qi(1), qi(2), qi(3), qi(5)];
    let a5 = &x[0] * &x[1] * &x[2] * (qi(1) - &x[0] - &x[1] - &x[2] - &x[3] - &x[0] * &x[1] / &x[3]);
    assert_eq!(a5, q(-312, 5));
    let mut point = x.to_vec();
    point.push(a5);
    assert_eq!(Family::Conifold.equations()[0].evaluate(&point).unwrap(), qi(0));

    let ones = vec![qi(1); 5];
    let b4 = (qi(1) - &ones[0] - &ones[1] - &ones[2]) / &ones[3];
    assert_eq!(b4, qi(-2));
    let mut point = ones.clone();
    point.push(b4);
    assert_eq!(Family::BatyrevBorisov.equations()[0].evaluate(&point).unwrap(), qi(0));
}

#[test]
fn interior_points_of_singular_face_by_scan() {
    let w = WeightedFixture::new().unwrap();
    let face = Polytope::hull_lattice(&w.singular_face).unwrap();
    let on_edge = |p: &LatticeVector| {
        (0..3).any(|i| {
            let (a, b) = (&w.singular_face[i], &w.singular_face[(i + 1) % 3]);
            let d = b - a;
            let e = p - a;
            let t: Vec<Option<Rational>> = (0..4)
                .map(|k| {
                    let dk = to_rational(&d.entries()[k]);
                    let ek = to_rational(&e.entries()[k]);
                    if dk == qi(0) {
                        (ek == qi(0)).then(|| qi(-1))
                    } else {
                        Some(ek / dk)
                    }
                })
                .collect();
            let params: BTreeSet<Rational> = t.iter().flatten().filter(|x| **x != qi(-1)).cloned().collect();
            t.iter().all(Option::is_some) && params.len() == 1 && params.iter().all(|s| *s >= qi(0) && *s <= qi(1))
        })
    };
    let pts = face.lattice_points();
    let inner: Vec<&LatticeVector> = pts.iter().filter(|p| !on_edge(p)).collect();
    assert_eq!(pts.len(), 15);
    assert_eq!(inner.len(), 3);
    let mut got = face.relative_interior_lattice_points();
    got.sort();
    let mut want: Vec<LatticeVector> = inner.into_iter().cloned().collect();
    want.sort();
    assert_eq!(got, want);
}
