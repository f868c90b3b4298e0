//! Random inputs and brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use mirrortoric::exactnum::{q, qi, solve_rational, to_rational};
use mirrortoric::subdivision::gkz_mpcp;
use mirrortoric::{LatticeMatrix, LatticeVector, LiftedSubdivision, PlConvexFunction, Polytope, Rational, RationalVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut impl Rng, dim: usize, n: usize, r: i64) -> Vec<LatticeVector> {
    (0..n).map(|_| LatticeVector::from_i64s(&(0..dim).map(|_| rng.gen_range(-r..=r)).collect::<Vec<_>>())).collect()
}

/// A full-dimensional lattice polytope with the origin in its interior.
pub fn random_body(rng: &mut impl Rng, dim: usize) -> Polytope {
    loop {
        let mut pts = random_points(rng, dim, dim + 3, 2);
        for i in 0..dim {
            let k = rng.gen_range(1..=2);
            pts.push(LatticeVector::unit(dim, i).scale(&k.into()));
            pts.push(-&LatticeVector::unit(dim, i));
        }
        if let Ok(p) = Polytope::hull_lattice(&pts) {
            if p.is_full_dimensional() && p.origin_is_interior() {
                return p;
            }
        }
    }
}

/// A reflexive polytope with vertices in `{-1,0,1}^dim` and at most `cap` lattice points.
pub fn random_reflexive(rng: &mut impl Rng, dim: usize, cap: usize) -> Polytope {
    loop {
        let n = rng.gen_range(dim + 1..=dim + 4);
        let pts = random_points(rng, dim, n, 1);
        if let Ok(p) = Polytope::hull_lattice(&pts) {
            if p.is_full_dimensional() && p.origin_is_interior() && p.is_reflexive() && p.lattice_points().len() <= cap {
                return p;
            }
        }
    }
}

pub fn random_rational_point(rng: &mut impl Rng, p: &Polytope) -> RationalVector {
    let verts = p.vertices();
    let weights: Vec<i64> = verts.iter().map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let mut x = RationalVector::zero(p.ambient_dim());
    for (v, w) in verts.iter().zip(weights) {
        x = x.checked_add(&v.scale(&q(w, total))).unwrap();
    }
    x
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> LatticeMatrix {
    let r: Vec<LatticeVector> = random_points(rng, cols, rows, 2);
    LatticeMatrix::from_rows_with_cols(&r, cols).unwrap()
}

/// Affine functions through `dim + 1` of the lifted points that lie weakly below all of them.
/// Their maximum is the lower hull of the lift.
pub struct BruteLowerHull {
    pieces: Vec<(Vec<Rational>, Rational)>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

impl BruteLowerHull {
    pub fn new(points: &[LatticeVector], heights: &[Rational]) -> BruteLowerHull {
        let d = points[0].dim();
        let mut pieces = Vec::new();
        for s in subsets(points.len(), d + 1) {
            let a: Vec<Vec<Rational>> = s
                .iter()
                .map(|&i| {
                    let mut row: Vec<Rational> = points[i].entries().iter().map(to_rational).collect();
                    row.push(qi(1));
                    row
                })
                .collect();
            let b: Vec<Rational> = s.iter().map(|&i| heights[i].clone()).collect();
            let Some(sol) = solve_rational(&a, &b, d + 1) else { continue };
            let check = a.iter().zip(&b).all(|(row, h)| row.iter().zip(&sol).map(|(x, y)| x * y).sum::<Rational>() == *h);
            if !check {
                continue;
            }
            let (lin, c) = (sol[..d].to_vec(), sol[d].clone());
            let below = points.iter().zip(heights).all(|(p, h)| {
                let v: Rational = p.entries().iter().zip(&lin).map(|(x, y)| to_rational(x) * y).sum::<Rational>() + &c;
                v <= *h
            });
            if below {
                pieces.push((lin, c));
            }
        }
        BruteLowerHull { pieces }
    }

    pub fn value(&self, x: &RationalVector) -> Rational {
        self.pieces
            .iter()
            .map(|(lin, c)| x.entries().iter().zip(lin).map(|(a, b)| a * b).sum::<Rational>() + c)
            .max()
            .expect("a full-dimensional lift has a lower facet")
    }
}

/// Facet hyperplanes `<u, x> = -1` of a polytope with the origin inside, found by testing every
/// `dim`-subset of vertices. The `u` are the vertices of the dual.
pub fn brute_dual_vertices(vertices: &[LatticeVector]) -> Vec<RationalVector> {
    let d = vertices[0].dim();
    let mut out: Vec<RationalVector> = Vec::new();
    for s in subsets(vertices.len(), d) {
        let a: Vec<Vec<Rational>> = s.iter().map(|&i| vertices[i].entries().iter().map(to_rational).collect()).collect();
        let b = vec![qi(-1); d];
        let Some(u) = solve_rational(&a, &b, d) else { continue };
        let u = RationalVector::new(u);
        let exact = s.iter().all(|&i| u.dot_lattice(&vertices[i]).unwrap() == qi(-1));
        let valid = vertices.iter().all(|v| u.dot_lattice(v).unwrap() >= qi(-1));
        let rows: Vec<LatticeVector> = s.iter().map(|&i| vertices[i].clone()).collect();
        let spans = LatticeMatrix::from_rows(&rows).unwrap().rank() == d;
        if exact && valid && spans && !out.contains(&u) {
            out.push(u);
        }
    }
    out
}

/// Lattice points of the box `[-r, r]^dim` satisfying every brute-force facet inequality.
pub fn brute_lattice_points(vertices: &[LatticeVector], r: i64) -> Vec<LatticeVector> {
    let d = vertices[0].dim();
    let facets = brute_dual_vertices(vertices);
    let mut out = Vec::new();
    let side = (2 * r + 1) as usize;
    for idx in 0..side.pow(d as u32) {
        let mut k = idx;
        let coords: Vec<i64> = (0..d)
            .map(|_| {
                let c = (k % side) as i64 - r;
                k /= side;
                c
            })
            .collect();
        let p = LatticeVector::from_i64s(&coords);
        if facets.iter().all(|u| u.dot_lattice(&p).unwrap() >= qi(-1)) {
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Pullback law for Newton polytopes: the Newton polytope of `phi o p` is the image of the
/// Newton polytope of `phi` under the transpose of `p`.
pub fn check_newt_law(newton_points: &[LatticeVector], p: &LatticeMatrix) -> Result<(), String> {
    let qpoly = Polytope::hull_lattice(newton_points).map_err(|e| e.to_string())?;
    let phi = PlConvexFunction::from_polytope(&qpoly);
    let lhs = phi.pullback(p).and_then(|f| f.newton()).map_err(|e| e.to_string())?;
    let rhs = qpoly.image(&p.transpose()).map_err(|e| e.to_string())?;
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("newton of pullback {:?} != image {:?}", lhs.vertices(), rhs.vertices()))
    }
}

/// Lower hull of convex heights: tight at every lattice point, equal to the brute-force lower hull
/// at random rational points, and after adding the boundary function it has a crepant MPCP refinement.
pub fn check_lower_hull_parts(delta: &Polytope, newton_points: &[LatticeVector], probes: &[RationalVector]) -> Result<(), String> {
    let phi = PlConvexFunction::from_polytope(&Polytope::hull_lattice(newton_points).map_err(|e| e.to_string())?);
    let pts = delta.lattice_points();
    let heights: Vec<Rational> = pts.iter().map(|p| phi.evaluate_lattice(p).unwrap()).collect();
    let pairs: Vec<(LatticeVector, Rational)> = pts.iter().cloned().zip(heights.iter().cloned()).collect();
    let lift = LiftedSubdivision::lower_hull(delta, &pairs).map_err(|e| e.to_string())?;
    for (p, h) in &pairs {
        let v = lift.evaluate(&p.to_rational()).map_err(|e| e.to_string())?;
        if v != *h {
            return Err(format!("induced value {v} != {h} at {p}"));
        }
    }
    let oracle = BruteLowerHull::new(&pts, &heights);
    for x in probes {
        let v = lift.evaluate(x).map_err(|e| e.to_string())?;
        let o = oracle.value(x);
        if v != o {
            return Err(format!("lower hull {v} != brute force {o} at {x}"));
        }
    }
    if !lift.verify_regular() {
        return Err("lift is not a regular subdivision".into());
    }
    let boundary = PlConvexFunction::from_polytope(&delta.dual().map_err(|e| e.to_string())?);
    let seed = lift.function().add(&boundary).map_err(|e| e.to_string())?;
    let cert = gkz_mpcp(delta, &seed).map_err(|e| e.to_string())?;
    let checks = cert.check();
    if !checks.passed() {
        return Err(format!("MPCP checks failed: {checks:?}"));
    }
    Ok(())
}

pub fn check_dual_involution(p: &Polytope) -> Result<(), String> {
    let dd = p.dual().and_then(|d| d.dual()).map_err(|e| e.to_string())?;
    if dd == *p {
        Ok(())
    } else {
        Err(format!("dual of dual {:?} != {:?}", dd.vertices(), p.vertices()))
    }
}

/// Minkowski sums correspond to sums of functions, checked on vertices and on probe directions.
pub fn check_minkowski_addition(a: &Polytope, b: &Polytope, probes: &[LatticeVector]) -> Result<(), String> {
    let sum = a.minkowski(b).map_err(|e| e.to_string())?;
    let f = PlConvexFunction::from_polytope(a).add(&PlConvexFunction::from_polytope(b)).map_err(|e| e.to_string())?;
    let newton = f.newton().map_err(|e| e.to_string())?;
    if newton != sum {
        return Err(format!("newton of sum {:?} != minkowski {:?}", newton.vertices(), sum.vertices()));
    }
    for v in probes {
        let x = v.to_rational();
        let lhs = f.evaluate(&x).map_err(|e| e.to_string())?;
        let rhs = -(sum.vertices().iter().map(|u| u.dot(&x).unwrap()).min().unwrap());
        if lhs != rhs {
            return Err(format!("function {lhs} != support {rhs} at {v}"));
        }
    }
    Ok(())
}
