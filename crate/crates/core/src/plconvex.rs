//! Lower convex piecewise linear functions and their Newton polytopes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{LatticeMatrix, LatticeVector, Rational, RationalVector};
use crate::fan::{Cone, Fan};
use crate::polytope::Polytope;
use crate::subdivision::LiftedSubdivision;

#[derive(Clone, Debug)]
enum Repr {
    Newton(Polytope),
    Lifted(Arc<LiftedSubdivision>),
    Pullback(Box<PlConvexFunction>, LatticeMatrix),
    Sum(Box<PlConvexFunction>, Box<PlConvexFunction>),
    Scaled(Rational, Box<PlConvexFunction>),
}

/// A lower convex piecewise linear function on `Q^n`.
///
/// `Newton` functions are `v -> -min <p, v>` over a polytope. `Lifted` functions come from the lower
/// hull of heights over a base polytope; they extend to all of `Q^n` when every cell contains the
/// origin with value zero.
#[derive(Clone, Debug)]
pub struct PlConvexFunction {
    dim: usize,
    repr: Repr,
}

/// Maximal domains of linearity, one covector per maximal cone.
#[derive(Clone, Debug)]
pub struct LinearityFan {
    pub fan: Fan,
    /// Pairs of a maximal cone and the covector `c` with `phi = <c, .>` on it.
    pub pieces: Vec<(Cone, RationalVector)>,
}

impl LinearityFan {
    pub fn covector_at(&self, x: &RationalVector) -> Option<&RationalVector> {
        self.pieces.iter().find(|(c, _)| c.contains(x)).map(|(_, l)| l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Convexity {
    StrictlyConvex,
    /// The function agrees with the linear part of `cone` somewhere outside `cone`, inside `other`.
    NotStrictlyConvex { cone: Cone, other: Cone },
    /// The function is not linear on `cone`.
    NotPiecewiseLinear { cone: Cone },
}

impl Convexity {
    pub fn holds(&self) -> bool {
        *self == Convexity::StrictlyConvex
    }
}

/// Which section functions vanish identically on a cone.
#[derive(Clone, Debug)]
pub struct OrbitVerdict {
    pub excluded: bool,
    /// Lattice points `m` whose section function is identically zero on the cone.
    pub vanishing: Vec<LatticeVector>,
}

impl PlConvexFunction {
    pub fn from_polytope(q: &Polytope) -> PlConvexFunction {
        PlConvexFunction { dim: q.ambient_dim(), repr: Repr::Newton(q.clone()) }
    }

    pub fn zero(dim: usize) -> PlConvexFunction {
        Self::from_polytope(&Polytope::hull(&[RationalVector::zero(dim)]).expect("point"))
    }

    /// The function whose graph is the lower hull of a lifted subdivision.
    pub fn from_lifted(sub: LiftedSubdivision) -> PlConvexFunction {
        PlConvexFunction { dim: sub.base().ambient_dim(), repr: Repr::Lifted(Arc::new(sub)) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The Newton polytope this function was built from, if it is in that form.
    pub fn as_newton(&self) -> Option<&Polytope> {
        match &self.repr {
            Repr::Newton(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_lifted(&self) -> Option<&LiftedSubdivision> {
        match &self.repr {
            Repr::Lifted(s) => Some(s),
            _ => None,
        }
    }

    /// Whether the function is defined on all of `Q^n`.
    pub fn is_globally_defined(&self) -> bool {
        match &self.repr {
            Repr::Newton(_) => true,
            Repr::Lifted(s) => s.is_star_shaped(),
            Repr::Pullback(f, _) | Repr::Scaled(_, f) => f.is_globally_defined(),
            Repr::Sum(a, b) => a.is_globally_defined() && b.is_globally_defined(),
        }
    }

    pub fn evaluate(&self, v: &RationalVector) -> Result<Rational> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        match &self.repr {
            Repr::Newton(p) => p.support(v),
            Repr::Lifted(s) => s.evaluate(v),
            Repr::Pullback(f, a) => f.evaluate(&a.apply_rational(v)?),
            Repr::Sum(a, b) => Ok(a.evaluate(v)? + b.evaluate(v)?),
            Repr::Scaled(k, f) => Ok(k * f.evaluate(v)?),
        }
    }

    pub fn evaluate_lattice(&self, v: &LatticeVector) -> Result<Rational> {
        self.evaluate(&v.to_rational())
    }

    /// `self o p`, for `p` from `Q^k` to the domain of `self`.
    pub fn pullback(&self, p: &LatticeMatrix) -> Result<PlConvexFunction> {
        if p.nrows() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.nrows() });
        }
        Ok(PlConvexFunction { dim: p.ncols(), repr: Repr::Pullback(Box::new(self.clone()), p.clone()) })
    }

    pub fn add(&self, other: &PlConvexFunction) -> Result<PlConvexFunction> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(PlConvexFunction { dim: self.dim, repr: Repr::Sum(Box::new(self.clone()), Box::new(other.clone())) })
    }

    /// `k * self` for `k >= 0`.
    pub fn scale(&self, k: &Rational) -> Result<PlConvexFunction> {
        if k.is_negative() {
            return Err(Error::NotConvex("negative multiple".into()));
        }
        Ok(PlConvexFunction { dim: self.dim, repr: Repr::Scaled(k.clone(), Box::new(self.clone())) })
    }

    /// Full-dimensional cones covering the space, each with the covector of the function on it.
    /// Different pieces may share a covector.
    pub fn pieces(&self) -> Result<Vec<(Cone, RationalVector)>> {
        match &self.repr {
            Repr::Newton(q) => newton_pieces(q),
            Repr::Lifted(s) => s.global_pieces(),
            Repr::Pullback(f, a) => {
                let t = a.transpose();
                let mut out = Vec::new();
                for (c, l) in f.pieces()? {
                    let pre = c.preimage(a)?;
                    if pre.dim() == self.dim {
                        out.push((pre, t.apply_rational(&l)?));
                    }
                }
                Ok(out)
            }
            Repr::Sum(a, b) => {
                let pb = b.pieces()?;
                let mut out = Vec::new();
                for (ca, la) in a.pieces()? {
                    for (cb, lb) in &pb {
                        let c = ca.intersect(cb)?;
                        if c.dim() == self.dim {
                            out.push((c, la.checked_add(lb)?));
                        }
                    }
                }
                Ok(out)
            }
            Repr::Scaled(k, f) => Ok(f.pieces()?.into_iter().map(|(c, l)| (c, l.scale(k))).collect()),
        }
    }

    /// The fan of maximal domains of linearity.
    pub fn linearity_fan(&self) -> Result<LinearityFan> {
        let mut groups: BTreeMap<RationalVector, Vec<LatticeVector>> = BTreeMap::new();
        for (c, l) in self.pieces()? {
            groups.entry(l).or_default().extend(c.all_generators());
        }
        let mut pieces = Vec::new();
        for (l, gens) in groups {
            pieces.push((Cone::from_generators(self.dim, &gens, &[])?, l));
        }
        let fan = Fan::from_cones(self.dim, pieces.iter().map(|(c, _)| c.clone()).collect())?;
        Ok(LinearityFan { fan, pieces })
    }

    /// `{u : <u, v> >= -phi(v) for all v}`.
    pub fn newton(&self) -> Result<Polytope> {
        if let Repr::Newton(p) = &self.repr {
            return Ok(p.clone());
        }
        let mut halfspaces = Vec::new();
        for (c, _) in self.pieces()? {
            for d in c.all_generators() {
                let v = self.evaluate_lattice(&d)?;
                halfspaces.push((d.to_rational(), v));
            }
        }
        halfspaces.sort();
        halfspaces.dedup();
        Polytope::from_halfspaces(self.dim, &halfspaces)
    }

    /// Strict convexity on a fan whose maximal cones are full-dimensional.
    pub fn is_strictly_convex_on(&self, fan: &Fan) -> Result<Convexity> {
        let lin = self.linearity_fan()?;
        let max = fan.maximal_cones();
        let mut domains = Vec::with_capacity(max.len());
        for c in &max {
            if c.dim() != self.dim {
                return Err(Error::NotFullDimensional);
            }
            let x = c.interior_point().to_rational();
            match lin.pieces.iter().find(|(z, _)| z.contains(&x) && z.contains_cone(c)) {
                Some((z, _)) => domains.push(z),
                None => return Ok(Convexity::NotPiecewiseLinear { cone: (*c).clone() }),
            }
        }
        for (i, c) in max.iter().enumerate() {
            for (j, other) in max.iter().enumerate() {
                if i == j {
                    continue;
                }
                let overlap = domains[i].intersect(other)?;
                if !c.contains_cone(&overlap) {
                    return Ok(Convexity::NotStrictlyConvex { cone: (*c).clone(), other: (*other).clone() });
                }
            }
        }
        Ok(Convexity::StrictlyConvex)
    }

    /// The function with Newton polytope `polytope - m`; it is nonnegative and vanishes exactly
    /// where `m` minimizes `<., v>` over the polytope.
    pub fn section_function(polytope: &Polytope, m: &LatticeVector) -> Result<PlConvexFunction> {
        if !polytope.contains_lattice(m) {
            return Err(Error::NotInPolytope(m.to_string()));
        }
        Ok(Self::from_polytope(&polytope.translate(&(-m).to_rational())?))
    }

    /// Whether exactly one lattice point of `polytope` has a section function vanishing on all of `cone`.
    pub fn orbit_excluded(cone: &Cone, polytope: &Polytope) -> Result<OrbitVerdict> {
        let gens = cone.all_generators();
        let mut vanishing = Vec::new();
        for m in polytope.lattice_points() {
            let phi = Self::section_function(polytope, &m)?;
            let mut zero = true;
            for g in &gens {
                if !phi.evaluate_lattice(g)?.is_zero() {
                    zero = false;
                    break;
                }
            }
            if zero {
                vanishing.push(m);
            }
        }
        Ok(OrbitVerdict { excluded: vanishing.len() == 1, vanishing })
    }
}

fn newton_pieces(q: &Polytope) -> Result<Vec<(Cone, RationalVector)>> {
    let n = q.ambient_dim();
    let vs = q.vertices();
    let mut out = Vec::with_capacity(vs.len());
    for p in vs {
        let ineq: Vec<LatticeVector> = vs
            .iter()
            .filter(|w| *w != p)
            .map(|w| w.checked_sub(p).expect("same dim").clear_denominators().0)
            .collect();
        let c = Cone::from_inequalities(n, &ineq, &[])?;
        out.push((c, p.scale(&Rational::from_integer((-1).into()))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qi;
    use crate::lv;

    fn square() -> Polytope {
        Polytope::hull_lattice(&[lv![1, 1], lv![1, -1], lv![-1, 1], lv![-1, -1]]).unwrap()
    }

    #[test]
    fn newton_roundtrip_is_computed_not_cached() {
        let q = square();
        let f = PlConvexFunction::from_polytope(&q);
        let g = f.pullback(&LatticeMatrix::identity(2)).unwrap();
        assert_eq!(g.newton().unwrap(), q);
        assert_eq!(f.evaluate_lattice(&lv![1, 0]).unwrap(), qi(1));
        assert_eq!(f.linearity_fan().unwrap().pieces.len(), 4);
    }

    #[test]
    fn zero_function() {
        let z = PlConvexFunction::zero(3);
        let lf = z.linearity_fan().unwrap();
        assert_eq!(lf.pieces.len(), 1);
        assert_eq!(lf.pieces[0].0.lineality().len(), 3);
        let id = z.pullback(&LatticeMatrix::identity(3)).unwrap();
        assert_eq!(id.newton().unwrap().vertices(), &[RationalVector::zero(3)]);
    }

    #[test]
    fn sum_matches_minkowski() {
        let a = Polytope::hull_lattice(&[lv![0, 0], lv![1, 0]]).unwrap();
        let b = Polytope::hull_lattice(&[lv![0, 0], lv![0, 1]]).unwrap();
        let s = PlConvexFunction::from_polytope(&a).add(&PlConvexFunction::from_polytope(&b)).unwrap();
        assert_eq!(s.newton().unwrap(), a.minkowski(&b).unwrap());
    }

    #[test]
    fn strict_convexity_on_normal_fan() {
        let q = square();
        let dual = q.dual().unwrap();
        let f = PlConvexFunction::from_polytope(&q);
        let fan = Fan::over_faces(&dual).unwrap();
        assert!(f.is_strictly_convex_on(&fan).unwrap().holds());
        let coarse = Polytope::hull_lattice(&[lv![1, 0], lv![-1, 0]]).unwrap();
        let g = PlConvexFunction::from_polytope(&coarse);
        assert!(matches!(g.is_strictly_convex_on(&fan).unwrap(), Convexity::NotStrictlyConvex { .. }));
        let finer = Fan::over_faces(
            &Polytope::hull_lattice(&[lv![1, 0], lv![0, 1], lv![-1, 0], lv![0, -1], lv![1, 1]]).unwrap(),
        )
        .unwrap();
        assert!(matches!(f.is_strictly_convex_on(&finer).unwrap(), Convexity::NotStrictlyConvex { .. }));
        let rotated = Fan::over_faces(&q).unwrap();
        assert!(matches!(f.is_strictly_convex_on(&rotated).unwrap(), Convexity::NotPiecewiseLinear { .. }));
    }

    #[test]
    fn section_function_requires_membership() {
        let q = square();
        assert!(PlConvexFunction::section_function(&q, &lv![3, 0]).is_err());
        let f = PlConvexFunction::section_function(&q, &lv![1, 1]).unwrap();
        assert_eq!(f.evaluate_lattice(&lv![0, 0]).unwrap(), qi(0));
        assert_eq!(f.evaluate_lattice(&lv![1, 0]).unwrap(), qi(2));
        assert_eq!(f.evaluate_lattice(&lv![-1, 0]).unwrap(), qi(0));
    }
}
