//! Convex polytopes with rational vertices: facets, faces, duality and lattice points.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    bareiss_rank, integer_kernel, solve_rational, to_rational, LatticeMatrix, LatticeVector, Rational, RationalVector,
};
use crate::hull::{facets_of_cone, generators_of_cone};

/// The half-space `<normal, x> >= -offset`, with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: LatticeVector,
    pub offset: Rational,
}

impl Facet {
    /// `<normal, x> + offset`, nonnegative on the polytope.
    pub fn slack(&self, x: &RationalVector) -> Rational {
        x.dot_lattice_unchecked(&self.normal) + &self.offset
    }
}

/// A nonempty face, given by indices into the vertex list of its polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<RationalVector>,
    facets: Vec<Facet>,
    /// `<a, x> + c = 0` on the affine hull.
    equations: Vec<Facet>,
    /// Homogeneous forms `(c, a)` of the equations, scaled to integers.
    equation_rows: Vec<LatticeVector>,
    incidence: Vec<Vec<usize>>,
    faces: OnceLock<Vec<Face>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

fn homogenize(p: &RationalVector) -> LatticeVector {
    let (v, l) = p.clear_denominators();
    let mut e = vec![l];
    e.extend(v.into_entries());
    LatticeVector::new(e).primitive().expect("first coordinate is positive")
}

fn split_form(row: &LatticeVector) -> Facet {
    let (c0, a) = row.entries().split_first().expect("nonempty");
    let a = LatticeVector::new(a.to_vec());
    let g = a.content();
    let g = if g.is_zero() { BigInt::one() } else { g };
    Facet {
        normal: LatticeVector::new(a.entries().iter().map(|x| x / &g).collect()),
        offset: Rational::new(c0.clone(), g),
    }
}

impl Polytope {
    /// Convex hull of a finite point set.
    pub fn hull(points: &[RationalVector]) -> Result<Polytope> {
        let first = points.first().ok_or(Error::Empty)?;
        let ambient = first.dim();
        for p in points {
            if p.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: p.dim() });
            }
        }
        let mut pts: Vec<RationalVector> = points.to_vec();
        pts.sort();
        pts.dedup();
        let homog: Vec<LatticeVector> = pts.iter().map(homogenize).collect();
        let h = facets_of_cone(&homog, ambient + 1);
        let facet_rows = h.inequalities;
        let equation_rows = h.equations;
        let facets: Vec<Facet> = facet_rows.iter().map(split_form).collect();
        let equations: Vec<Facet> = equation_rows.iter().map(split_form).collect();
        let eq_rank = equation_rows.len();
        let mut vertices = Vec::new();
        for (p, hp) in pts.iter().zip(&homog) {
            let mut tight: Vec<LatticeVector> = equation_rows.clone();
            tight.extend(
                facet_rows.iter().filter(|r| r.dot_unchecked(hp).is_zero()).cloned(),
            );
            if tight.len() >= ambient && (eq_rank == ambient || bareiss_rank(&tight) == ambient) {
                vertices.push(p.clone());
            }
        }
        Ok(Self::assemble(ambient, vertices, facets, equations, equation_rows))
    }

    pub fn hull_lattice(points: &[LatticeVector]) -> Result<Polytope> {
        let pts: Vec<RationalVector> = points.iter().map(LatticeVector::to_rational).collect();
        Self::hull(&pts)
    }

    fn assemble(
        ambient: usize,
        vertices: Vec<RationalVector>,
        facets: Vec<Facet>,
        equations: Vec<Facet>,
        equation_rows: Vec<LatticeVector>,
    ) -> Polytope {
        let incidence = facets
            .iter()
            .map(|f| (0..vertices.len()).filter(|&i| f.slack(&vertices[i]).is_zero()).collect())
            .collect();
        Polytope {
            ambient,
            vertices,
            facets,
            equations,
            equation_rows,
            incidence,
            faces: OnceLock::new(),
        }
    }

    /// The polytope `{x : <a, x> >= -b}` for the given `(a, b)`; fails if unbounded or empty.
    pub fn from_halfspaces(ambient: usize, halfspaces: &[(RationalVector, Rational)]) -> Result<Polytope> {
        let mut rows = Vec::with_capacity(halfspaces.len() + 1);
        for (a, b) in halfspaces {
            if a.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: a.dim() });
            }
            let mut e = vec![b.clone()];
            e.extend(a.entries().iter().cloned());
            let (row, _) = RationalVector::new(e).clear_denominators();
            if !row.is_zero() {
                rows.push(row);
            }
        }
        rows.push(LatticeVector::unit(ambient + 1, 0));
        let (rays, lineality) = generators_of_cone(&rows, &[], ambient + 1);
        if !lineality.is_empty() || rays.iter().any(|r| r.entries()[0].is_zero()) {
            return Err(Error::Unbounded);
        }
        if rays.is_empty() {
            return Err(Error::Empty);
        }
        let pts: Vec<RationalVector> = rays
            .iter()
            .map(|r| {
                let t = to_rational(&r.entries()[0]);
                RationalVector::new(r.entries()[1..].iter().map(|x| to_rational(x) / &t).collect())
            })
            .collect();
        Self::hull(&pts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RationalVector::is_integral)
    }

    pub fn lattice_vertices(&self) -> Option<Vec<LatticeVector>> {
        self.vertices.iter().map(RationalVector::to_lattice).collect()
    }

    /// Facets, sorted by their homogeneous forms.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Equations `<a, x> + c = 0` of the affine hull.
    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    /// Vertex indices on facet `i`.
    pub fn facet_vertices(&self, i: usize) -> &[usize] {
        &self.incidence[i]
    }

    pub fn vertex_index(&self, v: &RationalVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        x.dim() == self.ambient
            && self.equations.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    pub fn contains_lattice(&self, x: &LatticeVector) -> bool {
        self.contains(&x.to_rational())
    }

    /// Membership in the relative interior.
    pub fn relative_interior_contains(&self, x: &RationalVector) -> bool {
        x.dim() == self.ambient
            && self.equations.iter().all(|e| e.slack(x).is_zero())
            && self.facets.iter().all(|f| f.slack(x).is_positive())
    }

    pub fn origin_is_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset.is_positive())
    }

    /// All nonempty faces, the polytope itself included, sorted by dimension then vertex set.
    pub fn face_lattice(&self) -> &[Face] {
        self.faces.get_or_init(|| self.compute_faces())
    }

    fn compute_faces(&self) -> Vec<Face> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = vec![all.clone()];
        seen.insert(all);
        while let Some(f) = queue.pop() {
            for inc in &self.incidence {
                let g: Vec<usize> = f.iter().copied().filter(|i| inc.binary_search(i).is_ok()).collect();
                if !g.is_empty() && !seen.contains(&g) {
                    seen.insert(g.clone());
                    queue.push(g);
                }
            }
        }
        let mut faces: Vec<Face> =
            seen.into_iter().map(|vs| Face { dim: self.vertex_set_dim(&vs), vertices: vs }).collect();
        faces.sort();
        faces
    }

    /// Affine dimension of a set of vertices.
    pub fn vertex_set_dim(&self, vs: &[usize]) -> usize {
        let rows: Vec<LatticeVector> = vs.iter().map(|&i| homogenize(&self.vertices[i])).collect();
        bareiss_rank(&rows).saturating_sub(1)
    }

    /// Faces of dimension `k`.
    pub fn faces(&self, k: usize) -> Vec<Face> {
        self.face_lattice().iter().filter(|f| f.dim == k).cloned().collect()
    }

    /// Proper faces (every face except the polytope itself).
    pub fn proper_faces(&self) -> Vec<Face> {
        let d = self.dim();
        self.face_lattice().iter().filter(|f| f.dim < d).cloned().collect()
    }

    pub fn face_points(&self, face: &Face) -> Vec<RationalVector> {
        face.vertices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn face_polytope(&self, face: &Face) -> Polytope {
        Polytope::hull(&self.face_points(face)).expect("faces are nonempty")
    }

    /// Looks up a face by its vertex set.
    pub fn face_with_vertices(&self, pts: &[RationalVector]) -> Option<Face> {
        let mut idx: Vec<usize> = pts.iter().map(|p| self.vertex_index(p)).collect::<Option<_>>()?;
        idx.sort();
        idx.dedup();
        self.face_lattice().iter().find(|f| f.vertices == idx).cloned()
    }

    /// The smallest face containing all the given points, if they lie in the polytope.
    pub fn smallest_face_containing(&self, pts: &[RationalVector]) -> Option<Face> {
        if !pts.iter().all(|p| self.contains(p)) {
            return None;
        }
        let tight: Vec<usize> = (0..self.facets.len())
            .filter(|&i| pts.iter().all(|p| self.facets[i].slack(p).is_zero()))
            .collect();
        let vs: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| tight.iter().all(|&i| self.incidence[i].binary_search(&v).is_ok()))
            .collect();
        Some(Face { dim: self.vertex_set_dim(&vs), vertices: vs })
    }

    /// The face whose relative interior contains `x`, or `None` if `x` is outside.
    pub fn locate(&self, x: &RationalVector) -> Option<Face> {
        self.smallest_face_containing(std::slice::from_ref(x))
    }

    /// The polar `{u : <u, v> >= -1 for all v in P}`.
    pub fn dual(&self) -> Result<Polytope> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        if !self.origin_is_interior() {
            return Err(Error::OriginNotInterior);
        }
        let pts: Vec<RationalVector> =
            self.facets.iter().map(|f| f.normal.to_rational().scale(&f.offset.recip())).collect();
        Polytope::hull(&pts)
    }

    /// Full-dimensional lattice polytope with the origin in its interior whose polar is a lattice polytope.
    pub fn is_reflexive(&self) -> bool {
        self.is_lattice()
            && self.origin_is_interior()
            && self.facets.iter().all(|f| f.offset == Rational::one())
    }

    /// Lattice points in lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        let n = self.ambient;
        if self.vertices.is_empty() {
            return Vec::new();
        }
        let lo: Vec<BigInt> = (0..n)
            .map(|i| self.vertices.iter().map(|v| v.entries()[i].floor().to_integer()).min().expect("nonempty"))
            .collect();
        let hi: Vec<BigInt> = (0..n)
            .map(|i| self.vertices.iter().map(|v| v.entries()[i].ceil().to_integer()).max().expect("nonempty"))
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let x = LatticeVector::new(cur.clone());
            if self.contains_lattice(&x) {
                out.push(x);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..n].clone_from_slice(&lo[i + 1..n]);
                    break;
                }
            }
        }
    }

    pub fn relative_interior_lattice_points(&self) -> Vec<LatticeVector> {
        self.lattice_points().into_iter().filter(|p| self.relative_interior_contains(&p.to_rational())).collect()
    }

    pub fn boundary_lattice_points(&self) -> Vec<LatticeVector> {
        self.lattice_points().into_iter().filter(|p| !self.relative_interior_contains(&p.to_rational())).collect()
    }

    pub fn minkowski(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.checked_add(b)?);
            }
        }
        Polytope::hull(&pts)
    }

    /// The image under a linear map.
    pub fn image(&self, map: &LatticeMatrix) -> Result<Polytope> {
        let pts: Vec<RationalVector> =
            self.vertices.iter().map(|v| map.apply_rational(v)).collect::<Result<_>>()?;
        Polytope::hull(&pts)
    }

    pub fn translate(&self, t: &RationalVector) -> Result<Polytope> {
        let pts: Vec<RationalVector> = self.vertices.iter().map(|v| v.checked_add(t)).collect::<Result<_>>()?;
        Polytope::hull(&pts)
    }

    pub fn scale(&self, k: &Rational) -> Result<Polytope> {
        let pts: Vec<RationalVector> = self.vertices.iter().map(|v| v.scale(k)).collect();
        Polytope::hull(&pts)
    }

    /// `-min <v, x>` over the polytope.
    pub fn support(&self, x: &RationalVector) -> Result<Rational> {
        if x.dim() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: x.dim() });
        }
        Ok(-self.vertices.iter().map(|v| v.dot(x).expect("same dim")).min().expect("nonempty"))
    }

    /// Normalized volume `dim! * vol` relative to the lattice of the affine hull, for full-dimensional polytopes.
    pub fn normalized_volume(&self) -> Result<Rational> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let pulled = self.vertices[0].clone();
        let mut total = Rational::zero();
        for (i, f) in self.facets.iter().enumerate() {
            let h = f.slack(&pulled);
            if h.is_zero() {
                continue;
            }
            let face = self.face_polytope(&Face { dim: self.ambient - 1, vertices: self.incidence[i].clone() });
            total += h * facet_volume(&face)?;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson { dim: self.ambient, vertices: self.vertices.clone() }
    }

    pub fn from_json(j: &PolytopeJson) -> Result<Polytope> {
        if j.vertices.iter().any(|v| v.dim() != j.dim) {
            return Err(Error::Parse(format!("vertices must have {} coordinates", j.dim)));
        }
        Polytope::hull(&j.vertices)
    }
}

/// Normalized volume of a lower-dimensional polytope in the lattice of its affine hull.
fn facet_volume(face: &Polytope) -> Result<Rational> {
    let d = face.dim();
    if d == 0 {
        return Ok(Rational::one());
    }
    // Project onto a lattice basis of the hyperplane direction.
    let dirs: Vec<LatticeVector> = face.equation_rows.iter().map(|r| LatticeVector::new(r.entries()[1..].to_vec())).collect();
    let basis = crate::exactnum::integer_kernel(&dirs, face.ambient);
    let base = face.vertices[0].clone();
    let coords: Vec<RationalVector> = face
        .vertices
        .iter()
        .map(|v| lattice_coordinates(&v.checked_sub(&base).expect("same dim"), &basis))
        .collect();
    Polytope::hull(&coords)?.normalized_volume()
}

/// Coordinates of `x` in a basis of a saturated sublattice containing it.
fn lattice_coordinates(x: &RationalVector, basis: &[LatticeVector]) -> RationalVector {
    let n = x.dim();
    let a: Vec<Vec<Rational>> = (0..n).map(|i| basis.iter().map(|b| to_rational(&b.entries()[i])).collect()).collect();
    let sol = crate::exactnum::solve_rational(&a, x.entries(), basis.len()).expect("x lies in the span");
    RationalVector::new(sol)
}

/// Serialized form: `{"dim": n, "vertices": [[...], ...]}`; coordinates are integers or `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<RationalVector>,
}

/// Integer coordinates on the saturated affine lattice through a set of lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChart {
    origin: LatticeVector,
    basis: Vec<LatticeVector>,
}

impl AffineChart {
    /// The chart based at the lexicographically smallest point.
    pub fn new(points: &[LatticeVector]) -> Result<AffineChart> {
        let origin = points.iter().min().ok_or(Error::Empty)?.clone();
        let n = origin.dim();
        let diffs: Vec<LatticeVector> = points.iter().map(|p| p.checked_sub(&origin)).collect::<Result<_>>()?;
        let normals = integer_kernel(&diffs, n);
        let basis = if normals.is_empty() {
            (0..n).map(|i| LatticeVector::unit(n, i)).collect()
        } else {
            integer_kernel(&normals, n)
        };
        Ok(AffineChart { origin, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn origin(&self) -> &LatticeVector {
        &self.origin
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.basis
    }

    /// Coordinates of `p`, or `None` if it is off the affine lattice.
    pub fn coordinates(&self, p: &LatticeVector) -> Option<LatticeVector> {
        let d = p.checked_sub(&self.origin).ok()?;
        let n = d.dim();
        let a: Vec<Vec<Rational>> =
            (0..n).map(|i| self.basis.iter().map(|b| to_rational(&b.entries()[i])).collect()).collect();
        let rhs: Vec<Rational> = d.entries().iter().map(to_rational).collect();
        let c = RationalVector::new(solve_rational(&a, &rhs, self.basis.len())?);
        let c = c.to_lattice()?;
        (self.point(&c) == *p).then_some(c)
    }

    pub fn point(&self, c: &LatticeVector) -> LatticeVector {
        let mut x = self.origin.clone();
        for (k, b) in c.entries().iter().zip(&self.basis) {
            x = &x + &b.scale(k);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, qi};
    use crate::lv;

    #[test]
    fn chart_of_a_tilted_triangle() {
        let pts = [lv![-1, 3, -1, -1], lv![-1, -1, 3, -1], lv![-1, -1, -1, 3]];
        let chart = AffineChart::new(&pts).unwrap();
        assert_eq!(chart.dim(), 2);
        for p in &pts {
            let c = chart.coordinates(p).unwrap();
            assert_eq!(chart.point(&c), *p);
        }
        assert!(chart.coordinates(&lv![-1, 1, 0, 0]).is_some());
        assert!(chart.coordinates(&lv![0, 0, 0, 0]).is_none());
    }

    fn cube() -> Polytope {
        let mut pts = Vec::new();
        for a in [-1, 1] {
            for b in [-1, 1] {
                for c in [-1, 1] {
                    pts.push(lv![a, b, c]);
                }
            }
        }
        pts.push(lv![0, 0, 0]);
        pts.push(lv![1, 0, 0]);
        Polytope::hull_lattice(&pts).unwrap()
    }

    #[test]
    fn cube_faces() {
        let c = cube();
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.facets().len(), 6);
        assert_eq!(c.faces(1).len(), 12);
        assert_eq!(c.face_lattice().len(), 8 + 12 + 6 + 1);
        assert_eq!(c.lattice_points().len(), 27);
        assert!(c.is_reflexive());
        let d = c.dual().unwrap();
        assert_eq!(d.vertices().len(), 6);
        assert_eq!(d.dual().unwrap(), c);
        assert_eq!(c.normalized_volume().unwrap(), qi(48));
    }

    #[test]
    fn lower_dimensional_hull() {
        let p = Polytope::hull_lattice(&[lv![0, 0, 1], lv![2, 0, 1], lv![0, 2, 1], lv![1, 1, 1]]).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.facets().len(), 3);
        assert_eq!(p.lattice_points().len(), 6);
        assert_eq!(p.relative_interior_lattice_points().len(), 0);
        assert!(matches!(p.dual(), Err(Error::NotFullDimensional)));
    }

    #[test]
    fn halfspaces_and_rational_vertices() {
        let p = Polytope::from_halfspaces(
            1,
            &[(RationalVector::new(vec![qi(2)]), qi(1)), (RationalVector::new(vec![qi(-1)]), qi(3))],
        )
        .unwrap();
        assert_eq!(p.vertices(), &[RationalVector::new(vec![q(-1, 2)]), RationalVector::new(vec![qi(3)])]);
        assert!(!p.is_lattice());
        assert!(matches!(
            Polytope::from_halfspaces(1, &[(RationalVector::new(vec![qi(1)]), qi(1))]),
            Err(Error::Unbounded)
        ));
    }

    #[test]
    fn locate_on_faces() {
        let c = cube();
        let f = c.locate(&RationalVector::new(vec![qi(1), q(1, 2), qi(1)])).unwrap();
        assert_eq!(f.dim, 1);
        assert!(c.locate(&RationalVector::new(vec![qi(2), qi(0), qi(0)])).is_none());
        assert_eq!(c.locate(&RationalVector::zero(3)).unwrap().dim, 3);
    }
}
