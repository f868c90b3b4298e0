//! Regular subdivisions from height lifts, pulling refinements and MPCP certificates.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    fmt_rational, lcm_all, solve_rational, to_rational, LatticeVector, Rational, RationalVector,
};
use crate::fan::{Cone, Fan};
use crate::hull::facets_of_cone;
use crate::plconvex::PlConvexFunction;
use crate::polytope::{Face, Polytope};

/// A maximal cell: the lattice points where the lower hull touches the lift, and the affine
/// function `x -> <covector, x> + constant` whose graph contains that lower face.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub points: Vec<usize>,
    pub covector: RationalVector,
    pub constant: Rational,
}

impl Cell {
    pub fn value(&self, x: &RationalVector) -> Rational {
        self.covector.dot(x).expect("same dimension") + &self.constant
    }
}

/// The lower hull of lattice points of a polytope lifted to rational heights.
#[derive(Clone, Debug)]
pub struct LiftedSubdivision {
    base: Polytope,
    points: Vec<LatticeVector>,
    heights: Vec<Rational>,
    cells: Vec<Cell>,
}

/// One step of a pulling refinement.
#[derive(Clone, Debug, Serialize)]
pub struct PerturbationRound {
    pub point: LatticeVector,
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: Rational,
    pub cells_before: usize,
    pub cells_after: usize,
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

/// Serialized form of a subdivision.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub base: crate::polytope::PolytopeJson,
    pub heights: Vec<(LatticeVector, String)>,
    pub cells: Vec<Vec<usize>>,
}

fn affine_solve(points: &[&LatticeVector], values: &[Rational], n: usize) -> Option<(RationalVector, Rational)> {
    let a: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut r: Vec<Rational> = p.entries().iter().map(to_rational).collect();
            r.push(Rational::one());
            r
        })
        .collect();
    let x = solve_rational(&a, values, n + 1)?;
    let (cov, cst) = x.split_at(n);
    Some((RationalVector::new(cov.to_vec()), cst[0].clone()))
}

fn lifted_row(p: &LatticeVector, h: &Rational) -> LatticeVector {
    let d = h.denom().clone();
    let mut e = vec![d.clone()];
    e.extend(p.entries().iter().map(|x| x * &d));
    e.push(h.numer().clone());
    LatticeVector::new(e)
}

/// Lower facets of the lifted point set, as tight index sets and affine functions.
fn lower_facets(points: &[LatticeVector], heights: &[Rational], idx: &[usize], n: usize) -> Vec<Cell> {
    let mut rows: Vec<LatticeVector> = idx.iter().map(|&i| lifted_row(&points[i], &heights[i])).collect();
    rows.push(LatticeVector::unit(n + 2, n + 1));
    let h = facets_of_cone(&rows, n + 2);
    let mut cells = Vec::new();
    for ineq in &h.inequalities {
        let b = &ineq.entries()[n + 1];
        if !b.is_positive() {
            continue;
        }
        let b = to_rational(b);
        let c0 = to_rational(&ineq.entries()[0]);
        let covector = RationalVector::new(ineq.entries()[1..=n].iter().map(|a| -to_rational(a) / &b).collect());
        let constant = -c0 / &b;
        let pts: Vec<usize> =
            idx.iter().copied().zip(&rows).filter(|(_, r)| ineq.dot_unchecked(r).is_zero()).map(|(i, _)| i).collect();
        cells.push(Cell { points: pts, covector, constant });
    }
    cells
}

impl LiftedSubdivision {
    /// Lower hull of `(p, h)` for the given lattice points of `base`. The points must include every
    /// vertex of `base`; other lattice points may be omitted.
    pub fn lower_hull(base: &Polytope, heights: &[(LatticeVector, Rational)]) -> Result<LiftedSubdivision> {
        let n = base.ambient_dim();
        let mut map: BTreeMap<LatticeVector, Rational> = BTreeMap::new();
        for (p, h) in heights {
            if p.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
            }
            if !base.contains_lattice(p) {
                return Err(Error::NotInPolytope(p.to_string()));
            }
            if map.insert(p.clone(), h.clone()).is_some_and(|old| old != *h) {
                return Err(Error::Parse(format!("two heights given for {p}")));
            }
        }
        let verts = base.lattice_vertices().ok_or_else(|| Error::Parse("base must be a lattice polytope".into()))?;
        if let Some(v) = verts.iter().find(|v| !map.contains_key(v)) {
            return Err(Error::Parse(format!("no height at vertex {v}")));
        }
        let (points, heights): (Vec<_>, Vec<_>) = map.into_iter().unzip();
        let cells = Self::star_cells(base, &points, &heights)
            .unwrap_or_else(|| lower_facets(&points, &heights, &(0..points.len()).collect::<Vec<_>>(), n));
        let mut sub = LiftedSubdivision { base: base.clone(), points, heights, cells };
        sub.cells.sort();
        Ok(sub)
    }

    /// Facet-by-facet lower hull for lifts that vanish at an interior origin; `None` if the cones
    /// over boundary cells do not give a convex function.
    fn star_cells(base: &Polytope, points: &[LatticeVector], heights: &[Rational]) -> Option<Vec<Cell>> {
        let n = base.ambient_dim();
        if !base.origin_is_interior() {
            return None;
        }
        let o = points.iter().position(LatticeVector::is_zero)?;
        if !heights[o].is_zero() {
            return None;
        }
        let mut covectors: BTreeSet<RationalVector> = BTreeSet::new();
        for f in base.facets() {
            let on: Vec<usize> =
                (0..points.len()).filter(|&i| f.slack(&points[i].to_rational()).is_zero()).collect();
            for cell in lower_facets(points, heights, &on, n) {
                let pts: Vec<&LatticeVector> = cell.points.iter().map(|&i| &points[i]).collect();
                let vals: Vec<Rational> = cell.points.iter().map(|&i| heights[i].clone()).collect();
                let a: Vec<Vec<Rational>> =
                    pts.iter().map(|p| p.entries().iter().map(to_rational).collect()).collect();
                let lam = RationalVector::new(solve_rational(&a, &vals, n)?);
                covectors.insert(lam);
            }
        }
        let mut cells = Vec::new();
        for lam in covectors {
            let mut tight = Vec::new();
            for (i, (p, h)) in points.iter().zip(heights).enumerate() {
                let v = lam.dot_lattice_unchecked(p);
                if v > *h {
                    return None;
                }
                if v == *h {
                    tight.push(i);
                }
            }
            cells.push(Cell { points: tight, covector: lam, constant: Rational::zero() });
        }
        Some(cells)
    }

    pub fn base(&self) -> &Polytope {
        &self.base
    }

    /// Lifted points in lexicographic order.
    pub fn points(&self) -> &[LatticeVector] {
        &self.points
    }

    pub fn heights(&self) -> &[Rational] {
        &self.heights
    }

    pub fn height_of(&self, p: &LatticeVector) -> Option<&Rational> {
        self.points.binary_search(p).ok().map(|i| &self.heights[i])
    }

    pub fn point_index(&self, p: &LatticeVector) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_points(&self, cell: &Cell) -> Vec<LatticeVector> {
        cell.points.iter().map(|&i| self.points[i].clone()).collect()
    }

    pub fn cell_polytope(&self, cell: &Cell) -> Polytope {
        Polytope::hull_lattice(&self.cell_points(cell)).expect("nonempty cell")
    }

    /// Indices of points that are vertices of the cell.
    pub fn cell_vertices(&self, cell: &Cell) -> Vec<usize> {
        let poly = self.cell_polytope(cell);
        cell.points.iter().copied().filter(|&i| poly.vertex_index(&self.points[i].to_rational()).is_some()).collect()
    }

    /// Points lying strictly above the lower hull.
    pub fn non_tight_points(&self) -> Vec<LatticeVector> {
        let tight: BTreeSet<usize> = self.cells.iter().flat_map(|c| c.points.iter().copied()).collect();
        (0..self.points.len()).filter(|i| !tight.contains(i)).map(|i| self.points[i].clone()).collect()
    }

    /// Every cell contains the interior origin with value zero, so the function extends to all of
    /// space by homogeneity.
    pub fn is_star_shaped(&self) -> bool {
        self.base.origin_is_interior() && self.cells.iter().all(|c| c.constant.is_zero())
    }

    /// The induced function: the upper envelope of the cells' affine functions.
    pub fn evaluate(&self, x: &RationalVector) -> Result<Rational> {
        if x.dim() != self.base.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.base.ambient_dim(), found: x.dim() });
        }
        if !self.is_star_shaped() && !self.base.contains(x) {
            return Err(Error::NotGloballyDefined);
        }
        Ok(self.cells.iter().map(|c| c.value(x)).max().expect("at least one cell"))
    }

    pub(crate) fn global_pieces(&self) -> Result<Vec<(Cone, RationalVector)>> {
        if !self.is_star_shaped() {
            return Err(Error::NotGloballyDefined);
        }
        let n = self.base.ambient_dim();
        self.cells
            .iter()
            .map(|c| {
                let gens: Vec<LatticeVector> =
                    c.points.iter().map(|&i| &self.points[i]).filter(|p| !p.is_zero()).cloned().collect();
                Ok((Cone::from_generators(n, &gens, &[])?, c.covector.clone()))
            })
            .collect()
    }

    pub fn function(&self) -> PlConvexFunction {
        PlConvexFunction::from_lifted(self.clone())
    }

    /// Cells of the subdivision induced on a face of the base (given by its points), as sorted
    /// point-index sets of full dimension in the face.
    pub fn induced_on_face(&self, face: &Polytope) -> Vec<Vec<usize>> {
        let d = face.dim();
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &self.cells {
            let pts: Vec<usize> =
                c.points.iter().copied().filter(|&i| face.contains_lattice(&self.points[i])).collect();
            if pts.len() > d {
                let poly = Polytope::hull_lattice(&pts.iter().map(|&i| self.points[i].clone()).collect::<Vec<_>>())
                    .expect("nonempty");
                if poly.dim() == d {
                    out.insert(pts);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Cones over the cells restricted to the boundary, closed under faces.
    pub fn fan(&self) -> Result<Fan> {
        let n = self.base.ambient_dim();
        let cones: Vec<Cone> = self
            .cells
            .iter()
            .map(|c| {
                let gens: Vec<LatticeVector> =
                    c.points.iter().map(|&i| &self.points[i]).filter(|p| !p.is_zero()).cloned().collect();
                Cone::from_generators(n, &gens, &[])
            })
            .collect::<Result<_>>()?;
        Fan::from_cones(n, cones)
    }

    /// Refines by repeatedly lowering single heights (pulling). First every point in `required`
    /// becomes a vertex; then, if `simplicial`, cells are pulled at vertices until all are simplices.
    /// The origin is never pulled when the subdivision is star-shaped.
    pub fn refine_by_pulling(
        &self,
        required: &[LatticeVector],
        simplicial: bool,
    ) -> Result<(LiftedSubdivision, Vec<PerturbationRound>)> {
        let mut work = Work::new(self)?;
        let req: BTreeSet<usize> = required
            .iter()
            .map(|p| self.point_index(p).ok_or_else(|| Error::NotInPolytope(p.to_string())))
            .collect::<Result<_>>()?;
        let fixed = if self.is_star_shaped() { self.points.iter().position(LatticeVector::is_zero) } else { None };
        let mut rounds = Vec::new();
        loop {
            let vertices: BTreeSet<usize> = work.cells.iter().flat_map(|c| c.vertices.iter().copied()).collect();
            let target = match req.iter().find(|i| !vertices.contains(i)) {
                Some(&i) => Some(i),
                None if simplicial => work.pull_candidate(fixed),
                None => None,
            };
            let Some(l) = target else { break };
            let before = work.cells.len();
            let eps = work.pull(l)?;
            rounds.push(PerturbationRound {
                point: self.points[l].clone(),
                epsilon: eps,
                cells_before: before,
                cells_after: work.cells.len(),
            });
        }
        Ok((work.finish(), rounds))
    }

    /// Multiplies all heights by `k > 0`.
    pub fn scaled(&self, k: &Rational) -> LiftedSubdivision {
        LiftedSubdivision {
            base: self.base.clone(),
            points: self.points.clone(),
            heights: self.heights.iter().map(|h| h * k).collect(),
            cells: self
                .cells
                .iter()
                .map(|c| Cell { points: c.points.clone(), covector: c.covector.scale(k), constant: &c.constant * k })
                .collect(),
        }
    }

    /// Checks that every cell function lies below all heights with equality exactly on the cell,
    /// and that the cells cover the base.
    pub fn verify_regular(&self) -> bool {
        for c in &self.cells {
            for (i, (p, h)) in self.points.iter().zip(&self.heights).enumerate() {
                let v = c.value(&p.to_rational());
                let inside = c.points.binary_search(&i).is_ok();
                if (inside && v != *h) || (!inside && v >= *h) {
                    return false;
                }
            }
        }
        if self.base.is_full_dimensional() {
            let vol: Rational = self
                .cells
                .iter()
                .map(|c| self.cell_polytope(c).normalized_volume().expect("full-dimensional cell"))
                .sum();
            vol == self.base.normalized_volume().expect("full-dimensional base")
        } else {
            true
        }
    }

    pub fn to_json(&self) -> SubdivisionJson {
        SubdivisionJson {
            base: self.base.to_json(),
            heights: self.points.iter().cloned().zip(self.heights.iter().map(fmt_rational)).collect(),
            cells: self.cells.iter().map(|c| c.points.clone()).collect(),
        }
    }
}

struct WorkCell {
    points: Vec<usize>,
    covector: RationalVector,
    constant: Rational,
    poly: Polytope,
    vertices: Vec<usize>,
}

struct Work<'a> {
    sub: &'a LiftedSubdivision,
    heights: Vec<Rational>,
    cells: Vec<WorkCell>,
}

impl<'a> Work<'a> {
    fn new(sub: &'a LiftedSubdivision) -> Result<Self> {
        let cells = sub.cells.iter().map(|c| Self::make_cell(sub, c.points.clone(), c.covector.clone(), c.constant.clone())).collect();
        Ok(Work { sub, heights: sub.heights.clone(), cells })
    }

    fn make_cell(sub: &LiftedSubdivision, points: Vec<usize>, covector: RationalVector, constant: Rational) -> WorkCell {
        let poly = Polytope::hull_lattice(&points.iter().map(|&i| sub.points[i].clone()).collect::<Vec<_>>())
            .expect("nonempty");
        let vertices =
            points.iter().copied().filter(|&i| poly.vertex_index(&sub.points[i].to_rational()).is_some()).collect();
        WorkCell { points, covector, constant, poly, vertices }
    }

    fn value(c: &WorkCell, p: &LatticeVector) -> Rational {
        c.covector.dot_lattice_unchecked(p) + &c.constant
    }

    /// A vertex to pull in the first non-simplicial cell: the first one over which the cell is not a pyramid.
    fn pull_candidate(&self, fixed: Option<usize>) -> Option<usize> {
        for c in &self.cells {
            if c.vertices.len() == c.poly.dim() + 1 {
                continue;
            }
            for &v in &c.vertices {
                if Some(v) == fixed {
                    continue;
                }
                let x = self.sub.points[v].to_rational();
                let away = c.poly.facets().iter().filter(|f| f.slack(&x).is_positive()).count();
                if away > 1 {
                    return Some(v);
                }
            }
        }
        None
    }

    /// Lowers the height at point `l` below the current hull and splits the cells containing it.
    fn pull(&mut self, l: usize) -> Result<Rational> {
        let pts = &self.sub.points;
        let n = self.sub.base.ambient_dim();
        let x = pts[l].to_rational();
        let affected: Vec<usize> = (0..self.cells.len()).filter(|&i| self.cells[i].poly.contains(&x)).collect();
        let current = Self::value(&self.cells[affected[0]], &pts[l]);
        let mut new_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &ci in &affected {
            let c = &self.cells[ci];
            for f in c.poly.facets() {
                if f.slack(&x).is_zero() {
                    continue;
                }
                let mut s: Vec<usize> =
                    c.points.iter().copied().filter(|&i| f.slack(&pts[i].to_rational()).is_zero()).collect();
                s.push(l);
                s.sort();
                new_sets.insert(s);
            }
        }
        let mut eps = Rational::new(BigInt::one(), BigInt::from(4));
        for _ in 0..200 {
            let h_l = &current - &eps;
            let mut heights = self.heights.clone();
            heights[l] = h_l.clone();
            if let Some(new_cells) = self.certify(&affected, &new_sets, &heights, l, n) {
                let mut cells: Vec<WorkCell> = std::mem::take(&mut self.cells)
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !affected.contains(i))
                    .map(|(_, c)| c)
                    .collect();
                cells.extend(new_cells);
                cells.sort_by(|a, b| a.points.cmp(&b.points));
                self.cells = cells;
                self.heights = heights;
                return Ok(eps);
            }
            eps /= Rational::from_integer(BigInt::from(2));
        }
        Err(Error::NotConvex(format!("no admissible perturbation at {}", pts[l])))
    }

    fn certify(
        &self,
        affected: &[usize],
        new_sets: &BTreeSet<Vec<usize>>,
        heights: &[Rational],
        l: usize,
        n: usize,
    ) -> Option<Vec<WorkCell>> {
        let pts = &self.sub.points;
        for (i, c) in self.cells.iter().enumerate() {
            if !affected.contains(&i) && Self::value(c, &pts[l]) >= heights[l] {
                return None;
            }
        }
        let mut out = Vec::with_capacity(new_sets.len());
        for s in new_sets {
            let p: Vec<&LatticeVector> = s.iter().map(|&i| &pts[i]).collect();
            let vals: Vec<Rational> = s.iter().map(|&i| heights[i].clone()).collect();
            let (cov, cst) = affine_solve(&p, &vals, n)?;
            for (i, q) in pts.iter().enumerate() {
                let v = cov.dot_lattice_unchecked(q) + &cst;
                let inside = s.binary_search(&i).is_ok();
                if (inside && v != heights[i]) || (!inside && v >= heights[i]) {
                    return None;
                }
            }
            out.push(Self::make_cell(self.sub, s.clone(), cov, cst));
        }
        Some(out)
    }

    fn finish(self) -> LiftedSubdivision {
        let mut cells: Vec<Cell> = self
            .cells
            .into_iter()
            .map(|c| Cell { points: c.points, covector: c.covector, constant: c.constant })
            .collect();
        cells.sort();
        LiftedSubdivision { base: self.sub.base.clone(), points: self.sub.points.clone(), heights: self.heights, cells }
    }
}

/// Result of the perturb-and-rescale construction.
#[derive(Clone, Debug)]
pub struct MpcpCertificate {
    /// The rescaled subdivision; its cell covectors are integral.
    pub subdivision: LiftedSubdivision,
    pub scale: BigInt,
    pub rounds: Vec<PerturbationRound>,
}

/// Outcome of the MPCP checks.
#[derive(Clone, Debug, Serialize)]
pub struct MpcpChecks {
    pub strictly_convex: bool,
    pub crepant: bool,
    pub all_boundary_points_are_rays: bool,
    pub simplicial: bool,
    pub lattice_empty_simplices: bool,
    pub integral: bool,
    /// Largest index of the sublattice spanned by the rays of a maximal cone.
    pub max_multiplicity: u64,
}

impl MpcpChecks {
    pub fn passed(&self) -> bool {
        self.strictly_convex
            && self.crepant
            && self.all_boundary_points_are_rays
            && self.simplicial
            && self.lattice_empty_simplices
            && self.integral
    }
}

impl MpcpCertificate {
    pub fn function(&self) -> PlConvexFunction {
        self.subdivision.function()
    }

    pub fn fan(&self) -> Result<Fan> {
        self.subdivision.fan()
    }

    pub fn check(&self) -> MpcpChecks {
        let s = &self.subdivision;
        let base = s.base();
        let boundary = base.boundary_lattice_points();
        let mut rays: BTreeSet<usize> = BTreeSet::new();
        let mut simplicial = true;
        let mut empty = true;
        let mut crepant = true;
        let mut max_mult = 0u64;
        for c in s.cells() {
            let verts = s.cell_vertices(c);
            rays.extend(verts.iter().copied());
            if verts.len() != base.dim() + 1 {
                simplicial = false;
            }
            if verts.len() != c.points.len() {
                empty = false;
            }
            let bpts: Vec<RationalVector> =
                c.points.iter().map(|&i| s.points()[i].to_rational()).filter(|p| !p.is_zero()).collect();
            if base.smallest_face_containing(&bpts).is_none_or(|f| f.dim >= base.dim()) {
                crepant = false;
            }
            let gens: Vec<LatticeVector> =
                verts.iter().map(|&i| s.points()[i].clone()).filter(|p| !p.is_zero()).collect();
            if let Ok(cone) = Cone::from_generators(base.ambient_dim(), &gens, &[]) {
                if let Some(m) = cone.multiplicity() {
                    max_mult = max_mult.max(num_traits::ToPrimitive::to_u64(&m).unwrap_or(u64::MAX));
                }
            }
        }
        let all_rays = boundary.iter().all(|p| s.point_index(p).is_some_and(|i| rays.contains(&i)));
        let integral = s.cells().iter().all(|c| c.covector.is_integral() && c.constant.is_integer());
        MpcpChecks {
            strictly_convex: s.is_star_shaped() && s.verify_regular(),
            crepant,
            all_boundary_points_are_rays: all_rays,
            simplicial,
            lattice_empty_simplices: empty,
            integral,
            max_multiplicity: max_mult,
        }
    }
}

/// Builds an MPCP function on a reflexive polytope from a seed that is convex on a crepant
/// partial subdivision of its face fan.
pub fn gkz_mpcp(delta: &Polytope, seed: &PlConvexFunction) -> Result<MpcpCertificate> {
    if !delta.is_lattice() {
        return Err(Error::Parse("base must be a lattice polytope".into()));
    }
    if !delta.origin_is_interior() {
        return Err(Error::OriginNotInterior);
    }
    let pts = delta.lattice_points();
    let heights: Vec<(LatticeVector, Rational)> =
        pts.iter().map(|p| Ok((p.clone(), seed.evaluate_lattice(p)?))).collect::<Result<_>>()?;
    let start = LiftedSubdivision::lower_hull(delta, &heights)?;
    if !start.is_star_shaped() {
        return Err(Error::SeedNotCrepant("lower hull cells do not all contain the origin".into()));
    }
    for c in start.cells() {
        let bpts: Vec<RationalVector> =
            c.points.iter().map(|&i| start.points()[i].to_rational()).filter(|p| !p.is_zero()).collect();
        if delta.smallest_face_containing(&bpts).is_none_or(|f| f.dim >= delta.dim()) {
            return Err(Error::SeedNotCrepant(format!("cell {:?} is not in a proper face", c.points)));
        }
    }
    let boundary = delta.boundary_lattice_points();
    let (refined, rounds) = start.refine_by_pulling(&boundary, true)?;
    let scale = lcm_all(refined.cells().iter().map(|c| c.covector.denominator_lcm()).collect::<Vec<_>>().iter());
    let subdivision = refined.scaled(&to_rational(&scale));
    Ok(MpcpCertificate { subdivision, scale, rounds })
}

/// Whether every cone of `fan` is the cone over lattice points in a single proper face of `delta`.
pub fn is_crepant(fan: &Fan, delta: &Polytope) -> bool {
    fan.maximal_cones().iter().all(|c| {
        if !c.is_pointed() {
            return false;
        }
        let mut pts = Vec::new();
        for r in c.rays() {
            let Some(t) = boundary_scale(delta, r) else { return false };
            let p = r.to_rational().scale(&t);
            if !p.is_integral() {
                return false;
            }
            pts.push(p);
        }
        delta.smallest_face_containing(&pts).is_some_and(|f| f.dim < delta.dim())
    })
}

/// The `t > 0` with `t r` on the boundary of a polytope with interior origin.
fn boundary_scale(delta: &Polytope, r: &LatticeVector) -> Option<Rational> {
    delta
        .facets()
        .iter()
        .filter_map(|f| {
            let a = to_rational(&f.normal.dot_unchecked(r));
            a.is_negative().then(|| &f.offset / -a)
        })
        .min()
}

/// Cones of `refined` contained in some cone of `sub`.
pub fn induced_subfan(refined: &Fan, sub: &Fan) -> Result<Fan> {
    let max = sub.maximal_cones();
    let cones: Vec<Cone> =
        refined.cones().iter().filter(|c| max.iter().any(|m| m.contains_cone(c))).cloned().collect();
    Fan::from_cones(refined.ambient_dim(), cones)
}

/// Cones over the cells that a subdivision induces on the given faces of its base.
pub fn induced_fan_on_faces(sub: &LiftedSubdivision, faces: &[Face]) -> Result<Fan> {
    let base = sub.base();
    let n = base.ambient_dim();
    let mut cones = Vec::new();
    for f in faces {
        let poly = base.face_polytope(f);
        for cell in sub.induced_on_face(&poly) {
            let gens: Vec<LatticeVector> = cell.iter().map(|&i| sub.points()[i].clone()).collect();
            cones.push(Cone::from_generators(n, &gens, &[])?);
        }
    }
    Fan::from_cones(n, cones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qi;
    use crate::lv;

    #[test]
    fn segment_with_raised_midpoint() {
        let base = Polytope::hull_lattice(&[lv![0], lv![2]]).unwrap();
        let s = LiftedSubdivision::lower_hull(&base, &[(lv![0], qi(0)), (lv![1], qi(1)), (lv![2], qi(0))]).unwrap();
        assert_eq!(s.cells().len(), 1);
        assert_eq!(s.cells()[0].points, vec![0, 2]);
        assert_eq!(s.non_tight_points(), vec![lv![1]]);
        assert_eq!(s.evaluate(&lv![1].to_rational()).unwrap(), qi(0));
    }

    #[test]
    fn flat_square_is_one_cell() {
        let base = Polytope::hull_lattice(&[lv![0, 0], lv![1, 0], lv![0, 1], lv![1, 1]]).unwrap();
        let h: Vec<_> = base.lattice_points().into_iter().map(|p| (p, qi(0))).collect();
        let s = LiftedSubdivision::lower_hull(&base, &h).unwrap();
        assert_eq!(s.cells().len(), 1);
        assert_eq!(s.cells()[0].points.len(), 4);
    }

    #[test]
    fn reflexive_square_with_midpoint() {
        // the square with vertices (+-1, 0), (0, +-1) scaled: conv((1,1),(1,-1),(-1,1),(-1,-1)) has 4 midpoints
        let delta = Polytope::hull_lattice(&[lv![1, 0], lv![0, 1], lv![-1, 0], lv![0, -1], lv![1, 1]]).unwrap();
        assert!(delta.is_reflexive());
        let seed = PlConvexFunction::from_polytope(&delta.dual().unwrap());
        let cert = gkz_mpcp(&delta, &seed).unwrap();
        assert!(cert.check().passed());
        assert_eq!(cert.fan().unwrap().rays().len(), 5);
        let cube = Polytope::hull_lattice(&[lv![1, 1], lv![1, -1], lv![-1, 1], lv![-1, -1]]).unwrap();
        let cert = gkz_mpcp(&cube, &PlConvexFunction::from_polytope(&cube.dual().unwrap())).unwrap();
        assert_eq!(cert.rounds.len(), 4);
        assert!(cert.check().passed());
        assert_eq!(cert.fan().unwrap().maximal_cones().len(), 8);
    }

    #[test]
    fn star_path_agrees_with_general_hull() {
        let delta = Polytope::hull_lattice(&[lv![1, 1], lv![1, -1], lv![-1, 1], lv![-1, -1]]).unwrap();
        let seed = PlConvexFunction::from_polytope(&delta.dual().unwrap());
        let pts = delta.lattice_points();
        let h: Vec<_> = pts.iter().map(|p| (p.clone(), seed.evaluate_lattice(p).unwrap())).collect();
        let s = LiftedSubdivision::lower_hull(&delta, &h).unwrap();
        let idx: Vec<usize> = (0..s.points().len()).collect();
        let mut general = lower_facets(s.points(), s.heights(), &idx, 2);
        general.sort();
        assert_eq!(s.cells(), &general[..]);
    }
}
