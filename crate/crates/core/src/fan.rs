//! Rational polyhedral cones and fans.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    bareiss_rank, gcd_all, lattice_rows_to_rational, rref, solve_rational, to_rational, LatticeMatrix,
    LatticeVector, Rational, RationalVector,
};
use crate::hull::{facets_of_cone, generators_of_cone};
use crate::polytope::{Face, Polytope};

/// A rational polyhedral cone, stored with both descriptions.
#[derive(Clone)]
pub struct Cone {
    ambient: usize,
    rays: Vec<LatticeVector>,
    lineality: Vec<LatticeVector>,
    dim: usize,
    inequalities: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
}

impl PartialEq for Cone {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.rays == o.rays && self.lineality == o.lineality
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.rays.hash(h);
        self.lineality.hash(h);
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{:?}", self.rays)?;
        if !self.lineality.is_empty() {
            write!(f, "+span{:?}", self.lineality)?;
        }
        Ok(())
    }
}

type ConeKey = (Vec<LatticeVector>, Vec<LatticeVector>);

/// Canonical basis of a subspace: reduced row echelon form scaled to primitive integer rows.
fn canonical_subspace(vs: &[LatticeVector], ambient: usize) -> Vec<LatticeVector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let (rows, _) = rref(&lattice_rows_to_rational(vs), ambient);
    rows.into_iter()
        .map(|r| RationalVector::new(r).primitive_direction().expect("nonzero row"))
        .collect()
}

/// Orthogonal projection onto the complement of `span(basis)`.
fn project_off(x: &LatticeVector, basis: &[LatticeVector]) -> RationalVector {
    if basis.is_empty() {
        return x.to_rational();
    }
    let gram: Vec<Vec<Rational>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| to_rational(&a.dot_unchecked(b))).collect())
        .collect();
    let rhs: Vec<Rational> = basis.iter().map(|a| to_rational(&a.dot_unchecked(x))).collect();
    let c = solve_rational(&gram, &rhs, basis.len()).expect("basis is independent");
    let mut v = x.to_rational();
    for (ci, b) in c.iter().zip(basis) {
        v = v.checked_sub(&b.to_rational().scale(ci)).expect("same dim");
    }
    v
}

impl Cone {
    /// The cone generated by `generators` plus the linear span of `lineality`.
    pub fn from_generators(
        ambient: usize,
        generators: &[LatticeVector],
        lineality: &[LatticeVector],
    ) -> Result<Cone> {
        for g in generators.iter().chain(lineality) {
            if g.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: g.dim() });
            }
        }
        let mut all: Vec<LatticeVector> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        for l in lineality.iter().filter(|l| !l.is_zero()) {
            all.push(l.clone());
            all.push(-l);
        }
        let h = facets_of_cone(&all, ambient);
        Ok(Self::from_parts(ambient, &all, h.inequalities, h.equations))
    }

    fn from_parts(
        ambient: usize,
        generators: &[LatticeVector],
        inequalities: Vec<LatticeVector>,
        equations: Vec<LatticeVector>,
    ) -> Cone {
        let mut both = inequalities.clone();
        both.extend(equations.iter().cloned());
        let lin_raw = crate::exactnum::integer_kernel(&both, ambient);
        let lineality = canonical_subspace(&lin_raw, ambient);
        let l = lineality.len();
        let mut rays = Vec::new();
        let gens = if l < ambient { generators } else { &[] };
        let target = ambient.saturating_sub(l + 1);
        for g in gens {
            let tight: Vec<&LatticeVector> =
                inequalities.iter().filter(|a| a.dot_unchecked(g).is_zero()).collect();
            if tight.len() == inequalities.len() {
                continue;
            }
            let mut rows: Vec<LatticeVector> = equations.clone();
            rows.extend(tight.into_iter().cloned());
            if rows.len() >= target && bareiss_rank(&rows) == target {
                rays.push(project_off(g, &lineality).primitive_direction().expect("not in lineality"));
            }
        }
        rays.sort();
        rays.dedup();
        let mut span = rays.clone();
        span.extend(lineality.iter().cloned());
        let dim = bareiss_rank(&span);
        Cone { ambient, rays, lineality, dim, inequalities, equations }
    }

    /// `{x : a . x >= 0 for a in inequalities, e . x = 0 for e in equations}`.
    pub fn from_inequalities(
        ambient: usize,
        inequalities: &[LatticeVector],
        equations: &[LatticeVector],
    ) -> Result<Cone> {
        for g in inequalities.iter().chain(equations) {
            if g.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: g.dim() });
            }
        }
        let (rays, lin) = generators_of_cone(inequalities, equations, ambient);
        Self::from_generators(ambient, &rays, &lin)
    }

    pub fn zero(ambient: usize) -> Cone {
        Self::from_generators(ambient, &[], &[]).expect("valid")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Primitive generators of the extreme rays, taken modulo the lineality space.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    pub fn inequalities(&self) -> &[LatticeVector] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() + self.lineality.len() == self.dim
    }

    fn key(&self) -> ConeKey {
        (self.rays.clone(), self.lineality.clone())
    }

    /// Generators including both signs of the lineality basis.
    pub fn all_generators(&self) -> Vec<LatticeVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(-l);
        }
        g
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        x.dim() == self.ambient
            && self.equations.iter().all(|e| x.dot_lattice_unchecked(e).is_zero())
            && self.inequalities.iter().all(|a| !x.dot_lattice_unchecked(a).is_negative())
    }

    pub fn contains_lattice(&self, x: &LatticeVector) -> bool {
        x.dim() == self.ambient
            && self.equations.iter().all(|e| e.dot_unchecked(x).is_zero())
            && self.inequalities.iter().all(|a| !a.dot_unchecked(x).is_negative())
    }

    pub fn relative_interior_contains(&self, x: &RationalVector) -> bool {
        x.dim() == self.ambient
            && self.equations.iter().all(|e| x.dot_lattice_unchecked(e).is_zero())
            && self.inequalities.iter().all(|a| x.dot_lattice_unchecked(a).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.all_generators().iter().all(|g| self.contains_lattice(g))
    }

    /// The sum of the rays, a point of the relative interior.
    pub fn interior_point(&self) -> LatticeVector {
        self.rays.iter().fold(LatticeVector::zero(self.ambient), |a, r| &a + r)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        let mut ineq = self.inequalities.clone();
        ineq.extend(other.inequalities.iter().cloned());
        let mut eq = self.equations.clone();
        eq.extend(other.equations.iter().cloned());
        Self::from_inequalities(self.ambient, &ineq, &eq)
    }

    pub fn image(&self, map: &LatticeMatrix) -> Result<Cone> {
        let rays: Vec<LatticeVector> = self.rays.iter().map(|r| map.apply(r)).collect::<Result<_>>()?;
        let lin: Vec<LatticeVector> = self.lineality.iter().map(|r| map.apply(r)).collect::<Result<_>>()?;
        Self::from_generators(map.nrows(), &rays, &lin)
    }

    /// `{x : map x in self}`.
    pub fn preimage(&self, map: &LatticeMatrix) -> Result<Cone> {
        if map.nrows() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: map.nrows() });
        }
        let t = map.transpose();
        let ineq: Vec<LatticeVector> = self.inequalities.iter().map(|a| t.apply(a)).collect::<Result<_>>()?;
        let eq: Vec<LatticeVector> = self.equations.iter().map(|a| t.apply(a)).collect::<Result<_>>()?;
        let ineq: Vec<LatticeVector> = ineq.into_iter().filter(|a| !a.is_zero()).collect();
        let eq: Vec<LatticeVector> = eq.into_iter().filter(|a| !a.is_zero()).collect();
        Self::from_inequalities(map.ncols(), &ineq, &eq)
    }

    /// The face cut out by the inequalities with the given indices.
    fn face_from_tight(&self, ray_idx: &[usize]) -> Cone {
        let rays: Vec<LatticeVector> = ray_idx.iter().map(|&i| self.rays[i].clone()).collect();
        let mut equations = self.equations.clone();
        let mut inequalities = Vec::new();
        for a in &self.inequalities {
            if rays.iter().all(|r| a.dot_unchecked(r).is_zero()) {
                equations.push(a.clone());
            } else {
                inequalities.push(a.clone());
            }
        }
        let mut span = rays.clone();
        span.extend(self.lineality.iter().cloned());
        let dim = bareiss_rank(&span);
        Cone { ambient: self.ambient, rays, lineality: self.lineality.clone(), dim, inequalities, equations }
    }

    /// All faces, the cone itself included.
    pub fn faces(&self) -> Vec<Cone> {
        let tight: Vec<Vec<usize>> = self
            .inequalities
            .iter()
            .map(|a| (0..self.rays.len()).filter(|&i| a.dot_unchecked(&self.rays[i]).is_zero()).collect())
            .collect();
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(all.clone());
        let mut queue = vec![all];
        while let Some(f) = queue.pop() {
            for t in &tight {
                let g: Vec<usize> = f.iter().copied().filter(|i| t.binary_search(i).is_ok()).collect();
                if seen.insert(g.clone()) {
                    queue.push(g);
                }
            }
        }
        seen.into_iter().map(|s| self.face_from_tight(&s)).collect()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        let gens = self.all_generators();
        let idx: Vec<usize> = (0..other.rays.len())
            .filter(|&i| {
                other
                    .inequalities
                    .iter()
                    .filter(|a| gens.iter().all(|g| a.dot_unchecked(g).is_zero()))
                    .all(|a| a.dot_unchecked(&other.rays[i]).is_zero())
            })
            .collect();
        let f = other.face_from_tight(&idx);
        f.rays == self.rays && f.lineality == self.lineality
    }

    /// Index of the sublattice generated by the rays in the lattice points of their span,
    /// for pointed simplicial cones.
    pub fn multiplicity(&self) -> Option<BigInt> {
        if !self.is_pointed() || !self.is_simplicial() {
            return None;
        }
        let k = self.rays.len();
        if k == 0 {
            return Some(BigInt::from(1));
        }
        let minors = k_minors(&self.rays, self.ambient);
        Some(gcd_all(minors.iter()))
    }

    /// A basis of `span(self)^perp` intersected with the lattice.
    pub fn orthogonal_lattice(&self) -> Vec<LatticeVector> {
        crate::exactnum::integer_kernel(&self.all_generators(), self.ambient)
    }
}

fn k_minors(rows: &[LatticeVector], n: usize) -> Vec<BigInt> {
    let k = rows.len();
    let mut out = Vec::new();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let m: Vec<Vec<Rational>> =
            rows.iter().map(|r| cols.iter().map(|&c| to_rational(&r.entries()[c])).collect()).collect();
        out.push(det(m).to_integer());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cols[i] < n - k + i {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub(crate) fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            let f = &row[c] / &pivot[c];
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
    }
    d
}

/// A face-closed collection of cones.
#[derive(Clone)]
pub struct Fan {
    ambient: usize,
    cones: Vec<Cone>,
    maximal: Vec<bool>,
    index: HashMap<ConeKey, usize>,
}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fan").field("ambient", &self.ambient).field("maximal", &self.maximal_cones()).finish()
    }
}

/// Outcome of a fan map test, with the maximal source cones whose images are not in a single cone.
#[derive(Clone, Debug)]
pub struct FanMapVerdict {
    pub holds: bool,
    pub offending: Vec<Cone>,
}

impl Fan {
    /// The face closure of the given cones.
    pub fn from_cones(ambient: usize, cones: Vec<Cone>) -> Result<Fan> {
        let mut all: HashMap<ConeKey, Cone> = HashMap::new();
        let mut non_max: BTreeSet<ConeKey> = BTreeSet::new();
        for c in cones {
            if c.ambient != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: c.ambient });
            }
            if all.contains_key(&c.key()) && non_max.contains(&c.key()) {
                continue;
            }
            for f in c.faces() {
                let k = f.key();
                if f.dim < c.dim {
                    non_max.insert(k.clone());
                }
                all.entry(k).or_insert(f);
            }
            all.insert(c.key(), c);
        }
        let mut cones: Vec<Cone> = all.into_values().collect();
        cones.sort_by(|a, b| (a.dim, &a.rays, &a.lineality).cmp(&(b.dim, &b.rays, &b.lineality)));
        let maximal = cones.iter().map(|c| !non_max.contains(&c.key())).collect();
        let index = cones.iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
        Ok(Fan { ambient, cones, maximal, index })
    }

    /// Cones over the proper faces of a polytope with the origin in its interior.
    pub fn over_faces(p: &Polytope) -> Result<Fan> {
        if !p.origin_is_interior() {
            return Err(Error::OriginNotInterior);
        }
        Self::over_selected_faces(p, &p.proper_faces())
    }

    /// Cones over the given faces of a polytope, closed under faces.
    pub fn over_selected_faces(p: &Polytope, faces: &[Face]) -> Result<Fan> {
        let cones = faces.iter().map(|f| cone_over_face(p, f)).collect::<Result<Vec<_>>>()?;
        Self::from_cones(p.ambient_dim(), cones)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// All cones, sorted by dimension then rays.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones.iter().zip(&self.maximal).filter(|(_, &m)| m).map(|(c, _)| c).collect()
    }

    pub fn cones_of_dim(&self, k: usize) -> Vec<&Cone> {
        self.cones.iter().filter(|c| c.dim == k).collect()
    }

    pub fn rays(&self) -> Vec<LatticeVector> {
        let mut r: Vec<LatticeVector> = self.cones.iter().flat_map(|c| c.rays.iter().cloned()).collect();
        r.sort();
        r.dedup();
        r
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.index.contains_key(&c.key())
    }

    pub fn is_maximal(&self, c: &Cone) -> bool {
        self.index.get(&c.key()).is_some_and(|&i| self.maximal[i])
    }

    pub fn skeleton(&self, k: usize) -> Fan {
        let cones: Vec<Cone> = self.cones.iter().filter(|c| c.dim <= k).cloned().collect();
        Self::from_cones(self.ambient, cones).expect("same ambient")
    }

    /// Removes cones one at a time; each must be maximal when its turn comes.
    pub fn remove_cones(&self, remove: &[Cone]) -> Result<Fan> {
        let mut fan = self.clone();
        for c in remove {
            let Some(&i) = fan.index.get(&c.key()) else {
                return Err(Error::NotInFan(format!("{c:?}")));
            };
            if !fan.maximal[i] {
                return Err(Error::NotMaximal(format!("{c:?}")));
            }
            fan.cones.remove(i);
            fan.maximal.remove(i);
            fan.index = fan.cones.iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
            for f in c.faces().iter().filter(|f| f.dim + 1 == c.dim) {
                let j = fan.index[&f.key()];
                fan.maximal[j] = !fan.cones.iter().any(|d| d.dim == c.dim && f.is_face_of(d));
            }
        }
        Ok(fan)
    }

    /// Replaces every maximal cone containing `ray` by the cones spanned by `ray` and those
    /// facets of it that do not contain `ray`.
    pub fn stellar_subdivision(&self, ray: &LatticeVector) -> Result<Fan> {
        let ray = ray.primitive()?;
        let x = ray.to_rational();
        let mut cones = Vec::new();
        for c in self.maximal_cones() {
            if !c.contains(&x) || c.rays.contains(&ray) {
                cones.push(c.clone());
                continue;
            }
            for f in c.faces().into_iter().filter(|f| f.dim + 1 == c.dim && !f.contains(&x)) {
                let mut gens = f.rays.clone();
                gens.push(ray.clone());
                cones.push(Cone::from_generators(self.ambient, &gens, &f.lineality)?);
            }
        }
        Self::from_cones(self.ambient, cones)
    }

    pub fn support_contains(&self, x: &RationalVector) -> bool {
        self.maximal_cones().iter().any(|c| c.contains(x))
    }

    /// The minimal cone containing `x`, if `x` is in the support.
    pub fn smallest_containing_cone(&self, x: &RationalVector) -> Option<&Cone> {
        self.cones.iter().find(|c| c.contains(x))
    }

    /// Checks that the pairwise intersections of maximal cones are faces of both.
    pub fn validate(&self) -> std::result::Result<(), Box<(Cone, Cone)>> {
        let max = self.maximal_cones();
        for (i, a) in max.iter().enumerate() {
            for b in &max[i + 1..] {
                let m = a.intersect(b).expect("same ambient");
                if !m.is_face_of(a) || !m.is_face_of(b) {
                    return Err(Box::new(((*a).clone(), (*b).clone())));
                }
            }
        }
        Ok(())
    }

    /// Whether every cone of `source` maps into a single cone of `target`.
    pub fn is_fan_map(map: &LatticeMatrix, source: &Fan, target: &Fan) -> Result<FanMapVerdict> {
        if map.ncols() != source.ambient || map.nrows() != target.ambient {
            return Err(Error::DimensionMismatch { expected: source.ambient, found: map.ncols() });
        }
        let mut offending = Vec::new();
        for c in source.maximal_cones() {
            let gens: Vec<LatticeVector> = c.all_generators().iter().map(|g| map.apply(g)).collect::<Result<_>>()?;
            let x = map.apply(&c.interior_point())?.to_rational();
            let ok = target
                .smallest_containing_cone(&x)
                .is_some_and(|d| gens.iter().all(|g| d.contains_lattice(g)));
            if !ok {
                offending.push(c.clone());
            }
        }
        Ok(FanMapVerdict { holds: offending.is_empty(), offending })
    }

    /// Whether every cone of `self` lies in some cone of `coarser`.
    pub fn refines(&self, coarser: &Fan) -> bool {
        self.maximal_cones().iter().all(|c| {
            coarser
                .smallest_containing_cone(&c.interior_point().to_rational())
                .is_some_and(|d| d.contains_cone(c))
        })
    }

    /// The common refinement, made of intersections of maximal cones.
    pub fn refine(&self, other: &Fan) -> Result<Fan> {
        let mut cones = Vec::new();
        for a in self.maximal_cones() {
            for b in other.maximal_cones() {
                cones.push(a.intersect(b)?);
            }
        }
        Self::from_cones(self.ambient, cones)
    }

    pub fn to_json(&self) -> FanJson {
        let cones = self
            .maximal_cones()
            .iter()
            .map(|c| ConeJson { rays: c.rays.clone(), lineality: c.lineality.clone() })
            .collect();
        FanJson { dim: self.ambient, cones }
    }

    /// Reads a fan, rejecting cones that do not meet in a common face.
    pub fn from_json(j: &FanJson) -> Result<Fan> {
        let cones =
            j.cones.iter().map(|c| Cone::from_generators(j.dim, &c.rays, &c.lineality)).collect::<Result<Vec<_>>>()?;
        let fan = Self::from_cones(j.dim, cones)?;
        fan.validate().map_err(|pair| Error::NotAFan(format!("{:?} and {:?}", pair.0, pair.1)))?;
        Ok(fan)
    }
}

/// The cone over a face of a polytope.
pub fn cone_over_face(p: &Polytope, f: &Face) -> Result<Cone> {
    let gens: Vec<LatticeVector> =
        p.face_points(f).iter().map(|v| v.primitive_direction()).collect::<Result<_>>()?;
    Cone::from_generators(p.ambient_dim(), &gens, &[])
}

/// `{"dim": n, "cones": [{"rays": [...], "lineality": [...]}, ...]}`, one entry per maximal cone.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FanJson {
    pub dim: usize,
    pub cones: Vec<ConeJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConeJson {
    pub rays: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<LatticeVector>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lv;

    fn square() -> Polytope {
        Polytope::hull_lattice(&[lv![1, 0], lv![0, 1], lv![-1, 0], lv![0, -1]]).unwrap()
    }

    #[test]
    fn normal_fan_of_square() {
        let f = Fan::over_faces(&square()).unwrap();
        assert_eq!(f.cones().len(), 1 + 4 + 4);
        assert_eq!(f.maximal_cones().len(), 4);
        assert!(f.validate().is_ok());
        let c = f.smallest_containing_cone(&lv![2, 0].to_rational()).unwrap();
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn stellar_subdivision_splits_cones() {
        let f = Fan::over_faces(&square()).unwrap();
        let g = f.stellar_subdivision(&lv![2, 2]).unwrap();
        assert_eq!(g.maximal_cones().len(), 5);
        assert!(g.refines(&f));
        assert!(g.validate().is_ok());
        assert!(g.rays().contains(&lv![1, 1]));
    }

    #[test]
    fn removal_is_staged() {
        let f = Fan::over_faces(&square()).unwrap();
        let ray = Cone::from_generators(2, &[lv![1, 0]], &[]).unwrap();
        assert!(matches!(f.remove_cones(std::slice::from_ref(&ray)), Err(Error::NotMaximal(_))));
        let q1 = Cone::from_generators(2, &[lv![1, 0], lv![0, 1]], &[]).unwrap();
        let q4 = Cone::from_generators(2, &[lv![1, 0], lv![0, -1]], &[]).unwrap();
        let g = f.remove_cones(&[q1, q4, ray]).unwrap();
        assert_eq!(g.maximal_cones().len(), 2);
        assert!(!g.support_contains(&lv![1, 0].to_rational()));
    }

    #[test]
    fn lineality_cone() {
        let c = Cone::from_generators(3, &[lv![1, 0, 5], lv![0, 1, 0]], &[lv![0, 0, 2]]).unwrap();
        assert_eq!(c.lineality(), &[lv![0, 0, 1]]);
        assert_eq!(c.rays(), &[lv![0, 1, 0], lv![1, 0, 0]]);
        assert_eq!(c.dim(), 3);
        assert_eq!(c.faces().len(), 4);
    }

    #[test]
    fn projection_is_a_fan_map() {
        let f = Fan::over_faces(&square()).unwrap();
        let line = Fan::from_cones(
            1,
            vec![Cone::from_generators(1, &[lv![1]], &[]).unwrap(), Cone::from_generators(1, &[lv![-1]], &[]).unwrap()],
        )
        .unwrap();
        let p = LatticeMatrix::from_i64_rows(&[&[1, 0]]).unwrap();
        let v = Fan::is_fan_map(&p, &f, &line).unwrap();
        assert!(v.holds);
        let s = LatticeMatrix::from_i64_rows(&[&[1, 1]]).unwrap();
        let v = Fan::is_fan_map(&s, &f, &line).unwrap();
        assert_eq!(v.offending.len(), 2);
    }

    #[test]
    fn multiplicity_of_simplicial_cone() {
        let c = Cone::from_generators(2, &[lv![1, 0], lv![1, 2]], &[]).unwrap();
        assert_eq!(c.multiplicity(), Some(BigInt::from(2)));
    }
}
