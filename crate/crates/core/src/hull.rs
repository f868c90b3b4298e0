//! Conversion between generator and inequality descriptions of rational polyhedral cones,
//! by the double description method on integer vectors.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactnum::{
    independent_subset, integer_kernel, lattice_rows_to_rational, rref, solve_rational, LatticeVector,
    Rational,
};

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: LatticeVector,
    zeros: Bits,
}

/// Extreme rays of the pointed cone `{a : m a >= 0}`; `m` must have full column rank.
fn extreme_rays(m: &[LatticeVector]) -> Vec<LatticeVector> {
    let r = m.first().map_or(0, LatticeVector::dim);
    if r == 0 {
        return Vec::new();
    }
    let basis = independent_subset(m);
    assert_eq!(basis.len(), r, "constraint matrix must have full column rank");
    let b = lattice_rows_to_rational(&basis.iter().map(|&i| m[i].clone()).collect::<Vec<_>>());
    let mut rays: Vec<Ray> = Vec::with_capacity(r);
    for i in 0..r {
        let mut e = vec![Rational::zero(); r];
        e[i] = Rational::from_integer(1.into());
        let x = solve_rational(&b, &e, r).expect("invertible");
        let v = crate::exactnum::RationalVector::new(x).primitive_direction().expect("nonzero");
        let mut zeros = Bits::new(m.len());
        for (j, &bj) in basis.iter().enumerate() {
            if j != i {
                zeros.set(bj);
            }
        }
        rays.push(Ray { v, zeros });
    }
    let mut in_basis = vec![false; m.len()];
    for &i in &basis {
        in_basis[i] = true;
    }
    for k in (0..m.len()).filter(|&k| !in_basis[k]) {
        let s: Vec<BigInt> = rays.iter().map(|ray| m[k].dot_unchecked(&ray.v)).collect();
        if s.iter().all(|x| !x.is_negative()) {
            for (ray, sk) in rays.iter_mut().zip(&s) {
                if sk.is_zero() {
                    ray.zeros.set(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_negative()).collect();
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let z = rays[p].zeros.and(&rays[n].zeros);
                if r >= 2 && z.count() < r - 2 {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|q| q == p || q == n || !z.subset_of(&rays[q].zeros));
                if !adjacent {
                    continue;
                }
                let v = (&rays[n].v.scale(&s[p]) - &rays[p].v.scale(&s[n]))
                    .primitive()
                    .expect("adjacent rays are independent");
                let mut zeros = z;
                zeros.set(k);
                new_rays.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + new_rays.len());
        for (i, mut ray) in rays.into_iter().enumerate() {
            if s[i].is_zero() {
                ray.zeros.set(k);
                kept.push(ray);
            } else if s[i].is_positive() {
                kept.push(ray);
            }
        }
        kept.extend(new_rays);
        rays = kept;
        if rays.is_empty() {
            break;
        }
    }
    let mut out: Vec<LatticeVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}

/// Inequality description of the cone generated by `generators` in `Q^dim`.
#[derive(Clone, Debug)]
pub struct HRep {
    /// `a . x = 0` for each row.
    pub equations: Vec<LatticeVector>,
    /// `a . x >= 0` for each row; one primitive normal per facet.
    pub inequalities: Vec<LatticeVector>,
}

/// Facets and linear span equations of `cone(generators)`.
pub fn facets_of_cone(generators: &[LatticeVector], dim: usize) -> HRep {
    let gens: Vec<LatticeVector> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let equations = integer_kernel(&gens, dim);
    if gens.is_empty() {
        return HRep { equations, inequalities: Vec::new() };
    }
    let (_, pivots) = rref(&lattice_rows_to_rational(&gens), dim);
    let projected: Vec<LatticeVector> = gens
        .iter()
        .map(|g| LatticeVector::new(pivots.iter().map(|&p| g.entries()[p].clone()).collect()))
        .collect();
    let mut inequalities: Vec<LatticeVector> = extreme_rays(&projected)
        .into_iter()
        .map(|a| {
            let mut full = vec![BigInt::zero(); dim];
            for (x, &p) in a.into_entries().into_iter().zip(&pivots) {
                full[p] = x;
            }
            LatticeVector::new(full)
        })
        .collect();
    inequalities.sort();
    HRep { equations, inequalities }
}

/// Generators of `{x : a . x >= 0 for a in inequalities, e . x = 0 for e in equations}`:
/// primitive extreme rays modulo the lineality space, and a basis of the lineality space.
pub fn generators_of_cone(
    inequalities: &[LatticeVector],
    equations: &[LatticeVector],
    dim: usize,
) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    let mut all: Vec<LatticeVector> = inequalities.to_vec();
    all.extend(equations.iter().cloned());
    let lineality = integer_kernel(&all, dim);
    let mut eq_lin: Vec<LatticeVector> = equations.to_vec();
    eq_lin.extend(lineality.iter().cloned());
    let w = integer_kernel(&eq_lin, dim);
    if w.is_empty() {
        return (Vec::new(), lineality);
    }
    let m: Vec<LatticeVector> = inequalities
        .iter()
        .map(|a| LatticeVector::new(w.iter().map(|b| a.dot_unchecked(b)).collect()))
        .collect();
    let mut rays: Vec<LatticeVector> = extreme_rays(&m)
        .into_iter()
        .map(|y| {
            let mut x = LatticeVector::zero(dim);
            for (c, b) in y.entries().iter().zip(&w) {
                x = &x + &b.scale(c);
            }
            x.primitive().expect("nonzero ray")
        })
        .collect();
    rays.sort();
    rays.dedup();
    (rays, lineality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lv;

    #[test]
    fn square_cone_facets() {
        let h = facets_of_cone(&[lv![1, 1, 1], lv![1, -1, 1], lv![-1, 1, 1], lv![-1, -1, 1]], 3);
        assert!(h.equations.is_empty());
        assert_eq!(h.inequalities, vec![lv![-1, 0, 1], lv![0, -1, 1], lv![0, 1, 1], lv![1, 0, 1]]);
    }

    #[test]
    fn lower_dimensional_cone_has_equations() {
        let h = facets_of_cone(&[lv![1, 0, 0], lv![0, 1, 0]], 3);
        assert_eq!(h.equations, vec![lv![0, 0, 1]]);
        assert_eq!(h.inequalities.len(), 2);
    }

    #[test]
    fn subspace_has_no_facets() {
        let h = facets_of_cone(&[lv![1, 0], lv![-1, 0]], 2);
        assert!(h.inequalities.is_empty());
        assert_eq!(h.equations, vec![lv![0, 1]]);
    }

    #[test]
    fn generators_roundtrip_with_lineality() {
        let (rays, lin) = generators_of_cone(&[lv![1, 0, 0], lv![0, 1, 0]], &[], 3);
        assert_eq!(lin, vec![lv![0, 0, 1]]);
        assert_eq!(rays, vec![lv![0, 1, 0], lv![1, 0, 0]]);
    }

    #[test]
    fn octahedron_cone_has_eight_facets() {
        let gens = [lv![1, 1, 0, 0], lv![1, -1, 0, 0], lv![1, 0, 1, 0], lv![1, 0, -1, 0], lv![1, 0, 0, 1], lv![1, 0, 0, -1]];
        let h = facets_of_cone(&gens, 4);
        assert_eq!(h.inequalities.len(), 8);
        let (rays, lin) = generators_of_cone(&h.inequalities, &h.equations, 4);
        assert!(lin.is_empty());
        let mut expect = gens.to_vec();
        expect.sort();
        assert_eq!(rays, expect);
    }
}
