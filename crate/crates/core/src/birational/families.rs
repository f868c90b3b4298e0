use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{MonomialMap, RationalFn, Ring};
use crate::error::{Error, Result};
use crate::exactnum::{fmt_rational, q, qi, LatticeMatrix, Rational};

const MAX_DRAWS: usize = 50;

/// The four hypersurface families in tori that the two theorems relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// The conifold-degenerate quartic mirror family in `X1..X4` with parameter `a5`.
    Conifold,
    /// The complete-intersection mirror family in `Y1..Y5` with parameter `b4`.
    BatyrevBorisov,
    /// The degenerate weighted-hypersurface mirror family in `X1..X4` with `a5 = a6^2/4`.
    Degenerate,
    /// The complete-intersection mirror family in `Y1..Y5` with parameter `b6`.
    CompleteIntersection,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Conifold => "conifold",
            Family::BatyrevBorisov => "batyrev-borisov",
            Family::Degenerate => "degenerate",
            Family::CompleteIntersection => "complete-intersection",
        }
    }

    pub fn coordinates(self) -> &'static [&'static str] {
        match self {
            Family::Conifold | Family::Degenerate => &["X1", "X2", "X3", "X4"],
            Family::BatyrevBorisov | Family::CompleteIntersection => &["Y1", "Y2", "Y3", "Y4", "Y5"],
        }
    }

    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::Conifold => &["a5"],
            Family::BatyrevBorisov => &["b4"],
            Family::Degenerate => &["a5", "a6"],
            Family::CompleteIntersection => &["b6"],
        }
    }

    /// Coordinates followed by parameters.
    pub fn ring(self) -> Ring {
        let mut vars: Vec<&str> = self.coordinates().to_vec();
        vars.extend(self.parameters());
        Ring::new(&vars)
    }

    fn equation_sources(self) -> &'static [&'static str] {
        match self {
            Family::Conifold => &["-1 + X1 + X2 + X3 + X4 + a5*(X1*X2*X3)^-1 + X1*X2*X4^-1"],
            Family::BatyrevBorisov => &["Y1 + Y2 + Y3 + b4*Y4 - 1", "Y5 + (Y1*Y2*Y3*Y4*Y5)^-1 - 1"],
            Family::Degenerate => &[
                "-1 + X1 + X2 + X3 + X4 + a5*X1^-1*(X2*X3*X4)^-2 + a6*(X2*X3*X4)^-1",
                "4*a5 - a6^2",
            ],
            Family::CompleteIntersection => &["Y1 + Y2 + Y3 + Y4 - 1", "Y5 + b6*(Y1*Y2*Y3*Y4*Y5)^-1 - 1"],
        }
    }

    /// Defining equations over [`Family::ring`]; each vanishes on the family.
    pub fn equations(self) -> Vec<RationalFn> {
        let ring = self.ring();
        self.equation_sources().iter().map(|s| ring.parse(s).expect("built-in equation parses")).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point of a family member together with the member's parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySample {
    pub family: Family,
    pub point: Vec<Rational>,
    pub parameters: Vec<Rational>,
}

impl FamilySample {
    pub fn values(&self) -> Vec<Rational> {
        let mut v = self.point.clone();
        v.extend(self.parameters.iter().cloned());
        v
    }

    /// Values of the defining equations at the sample.
    pub fn residuals(&self) -> Result<Vec<Rational>> {
        let v = self.values();
        self.family.equations().iter().map(|e| e.evaluate(&v)).collect()
    }

    pub fn lies_on_family(&self) -> bool {
        self.residuals().is_ok_and(|r| r.iter().all(Zero::is_zero))
    }

    fn strings(&self) -> Vec<String> {
        let ring = self.family.ring();
        ring.vars().iter().zip(self.values()).map(|(n, x)| format!("{n}={}", fmt_rational(&x))).collect()
    }
}

fn draw(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(1..=97);
    let d: i64 = rng.gen_range(1..=97);
    if rng.gen_bool(0.5) {
        q(-n, d)
    } else {
        q(n, d)
    }
}

fn try_sample(family: Family, rng: &mut ChaCha8Rng) -> Option<FamilySample> {
    let one = Rational::one();
    let (point, parameters) = match family {
        Family::Conifold => {
            let x: Vec<Rational> = (0..4).map(|_| draw(rng)).collect();
            let a5 = &x[0] * &x[1] * &x[2] * (&one - &x[0] - &x[1] - &x[2] - &x[3] - &x[0] * &x[1] / &x[3]);
            (x, vec![a5])
        }
        Family::BatyrevBorisov => {
            let y: Vec<Rational> = (0..4).map(|_| draw(rng)).collect();
            let (y1, y2, y3, y5) = (&y[0], &y[1], &y[2], &y[3]);
            if y5.is_one() {
                return None;
            }
            let y4 = (y1 * y2 * y3 * y5 * (&one - y5)).recip();
            let b4 = (&one - y1 - y2 - y3) / &y4;
            (vec![y1.clone(), y2.clone(), y3.clone(), y4, y5.clone()], vec![b4])
        }
        Family::Degenerate => {
            let w = draw(rng);
            if w.is_one() {
                return None;
            }
            let x: Vec<Rational> = (0..3).map(|_| draw(rng)).collect();
            let x1 = (&one - &x[0] - &x[1] - &x[2]) / (&w * &w);
            let c = (&w - &one) * &x1 * &x[0] * &x[1] * &x[2];
            let mut point = vec![x1];
            point.extend(x);
            (point, vec![&c * &c, &c * qi(2)])
        }
        Family::CompleteIntersection => {
            let y: Vec<Rational> = (0..4).map(|_| draw(rng)).collect();
            let (y1, y2, y3, y5) = (&y[0], &y[1], &y[2], &y[3]);
            let y4 = &one - y1 - y2 - y3;
            let b6 = (&one - y5) * y1 * y2 * y3 * &y4 * y5;
            (vec![y1.clone(), y2.clone(), y3.clone(), y4, y5.clone()], vec![b6])
        }
    };
    let sample = FamilySample { family, point, parameters };
    let generic = sample.point.iter().chain(&sample.parameters).all(|x| !x.is_zero());
    (generic && sample.lies_on_family()).then_some(sample)
}

fn sample_with(family: Family, rng: &mut ChaCha8Rng) -> Result<FamilySample> {
    (0..MAX_DRAWS).find_map(|_| try_sample(family, rng)).ok_or(Error::SamplingExhausted(MAX_DRAWS))
}

/// An exact point on a generic member of `family`: free coordinates are random nonzero
/// rationals and the remaining coordinate or parameter is solved for.
pub fn sample_on_family(family: Family, seed: u64) -> Result<FamilySample> {
    sample_with(family, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The two birational equivalences between mirror families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// Complete-intersection mirror with parameter `b4` to the conifold family, `a5 = b4`.
    Quartic,
    /// Complete-intersection mirror with parameter `b6` to the degenerate weighted family, `a6 = 2 b6`.
    Weighted,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Quartic => "quartic",
            Theorem::Weighted => "weighted",
        }
    }

    pub fn source(self) -> Family {
        match self {
            Theorem::Quartic => Family::BatyrevBorisov,
            Theorem::Weighted => Family::CompleteIntersection,
        }
    }

    pub fn target(self) -> Family {
        match self {
            Theorem::Quartic => Family::Conifold,
            Theorem::Weighted => Family::Degenerate,
        }
    }

    fn exponent_rows(self) -> [[i64; 5]; 4] {
        match self {
            Theorem::Quartic => [[0, -1, -1, -1, -1], [0, 1, 0, 0, 1], [0, 0, 1, 0, 0], [-1, 0, -1, -1, -1]],
            Theorem::Weighted => [[0, 0, 0, 1, 2], [0, 0, 1, 0, 0], [0, 1, 0, 0, 0], [1, 0, 0, 0, 0]],
        }
    }

    /// The forward torus map from source to target coordinates.
    pub fn forward(self) -> MonomialMap {
        let rows = self.exponent_rows();
        let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        MonomialMap::new(
            Ring::new(self.source().coordinates()),
            Ring::new(self.target().coordinates()),
            LatticeMatrix::from_i64_rows(&rows).expect("rectangular"),
        )
        .expect("shapes agree")
    }

    /// The forward map with the second and third target coordinates exchanged.
    pub fn corrupted_forward(self) -> MonomialMap {
        let mut rows = self.exponent_rows();
        rows.swap(1, 2);
        let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        MonomialMap::new(
            Ring::new(self.source().coordinates()),
            Ring::new(self.target().coordinates()),
            LatticeMatrix::from_i64_rows(&rows).expect("rectangular"),
        )
        .expect("shapes agree")
    }

    /// Ring of the inverse formulas: target coordinates and the source parameter.
    pub fn inverse_ring(self) -> Ring {
        let mut vars: Vec<&str> = self.target().coordinates().to_vec();
        vars.extend(self.source().parameters());
        Ring::new(&vars)
    }

    pub fn inverse_sources(self) -> [&'static str; 5] {
        match self {
            Theorem::Quartic => [
                "(1 + X4*X2^-1)*(X4^-1*X1*X2)",
                "(1 + X4*X2^-1)*X2",
                "X3",
                "(X1*X2*X3)^-1",
                "(1 + X4*X2^-1)^-1",
            ],
            Theorem::Weighted => ["X4", "X3", "X2", "1 - X2 - X3 - X4", "(1 + b6*(X1*X2*X3*X4)^-1)^-1"],
        }
    }

    pub fn inverse(self) -> Vec<RationalFn> {
        let ring = self.inverse_ring();
        self.inverse_sources().iter().map(|s| ring.parse(s).expect("built-in formula parses")).collect()
    }

    /// Target parameters from source parameters.
    pub fn match_parameters(self, source: &[Rational]) -> Vec<Rational> {
        match self {
            Theorem::Quartic => vec![source[0].clone()],
            Theorem::Weighted => vec![&source[0] * &source[0], &source[0] * qi(2)],
        }
    }

    /// Source parameters from target parameters.
    pub fn unmatch_parameters(self, target: &[Rational]) -> Vec<Rational> {
        match self {
            Theorem::Quartic => vec![target[0].clone()],
            Theorem::Weighted => vec![&target[1] / qi(2)],
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sample where the forward map or its inverse failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub sample: usize,
    pub direction: String,
    pub point: Vec<String>,
    pub reason: String,
}

/// Outcome of sampled verification of a theorem in both directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub samples: usize,
    pub successes: usize,
    pub reverse_successes: usize,
    pub failures: Vec<Witness>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.successes == self.samples && self.reverse_successes == self.samples
    }
}

fn eval_inverse(thm: Theorem, inverse: &[RationalFn], x: &[Rational], source_params: &[Rational]) -> Result<Vec<Rational>> {
    let mut v = x.to_vec();
    v.extend(source_params.iter().cloned());
    inverse.iter().map(|f| f.evaluate(&v)).collect::<Result<Vec<_>>>().map_err(|e| match e {
        Error::DivisionByZero => Error::NotTorusPoint(format!("{thm} inverse undefined")),
        e => e,
    })
}

fn forward_check(thm: Theorem, map: &MonomialMap, inverse: &[RationalFn], s: &FamilySample) -> std::result::Result<(), String> {
    let x = map.pullback_point(&s.point).map_err(|e| e.to_string())?;
    let image = FamilySample { family: thm.target(), point: x.clone(), parameters: thm.match_parameters(&s.parameters) };
    if !image.lies_on_family() {
        return Err(format!("image is off the {} family", thm.target()));
    }
    let y = eval_inverse(thm, inverse, &x, &s.parameters).map_err(|e| e.to_string())?;
    if y != s.point {
        return Err("inverse does not recover the point".into());
    }
    Ok(())
}

fn reverse_check(thm: Theorem, map: &MonomialMap, inverse: &[RationalFn], t: &FamilySample) -> std::result::Result<(), String> {
    let params = thm.unmatch_parameters(&t.parameters);
    let y = eval_inverse(thm, inverse, &t.point, &params).map_err(|e| e.to_string())?;
    let pre = FamilySample { family: thm.source(), point: y.clone(), parameters: params };
    if !pre.lies_on_family() {
        return Err(format!("inverse image is off the {} family", thm.source()));
    }
    let x = map.pullback_point(&y).map_err(|e| e.to_string())?;
    if x != t.point {
        return Err("forward map does not recover the point".into());
    }
    Ok(())
}

/// Checks `n` exact samples on each side: the forward map lands on the target family with
/// matched parameters and the inverse formulas recover the point, and symmetrically from the
/// target family. Sample `i` draws from its own stream of the seeded generator.
pub fn verify_theorem(thm: Theorem, n: usize, seed: u64, corrupt: bool) -> Result<TheoremReport> {
    let map = if corrupt { thm.corrupted_forward() } else { thm.forward() };
    let inverse = thm.inverse();
    let mut report = TheoremReport { theorem: thm, samples: n, successes: 0, reverse_successes: 0, failures: Vec::new() };
    for i in 0..n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let s = sample_with(thm.source(), &mut rng)?;
        match forward_check(thm, &map, &inverse, &s) {
            Ok(()) => report.successes += 1,
            Err(reason) => report.failures.push(Witness { sample: i, direction: "forward".into(), point: s.strings(), reason }),
        }
        let t = sample_with(thm.target(), &mut rng)?;
        match reverse_check(thm, &map, &inverse, &t) {
            Ok(()) => report.reverse_successes += 1,
            Err(reason) => report.failures.push(Witness { sample: i, direction: "reverse".into(), point: t.strings(), reason }),
        }
    }
    Ok(report)
}

/// The registered factorizations of degenerate family equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identity {
    Quartic,
    Weighted,
}

/// Result of expanding both sides of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityVerdict {
    pub identity: Identity,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub difference: String,
}

/// Expands the family equation and its factored form and compares them exactly. The weighted
/// identity is compared after substituting `a5 = a6^2/4`. `corrupt` flips the sign of `X3`
/// in the factored form.
pub fn verify_factored_identity(id: Identity, corrupt: bool) -> Result<IdentityVerdict> {
    let x3 = if corrupt { "- X3" } else { "+ X3" };
    let (ring, lhs, rhs) = match id {
        Identity::Quartic => (
            Ring::new(&["X1", "X2", "X3", "X4", "a5"]),
            "-1 + X1 + X2 + X3 + X4 + a5*(X1*X2*X3)^-1 + X1*X2*X4^-1".to_string(),
            format!("-1 + (1 + X4*X2^-1)*(X4^-1*X1*X2 + X2) {x3} + a5*(X1*X2*X3)^-1"),
        ),
        Identity::Weighted => (
            Ring::new(&["X1", "X2", "X3", "X4", "a6"]),
            "-1 + X1 + X2 + X3 + X4 + (a6^2/4)*X1^-1*(X2*X3*X4)^-2 + a6*(X2*X3*X4)^-1".to_string(),
            format!("-1 + X1*(1 + (a6/2)*(X1*X2*X3*X4)^-1)^2 + X2 {x3} + X4"),
        ),
    };
    let l = ring.parse(&lhs)?;
    let r = ring.parse(&rhs)?;
    let d = l.sub(&r)?;
    Ok(IdentityVerdict { identity: id, lhs: l.to_string(), rhs: r.to_string(), holds: d.is_zero(), difference: d.to_string() })
}
