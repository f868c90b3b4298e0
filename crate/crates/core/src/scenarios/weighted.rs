use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use super::fixtures::{GrassmannFixture, WeightedFixture};
use super::{json, json_sets, lattice_vertex_set, set_of, Check, FaceDrawing, SuiteOptions, VertexSet};
use crate::birational::{verify_factored_identity, verify_theorem, Identity, Theorem};
use crate::error::{Error, Result};
use crate::exactnum::{fmt_rational, qi, LatticeVector, Rational, RationalVector};
use crate::fan::{Cone, Fan};
use crate::plconvex::PlConvexFunction;
use crate::polytope::{AffineChart, Polytope};
use crate::subdivision::LiftedSubdivision;

pub(super) const FACE_NAMES: [&str; 2] = ["A", "A-refined"];

/// The weighted projective example: the polytope, its dual, the two pulled-back nef functions and
/// the big polytope of the quartic example.
pub struct WeightedData {
    pub fixture: WeightedFixture,
    pub quartic: GrassmannFixture,
    pub polytope: Polytope,
    pub dual: Polytope,
    pub pullbacks: [PlConvexFunction; 2],
    pub big: Polytope,
}

impl WeightedData {
    pub fn new() -> Result<WeightedData> {
        let fixture = WeightedFixture::new()?;
        let quartic = GrassmannFixture::new()?;
        let polytope = fixture.polytope()?;
        let dual = polytope.dual()?;
        let pullbacks =
            [quartic.nef_function(0)?.pullback(&fixture.embedding)?, quartic.nef_function(1)?.pullback(&fixture.embedding)?];
        let big = quartic.big()?;
        Ok(WeightedData { fixture, quartic, polytope, dual, pullbacks, big })
    }

    /// The singular face with chart coordinates.
    pub fn singular_face(&self) -> Result<(Polytope, AffineChart)> {
        let face = Polytope::hull_lattice(&self.fixture.singular_face)?;
        let chart = AffineChart::new(&face.lattice_points())?;
        Ok((face, chart))
    }

    fn chart_polytope(&self, chart: &AffineChart, pts: &[LatticeVector]) -> Result<Polytope> {
        let c: Vec<LatticeVector> = pts
            .iter()
            .map(|p| chart.coordinates(p).ok_or_else(|| Error::NotInPolytope(p.to_string())))
            .collect::<Result<_>>()?;
        Polytope::hull_lattice(&c)
    }

    /// Lower hull over the singular face, in chart coordinates, with height 0 inside and 1 on the boundary.
    pub fn face_subdivision(&self) -> Result<LiftedSubdivision> {
        let (face, chart) = self.singular_face()?;
        let base = self.chart_polytope(&chart, &face.lattice_points())?;
        let inner = face.relative_interior_lattice_points();
        let heights: Vec<(LatticeVector, Rational)> = face
            .lattice_points()
            .iter()
            .map(|p| {
                let h = if inner.contains(p) { qi(0) } else { qi(1) };
                (chart.coordinates(p).expect("on face"), h)
            })
            .collect();
        LiftedSubdivision::lower_hull(&base, &heights)
    }

    /// The cone over the image of a listed face, cut by the singular face, in chart coordinates.
    pub fn listed_face_region(&self, name: &str) -> Result<Polytope> {
        let pts = self.listed_face(name)?;
        let proj = self.fixture.projection();
        let img: Vec<LatticeVector> = pts.iter().map(|p| proj.apply(p)).collect::<Result<_>>()?;
        let cone = Cone::from_generators(4, &img, &[])?;
        let (face, chart) = self.singular_face()?;
        let mut hs: Vec<(RationalVector, Rational)> = Vec::new();
        for a in cone.inequalities() {
            hs.push((a.to_rational(), qi(0)));
        }
        for e in cone.equations() {
            hs.push((e.to_rational(), qi(0)));
            hs.push(((-e).to_rational(), qi(0)));
        }
        for f in face.facets() {
            hs.push((f.normal.to_rational(), f.offset.clone()));
        }
        for f in face.equations() {
            hs.push((f.normal.to_rational(), f.offset.clone()));
            hs.push(((-&f.normal).to_rational(), -f.offset.clone()));
        }
        let region = Polytope::from_halfspaces(4, &hs)?;
        let verts = region.lattice_vertices().ok_or_else(|| Error::Pipeline(format!("{name} cuts a non-lattice region")))?;
        self.chart_polytope(&chart, &verts)
    }

    fn listed_face(&self, name: &str) -> Result<Vec<LatticeVector>> {
        self.fixture
            .listed_faces
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| f.clone())
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }
}

fn run(id: &str, claim: &str, f: impl FnOnce(&WeightedData) -> Result<Check>, d: &Result<WeightedData>) -> Check {
    let r = match d {
        Ok(d) => f(d),
        Err(e) => Err(Error::Pipeline(e.to_string())),
    };
    let mut c = r.unwrap_or_else(|e| Check::from_error(id, claim, e));
    c.id = id.to_string();
    c.claim = claim.to_string();
    c
}

pub(super) fn checks(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let d = WeightedData::new();
    let mut out = vec![
        run("reflexive-polytope", "the polytope of the weighted space is reflexive with one extra lattice point", reflexive, &d),
        run("fan-embedding", "the embedding is a map of fans into the fan of projective 5-space", fan_embedding, &d),
        run("first-pullback-newton", "the first pulled-back nef function has Newton polytope equal to the dual polytope", first_newton, &d),
        run("second-pullback-newton", "the second pulled-back nef function has the printed Newton polytope", second_newton, &d),
        run("not-contained", "the second Newton polytope is not contained in the dual polytope", not_contained, &d),
        run("listed-faces", "the listed faces are 2-faces of the big polytope mapping over the singular face; only k5 meets the second removal condition", listed_faces, &d),
        run("singular-face", "the singular face is a 2-face of the dual polytope with 15 lattice points, 3 of them interior", singular_face, &d),
        run("face-a-subdivision", "the listed faces cut the singular face into a triangle and three strips, refined to unimodular triangles", face_a, &d),
    ];
    out.push(
        verify_factored_identity(Identity::Weighted, false)
            .map(|v| {
                Check::new(
                    "factored-identity",
                    "the degenerate family equation equals its factored form",
                    v.holds,
                    json!({"difference": v.difference}),
                    json!({"difference": "0"}),
                )
            })
            .unwrap_or_else(|e| Check::from_error("factored-identity", "", e)),
    );
    out.push(
        verify_theorem(Theorem::Weighted, opts.samples, opts.seed, false)
            .map(|r| {
                Check::new(
                    "birational-theorem",
                    "the monomial map and its inverse formulas match the degenerate family and the complete intersection",
                    r.passed(),
                    json(&r),
                    json!({"successes": opts.samples, "reverse_successes": opts.samples}),
                )
            })
            .unwrap_or_else(|e| Check::from_error("birational-theorem", "", e)),
    );
    Ok(out)
}

fn reflexive(d: &WeightedData) -> Result<Check> {
    let pts = set_of(&d.polytope.lattice_points());
    let mut want = set_of(&d.fixture.polytope_vertices);
    want.insert(LatticeVector::zero(4));
    want.insert(d.fixture.extra_point.clone());
    let refl = d.polytope.is_reflexive();
    Ok(Check::new(
        "",
        "",
        refl && pts == want,
        json!({"reflexive": refl, "lattice_points": pts}),
        json!({"reflexive": true, "lattice_points": want}),
    ))
}

fn fan_embedding(d: &WeightedData) -> Result<Check> {
    let src = Fan::over_faces(&d.polytope)?;
    let tgt = Fan::over_faces(&d.quartic.simplex)?;
    let v = Fan::is_fan_map(&d.fixture.embedding, &src, &tgt)?;
    let rank = d.fixture.embedding.rank();
    let offending: Vec<VertexSet> = v.offending.iter().map(|c| set_of(c.rays())).collect();
    Ok(Check::new(
        "",
        "",
        v.holds && rank == 4,
        json!({"fan_map": v.holds, "rank": rank, "offending": offending}),
        json!({"fan_map": true, "rank": 4}),
    ))
}

fn values_at(f: &PlConvexFunction, pts: &[LatticeVector]) -> Result<Vec<String>> {
    pts.iter().map(|p| f.evaluate_lattice(p).map(|x| fmt_rational(&x))).collect()
}

fn first_newton(d: &WeightedData) -> Result<Check> {
    let n = d.pullbacks[0].newton()?;
    let got = lattice_vertex_set(&n);
    let want = lattice_vertex_set(&d.dual);
    let vals = values_at(&d.pullbacks[0], &d.fixture.polytope_vertices)?;
    let want_vals = vec!["1"; 5];
    Ok(Check::new(
        "",
        "",
        got == want && vals == want_vals,
        json!({"vertices": got, "values": vals}),
        json!({"vertices": want, "values": want_vals}),
    ))
}

fn second_newton(d: &WeightedData) -> Result<Check> {
    let n = d.pullbacks[1].newton()?;
    let got = lattice_vertex_set(&n);
    let want = set_of(&d.fixture.newton_rows);
    let vals = values_at(&d.pullbacks[1], &d.fixture.polytope_vertices)?;
    let want_vals = vec!["2", "2", "0", "0", "0"];
    Ok(Check::new(
        "",
        "",
        got == want && vals == want_vals,
        json!({"vertices": got, "values": vals}),
        json!({"vertices": want, "values": want_vals}),
    ))
}

fn not_contained(d: &WeightedData) -> Result<Check> {
    let n = d.pullbacks[1].newton()?;
    let mut witness = None;
    'outer: for v in n.vertices() {
        for f in d.dual.facets() {
            let s = f.slack(v);
            if s < qi(0) {
                witness = Some(json!({"vertex": v, "facet_normal": f.normal, "slack": fmt_rational(&s)}));
                break 'outer;
            }
        }
    }
    Ok(Check::new("", "", witness.is_some(), json!({"witness": witness}), json!({"witness": "a vertex with negative slack"})))
}

fn listed_faces(d: &WeightedData) -> Result<Check> {
    let proj = d.fixture.projection();
    let (face, _) = d.singular_face()?;
    let cone = Cone::from_generators(4, &face.lattice_vertices().expect("lattice"), &[])?;
    let mut rows = BTreeMap::new();
    let mut ok = true;
    for (name, pts) in &d.fixture.listed_faces {
        let r: Vec<RationalVector> = pts.iter().map(LatticeVector::to_rational).collect();
        let is_face = d.big.face_with_vertices(&r).is_some_and(|f| f.dim == 2);
        let inside = pts.iter().all(|p| proj.apply(p).is_ok_and(|x| cone.contains_lattice(&x)));
        let cond = d.quartic.removal_rows.iter().filter(|w| pts.contains(w)).count() >= 3;
        ok &= is_face && inside && (cond == (*name == "k5"));
        rows.insert(*name, json!({"two_face": is_face, "image_in_cone": inside, "second_condition": cond}));
    }
    Ok(Check::new(
        "",
        "",
        ok,
        json(&rows),
        json!({"two_face": true, "image_in_cone": true, "second_condition_only": "k5"}),
    ))
}

fn singular_face(d: &WeightedData) -> Result<Check> {
    let r: Vec<RationalVector> = d.fixture.singular_face.iter().map(LatticeVector::to_rational).collect();
    let is_face = d.dual.face_with_vertices(&r).is_some_and(|f| f.dim == 2);
    let (face, _) = d.singular_face()?;
    let n = face.lattice_points().len();
    let inner = face.relative_interior_lattice_points().len();
    Ok(Check::new(
        "",
        "",
        is_face && n == 15 && inner == 3,
        json!({"two_face": is_face, "lattice_points": n, "interior_points": inner}),
        json!({"two_face": true, "lattice_points": 15, "interior_points": 3}),
    ))
}

fn cells_of(sub: &LiftedSubdivision) -> BTreeSet<VertexSet> {
    sub.cells().iter().map(|c| lattice_vertex_set(&sub.cell_polytope(c))).collect()
}

fn face_a(d: &WeightedData) -> Result<Check> {
    let sub = d.face_subdivision()?;
    let cells = cells_of(&sub);
    let mut regions = BTreeMap::new();
    let mut ok = cells.len() == 4;
    let mut strips = BTreeSet::new();
    let mut center = None;
    for name in ["k1", "k2", "k3", "k4"] {
        let r = lattice_vertex_set(&d.listed_face_region(name)?);
        ok &= cells.contains(&r);
        if name == "k1" {
            ok &= r.len() == 3;
            center = Some(r.clone());
        } else {
            ok &= r.len() == 4;
            strips.insert(r.clone());
        }
        regions.insert(name, r);
    }
    ok &= strips.len() == 3 && center.is_some_and(|c| !strips.contains(&c));
    let all = sub.points().to_vec();
    let (fine, _) = sub.refine_by_pulling(&all, true)?;
    let coarse: Vec<Polytope> = sub.cells().iter().map(|c| sub.cell_polytope(c)).collect();
    let mut unimodular = true;
    let mut inside = true;
    for c in fine.cells() {
        let poly = fine.cell_polytope(c);
        unimodular &= poly.vertices().len() == 3 && poly.normalized_volume()? == qi(1);
        inside &= coarse.iter().any(|k| poly.vertices().iter().all(|v| k.contains(v)));
    }
    let area = sub.base().normalized_volume()?;
    let count_ok = qi(fine.cells().len() as i64) == area;
    ok &= unimodular && inside && count_ok;
    Ok(Check::new(
        "",
        "",
        ok,
        json!({"cells": json_sets(&cells), "regions": regions, "triangles": fine.cells().len(),
               "normalized_area": fmt_rational(&area), "unimodular": unimodular, "refines_cells": inside}),
        json!({"cells": 4, "k1": "center triangle", "k2..k4": "strips", "triangles": "normalized area",
               "unimodular": true, "refines_cells": true}),
    ))
}

pub(super) fn face_drawing(name: &str) -> Result<FaceDrawing> {
    let d = WeightedData::new()?;
    let (face, chart) = d.singular_face()?;
    let sub = d.face_subdivision()?;
    let sub = match name {
        "A" => sub,
        "A-refined" => sub.refine_by_pulling(sub.points(), true)?.0,
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let cells = sub.cells().iter().map(|c| sub.cell_points(c).iter().map(|x| chart.point(x)).collect()).collect();
    let labels = d
        .fixture
        .singular_face
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("a{}", i + 1), p.clone()))
        .collect();
    let title = if name == "A" { "cut by the listed faces" } else { "unimodular refinement" };
    Ok(FaceDrawing { name: name.to_string(), title: format!("{name}: {title}"), points: face.lattice_points(), cells, labels })
}
