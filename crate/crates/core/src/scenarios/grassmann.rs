use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::fixtures::GrassmannFixture;
use super::{
    induced_point_sets, induced_vertex_sets, json, json_sets, lattice_vertex_set, set_of, Check, FaceDrawing,
    SuiteOptions, VertexSet,
};
use crate::birational::{verify_factored_identity, verify_theorem, Identity, Theorem};
use crate::error::{Error, Result};
use crate::exactnum::{fmt_rational, q, qi, LatticeMatrix, LatticeVector, Rational, RationalVector};
use crate::fan::{cone_over_face, Cone, Fan};
use crate::plconvex::PlConvexFunction;
use crate::polytope::{Face, Polytope};
use crate::subdivision::{gkz_mpcp, induced_fan_on_faces, LiftedSubdivision, MpcpCertificate};

pub(super) const FACE_NAMES: [&str; 14] = [
    "e1", "e2", "e4", "e1-induced", "e2-induced", "e3", "e4-induced", "S1", "v1v2v4", "v1v4v6", "v1v3v4",
    "v1v4v5", "L", "square-splits",
];

/// Height drop of the non-vertex points in the lift of the compatible function.
fn lift_drop() -> Rational {
    q(1, 4)
}

/// Everything the quartic example computes once: the big polytope, the restricted fans, the
/// compatible function and its MPCP refinement, and the induced function on the big polytope.
pub struct GrassmannPipeline {
    pub fixture: GrassmannFixture,
    /// Newton polytopes of the two nef functions, as computed.
    pub nef_newton: [Polytope; 2],
    pub big: Polytope,
    /// The dual of the degenerate Grassmannian polytope.
    pub dual: Polytope,
    pub projection: LatticeMatrix,
    /// Faces of dimension at most 2 meeting one of the two listed removal conditions.
    pub removed: Vec<Face>,
    /// Faces of dimension at most 2 containing a face whose orbit the section test excludes.
    pub section_removed: Vec<Face>,
    /// Faces whose cones form the restricted fan.
    pub restricted: Vec<Face>,
    pub restricted_complete: Vec<Face>,
    pub restricted_fan: Fan,
    pub section_restricted_fan: Fan,
    /// The compatible function, lifted from the listed points.
    pub compatible: LiftedSubdivision,
    pub compatible_mpcp: MpcpCertificate,
    pub compatible_fan: Fan,
    /// Lower hull of the pulled-back MPCP function at the lattice points of the big polytope.
    pub pulled: LiftedSubdivision,
    /// `pulled` plus the function that is 1 on the boundary.
    pub induced: LiftedSubdivision,
    pub induced_mpcp: MpcpCertificate,
    /// Cones of the `induced` fan inside the restricted fan.
    pub induced_restricted: Fan,
    /// Cones of the MPCP refinement of `induced` inside the restricted fan.
    pub refined_restricted: Fan,
}

static PIPELINE: OnceLock<std::result::Result<GrassmannPipeline, String>> = OnceLock::new();

/// The pipeline, computed on first use and shared by every later caller.
pub fn grassmann_pipeline() -> Result<&'static GrassmannPipeline> {
    PIPELINE
        .get_or_init(|| GrassmannPipeline::build().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::Pipeline(e.clone()))
}

fn face_set(p: &Polytope, f: &Face) -> VertexSet {
    f.vertices.iter().map(|&i| p.vertices()[i].to_lattice().expect("lattice vertex")).collect()
}

fn face_of(p: &Polytope, pts: &[LatticeVector]) -> Option<Face> {
    let r: Vec<RationalVector> = pts.iter().map(LatticeVector::to_rational).collect();
    p.face_with_vertices(&r)
}

fn meets_removal_condition(fx: &GrassmannFixture, verts: &VertexSet) -> bool {
    fx.removal_points.iter().any(|p| verts.contains(p)) || fx.removal_rows.iter().filter(|r| verts.contains(r)).count() >= 3
}

/// Removes the given faces' cones from the fan over the faces of dimension at most 2, largest first.
fn restrict(big: &Polytope, low: &[Face], removed: &[Face]) -> Result<Fan> {
    let base = Fan::over_selected_faces(big, low)?;
    let mut order: Vec<&Face> = removed.iter().collect();
    order.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.vertices.cmp(&b.vertices)));
    let cones = order.iter().map(|f| cone_over_face(big, f)).collect::<Result<Vec<_>>>()?;
    base.remove_cones(&cones)
}

impl GrassmannPipeline {
    pub fn build() -> Result<GrassmannPipeline> {
        let fixture = GrassmannFixture::new()?;
        let nef_newton = [fixture.nef_function(0)?.newton()?, fixture.nef_function(1)?.newton()?];
        let mut pts = nef_newton[0].lattice_vertices().ok_or(Error::Pipeline("non-lattice Newton polytope".into()))?;
        pts.extend(nef_newton[1].lattice_vertices().ok_or(Error::Pipeline("non-lattice Newton polytope".into()))?);
        let big = Polytope::hull_lattice(&pts)?;
        let dual = fixture.degenerate_grassmann_polytope()?.dual()?;
        let projection = fixture.projection();

        let low: Vec<Face> = big.proper_faces().into_iter().filter(|f| f.dim <= 2).collect();
        let removed: Vec<Face> =
            low.iter().filter(|f| meets_removal_condition(&fixture, &face_set(&big, f))).cloned().collect();
        let mut excluded: Vec<VertexSet> = Vec::new();
        for f in &low {
            let cone = cone_over_face(&big, f)?;
            let mut hit = false;
            for part in &fixture.nef_parts {
                hit |= PlConvexFunction::orbit_excluded(&cone, part)?.excluded;
            }
            if hit {
                excluded.push(face_set(&big, f));
            }
        }
        let section_removed: Vec<Face> = low
            .iter()
            .filter(|f| {
                let s = face_set(&big, f);
                excluded.iter().any(|e| e.is_subset(&s))
            })
            .cloned()
            .collect();
        let restricted: Vec<Face> = low.iter().filter(|f| !removed.contains(f)).cloned().collect();
        let restricted_complete: Vec<Face> = low.iter().filter(|f| !section_removed.contains(f)).cloned().collect();
        let restricted_fan = restrict(&big, &low, &removed)?;
        let section_restricted_fan = restrict(&big, &low, &section_removed)?;

        let mut heights: Vec<(LatticeVector, Rational)> = fixture.dual_rows.iter().map(|v| (v.clone(), qi(1))).collect();
        for t in fixture.image_rows.iter().chain([&fixture.square_center]) {
            heights.push((t.clone(), qi(1) - lift_drop()));
        }
        heights.push((LatticeVector::zero(4), qi(0)));
        let compatible = LiftedSubdivision::lower_hull(&dual, &heights)?;
        let compatible_mpcp = gkz_mpcp(&dual, &compatible.function())?;
        let compatible_fan = compatible_mpcp.fan()?;

        let hp = compatible_mpcp.function();
        let jh: Vec<(LatticeVector, Rational)> = big
            .lattice_points()
            .into_iter()
            .map(|p| {
                let v = hp.evaluate_lattice(&projection.apply(&p)?)?;
                Ok((p, v))
            })
            .collect::<Result<_>>()?;
        let pulled = LiftedSubdivision::lower_hull(&big, &jh)?;
        let jph: Vec<(LatticeVector, Rational)> =
            jh.into_iter().map(|(p, v)| if p.is_zero() { (p, v) } else { (p, v + qi(1)) }).collect();
        let induced = LiftedSubdivision::lower_hull(&big, &jph)?;
        let induced_mpcp = gkz_mpcp(&big, &induced.function())?;
        let induced_restricted = induced_fan_on_faces(&induced, &restricted)?;
        let refined_restricted = induced_fan_on_faces(&induced_mpcp.subdivision, &restricted)?;
        Ok(GrassmannPipeline {
            fixture,
            nef_newton,
            big,
            dual,
            projection,
            removed,
            section_removed,
            restricted,
            restricted_complete,
            restricted_fan,
            section_restricted_fan,
            compatible,
            compatible_mpcp,
            compatible_fan,
            pulled,
            induced,
            induced_mpcp,
            induced_restricted,
            refined_restricted,
        })
    }

    /// Named lattice points: `v1..v6`, `t1..t4`, `c`, `w0..w5`, `z0..z5` and `k`.
    pub fn labels(&self) -> Vec<(String, LatticeVector)> {
        let fx = &self.fixture;
        let mut out = Vec::new();
        for (i, v) in fx.dual_rows.iter().enumerate() {
            out.push((format!("v{}", i + 1), v.clone()));
        }
        for (i, t) in fx.image_rows.iter().enumerate() {
            out.push((format!("t{}", i + 1), t.clone()));
        }
        out.push(("c".into(), fx.square_center.clone()));
        for (i, w) in fx.newton_rows[0].iter().enumerate() {
            out.push((format!("w{i}"), w.clone()));
        }
        for (i, z) in fx.newton_rows[1].iter().enumerate() {
            out.push((format!("z{i}"), z.clone()));
        }
        out.push(("k".into(), fx.kernel.clone()));
        out
    }

    fn point(&self, name: &str) -> LatticeVector {
        self.labels().into_iter().find(|(n, _)| n == name).map(|(_, p)| p).expect("registered label")
    }

    fn points(&self, names: &[&str]) -> Vec<LatticeVector> {
        names.iter().map(|n| self.point(n)).collect()
    }

    fn kernel_face(&self, name: &str) -> Vec<LatticeVector> {
        self.fixture.kernel_faces.iter().find(|(n, _)| *n == name).map(|(_, f)| f.clone()).expect("registered face")
    }

    /// The triangles and the square of the dual polytope on which the compatible function is drawn.
    fn dual_face(&self, name: &str) -> Option<Vec<LatticeVector>> {
        let names: &[&str] = match name {
            "v1v2v4" => &["v1", "v2", "v4"],
            "v1v4v6" => &["v1", "v4", "v6"],
            "v1v3v4" => &["v1", "v3", "v4"],
            "v1v4v5" => &["v1", "v4", "v5"],
            "S1" => &["v2", "v3", "v5", "v6"],
            _ => return None,
        };
        Some(self.points(names))
    }

    fn named_sets(&self, cells: &[&[&str]]) -> BTreeSet<VertexSet> {
        cells.iter().map(|c| set_of(&self.points(c))).collect()
    }

    fn extra(&self, pts: &[[i64; 5]]) -> Vec<LatticeVector> {
        pts.iter().map(|p| LatticeVector::from_i64s(p)).collect()
    }

    /// Cells of the compatible function on the faces it is drawn on.
    fn expected_lift_cells(&self, name: &str) -> BTreeSet<VertexSet> {
        match name {
            "v1v2v4" => self.named_sets(&[&["t1", "t3", "t4"], &["v1", "v2", "t1", "t4"], &["t1", "v2", "v4", "t3"]]),
            "v1v4v6" => self.named_sets(&[&["t2", "t3", "t4"], &["v1", "v6", "t2", "t4"], &["t2", "v6", "v4", "t3"]]),
            "v1v3v4" => self.named_sets(&[&["v3", "t3", "t4"], &["v1", "t4", "v3"], &["t3", "v4", "v3"]]),
            "v1v4v5" => self.named_sets(&[&["v5", "t3", "t4"], &["v1", "t4", "v5"], &["t3", "v4", "v5"]]),
            "S1" => self.named_sets(&[&["c", "v2", "v3"], &["c", "v3", "v6"], &["c", "v6", "v5"], &["c", "v5", "v2"]]),
            _ => BTreeSet::new(),
        }
    }

    /// Cells that the induced function cuts the kernel faces into.
    fn expected_induced_cells(&self, name: &str) -> BTreeSet<VertexSet> {
        let k = self.point("k");
        let sets = |cells: Vec<Vec<LatticeVector>>| -> BTreeSet<VertexSet> { cells.iter().map(set_of).collect() };
        match name {
            "e3" => {
                let r = |a: i64| LatticeVector::from_i64s(&[-1, -1, a, 2 - a, 0]);
                let s = |a: i64| LatticeVector::from_i64s(&[0, 0, a, 2 - a, -1]);
                sets(vec![
                    vec![r(3), r(2), s(2)],
                    vec![r(2), r(1), s(1), s(2)],
                    vec![r(1), r(0), s(0), s(1)],
                    vec![r(0), r(-1), s(0)],
                ])
            }
            "e4" => {
                let r = |a: i64| LatticeVector::from_i64s(&[3 - a, a - 1, -1, -1, 0]);
                let mut cells = vec![
                    vec![k.clone(), self.point("z1"), self.point("w1")],
                    vec![k.clone(), self.point("z2"), self.point("w2")],
                ];
                for a in 0..4 {
                    cells.push(vec![k.clone(), r(a), r(a + 1)]);
                }
                sets(cells)
            }
            "e1" | "e2" => {
                let (third, m) = if name == "e1" {
                    ("z3", self.extra(&[[1, 0, 1, 0, -1], [0, 1, 1, 0, -1]]))
                } else {
                    ("z4", self.extra(&[[1, 0, 0, 1, -1], [0, 1, 0, 1, -1]]))
                };
                let z3 = self.point(third);
                sets(vec![
                    vec![self.point("z1"), k.clone(), m[0].clone()],
                    vec![k.clone(), m[0].clone(), z3.clone()],
                    vec![k.clone(), z3.clone(), m[1].clone()],
                    vec![k.clone(), m[1].clone(), self.point("z2")],
                ])
            }
            _ => BTreeSet::new(),
        }
    }

    /// Ray sets of the cones that the kernel point splits a face into.
    fn expected_splits(&self, name: &str) -> BTreeSet<VertexSet> {
        match name {
            "e1" => self.named_sets(&[&["z1", "k", "z3"], &["k", "z2", "z3"]]),
            "e2" => self.named_sets(&[&["z1", "k", "z4"], &["k", "z2", "z4"]]),
            "e4" => self.named_sets(&[&["k", "z1", "w1"], &["k", "w1", "w2"], &["k", "w2", "z2"]]),
            _ => BTreeSet::new(),
        }
    }

    /// The restricted fan subdivided at the kernel point.
    pub fn split_fan(&self, complete: bool) -> Result<Fan> {
        let base = if complete { &self.section_restricted_fan } else { &self.restricted_fan };
        base.stellar_subdivision(&self.fixture.kernel)
    }

    fn split_cells(&self, fan: &Fan, face: &[LatticeVector]) -> Result<BTreeSet<VertexSet>> {
        let cone = Cone::from_generators(5, face, &[])?;
        Ok(fan
            .cones_of_dim(3)
            .into_iter()
            .filter(|c| cone.contains_cone(c))
            .map(|c| set_of(c.rays()))
            .collect())
    }

    fn image(&self, pts: &VertexSet) -> Vec<LatticeVector> {
        pts.iter().map(|p| self.projection.apply(p).expect("shape")).collect()
    }
}

fn run(id: &str, claim: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    let mut c = f().unwrap_or_else(|e| Check::from_error(id, claim, e));
    c.id = id.to_string();
    c.claim = claim.to_string();
    c
}

pub(super) fn checks(opts: &SuiteOptions) -> Result<Vec<Check>> {
    let p = grassmann_pipeline()?;
    let mut printed = p.fixture.clone();
    if opts.corrupt {
        let w0 = &printed.newton_rows[0][0];
        printed.newton_rows[0][0] = w0 + &LatticeVector::unit(5, 4);
    }
    let out = vec![
        run("dual-vertices", "the dual of the degenerate Grassmannian polytope has the printed vertices v1..v6", || {
            dual_vertices(p)
        }),
        run("newton-polytopes", "the Newton polytopes of the two nef functions have the printed vertices", || {
            newton_polytopes(p, &printed)
        }),
        run("projection-kernel", "the kernel of the dual map is spanned by (1,1,0,0,-1)", || projection_kernel(p)),
        run(
            "big-polytope-image",
            "the dual map sends the big polytope onto the dual polytope, and the pulled-back nef functions take the listed values",
            || big_polytope_image(p, &printed),
        ),
        run(
            "two-face-classification",
            "the 50 two-faces of the big polytope are faces of a Newton polytope or spans of parallel edges, out of 55 candidates",
            || two_faces(p),
        ),
        run(
            "removal-conditions",
            "the twelve listed section values hold and every face meeting a removal condition has exactly one vanishing section",
            || removal_conditions(p),
        ),
        run("restricted-fan", "the restricted fan is obtained by staged removal of maximal cones", || restricted_fan(p)),
        run(
            "nef-part-faces",
            "of the sixteen remaining 2-faces of the first Newton polytope, twelve map onto the triangles T1..T12 and four into the square",
            || nef_part_faces(p),
        ),
        run("kernel-splits", "the kernel point splits e1 and e2 in two and e4 in three", || kernel_splits(p)),
        run(
            "refined-fan-map",
            "the dual map sends every cone of the split restricted fan into a cone of the 3-skeleton of the dual fan",
            || refined_fan_map(p, false),
        ),
        run(
            "refined-fan-map-complete",
            "with every orbit-excluded face removed, the split restricted fan maps into the 3-skeleton of the dual fan",
            || refined_fan_map(p, true),
        ),
        run(
            "compatible-lift",
            "the lifted compatible function has the drawn cells and its MPCP refinement passes every check and refines them",
            || compatible_lift(p),
        ),
        run("node-segment", "the node segment has 5 lattice points and is cut into 4 unit segments", || node_segment(p)),
        run(
            "final-agreement",
            "the induced function equals the pulled-back MPCP function plus the boundary function on every named cone",
            || final_agreement(p, opts.seed),
        ),
        run(
            "final-fan-map",
            "the dual map sends the refined induced fan into the fan of the MPCP function",
            || final_fan_map(p),
        ),
        run(
            "final-induced-subdivisions",
            "the induced function cuts e1, e2, e3 and e4 into the drawn cells",
            || final_induced(p),
        ),
        run(
            "induced-squares",
            "the induced fan is maximal except for two squares over e3, which the MPCP refinement cuts into triangles",
            || induced_squares(p),
        ),
        run("factored-identity", "the conifold family equation equals its factored form", || {
            let v = verify_factored_identity(Identity::Quartic, false)?;
            Ok(Check::new("factored-identity", "", v.holds, json!({"difference": v.difference}), json!({"difference": "0"})))
        }),
        run("birational-theorem", "the monomial map and its inverse formulas match the two families exactly", || {
            let r = verify_theorem(Theorem::Quartic, opts.samples, opts.seed, false)?;
            Ok(Check::new(
                "birational-theorem",
                "",
                r.passed(),
                json(&r),
                json!({"successes": opts.samples, "reverse_successes": opts.samples}),
            ))
        }),
    ];
    Ok(out)
}

fn dual_vertices(p: &GrassmannPipeline) -> Result<Check> {
    let got = lattice_vertex_set(&p.dual);
    let want = set_of(&p.fixture.dual_rows);
    Ok(Check::new("dual-vertices", "", got == want, json(&got), json(&want)))
}

fn newton_polytopes(p: &GrassmannPipeline, printed: &GrassmannFixture) -> Result<Check> {
    let got: Vec<VertexSet> = p.nef_newton.iter().map(lattice_vertex_set).collect();
    let want: Vec<VertexSet> = printed.newton_rows.iter().map(set_of).collect();
    Ok(Check::new("newton-polytopes", "", got == want, json(&got), json(&want)))
}

fn projection_kernel(p: &GrassmannPipeline) -> Result<Check> {
    let k = p.projection.kernel_basis();
    let want = &p.fixture.kernel;
    let ok = k.len() == 1 && (k[0] == *want || k[0] == -want);
    Ok(Check::new("projection-kernel", "", ok, json(&k), json(&[want])))
}

fn big_polytope_image(p: &GrassmannPipeline, printed: &GrassmannFixture) -> Result<Check> {
    let fx = &p.fixture;
    let mut rows = printed.newton_rows[0].clone();
    rows.extend(printed.newton_rows[1].iter().cloned());
    let image = Polytope::hull_lattice(&rows)?.image(&p.projection)?;
    let got = lattice_vertex_set(&image);
    let want = lattice_vertex_set(&p.dual);
    let witness: Vec<&LatticeVector> = got.symmetric_difference(&want).collect();
    let mut values = Vec::new();
    for i in 0..2 {
        let h = fx.nef_function(i)?.pullback(&fx.embedding)?;
        let v: Vec<String> =
            fx.grassmann_rays.iter().map(|u| h.evaluate_lattice(u).map(|x| fmt_rational(&x))).collect::<Result<_>>()?;
        values.push(v);
    }
    let want_values = [vec!["1"; 6], vec!["1", "1", "0", "1", "0", "1"]];
    let ok = got == want && values.iter().zip(&want_values).all(|(a, b)| a == b);
    Ok(Check::new(
        "big-polytope-image",
        "",
        ok,
        json!({"image_vertices": got, "witness": witness, "pullback_values": values}),
        json!({"image_vertices": want, "pullback_values": want_values}),
    ))
}

fn parallel(a: &LatticeVector, b: &LatticeVector) -> bool {
    let (a, b) = (a.primitive(), b.primitive());
    match (a, b) {
        (Ok(a), Ok(b)) => a == b || a == -&b,
        _ => false,
    }
}

fn edge_vectors(poly: &Polytope) -> Vec<(VertexSet, LatticeVector)> {
    poly.faces(1)
        .iter()
        .map(|e| {
            let s = face_set(poly, e);
            let v: Vec<&LatticeVector> = s.iter().collect();
            (s.clone(), v[1] - v[0])
        })
        .collect()
}

fn two_faces(p: &GrassmannPipeline) -> Result<Check> {
    let [n1, n2] = &p.nef_newton;
    let faces = p.big.faces(2);
    let (mut type1, mut type2, mut neither, mut both) = (0, 0, Vec::new(), 0);
    let e1 = edge_vectors(n1);
    let e2 = edge_vectors(n2);
    let is_face = |poly: &Polytope, s: &VertexSet| -> bool {
        let v: Vec<LatticeVector> = s.iter().cloned().collect();
        face_of(poly, &v).is_some_and(|f| f.dim == 2)
    };
    for f in &faces {
        let s = face_set(&p.big, f);
        let t1 = is_face(n1, &s) || is_face(n2, &s);
        let t2 = e1.iter().any(|(a, va)| e2.iter().any(|(b, vb)| parallel(va, vb) && a.union(b).cloned().collect::<VertexSet>() == s));
        match (t1, t2) {
            (true, false) => type1 += 1,
            (false, true) => type2 += 1,
            (true, true) => both += 1,
            (false, false) => neither.push(s),
        }
    }
    let pairs = e1.iter().map(|(_, va)| e2.iter().filter(|(_, vb)| parallel(va, vb)).count()).sum::<usize>();
    let candidates = n1.faces(2).len() + n2.faces(2).len() + pairs;
    let ok = faces.len() == 50 && neither.is_empty() && both == 0 && type1 + type2 == 50 && candidates == 55;
    Ok(Check::new(
        "two-face-classification",
        "",
        ok,
        json!({"two_faces": faces.len(), "type1": type1, "type2": type2, "both": both, "unclassified": neither, "candidates": candidates}),
        json!({"two_faces": 50, "type1_plus_type2": 50, "candidates": 55}),
    ))
}

fn removal_conditions(p: &GrassmannPipeline) -> Result<Check> {
    let fx = &p.fixture;
    let verts = p.big.lattice_vertices().expect("lattice");
    let mut wrong = Vec::new();
    let mut support_counts = BTreeMap::new();
    for s in &fx.section_values {
        let phi = PlConvexFunction::section_function(&fx.nef_parts[s.part], &s.m)?;
        let v = phi.evaluate_lattice(&s.ray)?;
        if v != qi(s.value) {
            wrong.push(json!({"part": s.part + 1, "m": s.m, "ray": s.ray, "value": fmt_rational(&v), "expected": s.value}));
        }
        let nonzero = verts.iter().map(|r| phi.evaluate_lattice(r)).collect::<Result<Vec<_>>>()?;
        support_counts.insert(format!("{}:{}", s.part + 1, s.m), nonzero.iter().filter(|x| !x.is_zero()).count());
    }
    let mut failures = Vec::new();
    let mut tested = 0;
    for f in p.big.proper_faces() {
        let s = face_set(&p.big, &f);
        if !meets_removal_condition(fx, &s) {
            continue;
        }
        tested += 1;
        let cone = cone_over_face(&p.big, &f)?;
        let mut ok = false;
        for part in &fx.nef_parts {
            ok |= PlConvexFunction::orbit_excluded(&cone, part)?.excluded;
        }
        if !ok {
            failures.push(s);
        }
    }
    let two_rays = support_counts.values().all(|&c| c == 2);
    let ok = wrong.is_empty() && failures.is_empty() && two_rays;
    Ok(Check::new(
        "removal-conditions",
        "",
        ok,
        json!({"values_checked": fx.section_values.len(), "mismatches": wrong, "nonzero_rays": support_counts, "faces_tested": tested, "faces_failing": failures}),
        json!({"values_checked": 12, "mismatches": [], "nonzero_rays_each": 2, "faces_failing": []}),
    ))
}

fn restricted_fan(p: &GrassmannPipeline) -> Result<Check> {
    let f = &p.restricted_fan;
    let max_dim = f.cones().iter().map(Cone::dim).max().unwrap_or(0);
    let valid = f.validate().is_ok();
    let by_dim: BTreeMap<usize, usize> =
        f.maximal_cones().iter().fold(BTreeMap::new(), |mut m, c| {
            *m.entry(c.dim()).or_insert(0) += 1;
            m
        });
    let ok = valid && max_dim <= 3 && !p.removed.is_empty();
    Ok(Check::new(
        "restricted-fan",
        "",
        ok,
        json!({"removed_faces": p.removed.len(), "maximal_cones_by_dim": by_dim, "max_dim": max_dim, "valid": valid}),
        json!({"max_dim": 3, "valid": true}),
    ))
}

fn nef_part_faces(p: &GrassmannPipeline) -> Result<Check> {
    let fx = &p.fixture;
    let n1 = &p.nef_newton[0];
    let faces = n1.faces(2);
    let square = face_of(&p.dual, &p.dual_face("S1").expect("registered")).ok_or(Error::Pipeline("square face".into()))?;
    let square_poly = p.dual.face_polytope(&square);
    let mut removed = 0;
    let mut onto = BTreeSet::new();
    let mut onto_count = 0;
    let mut into_square = 0;
    let mut other = Vec::new();
    for f in &faces {
        let s = face_set(n1, f);
        if meets_removal_condition(fx, &s) {
            removed += 1;
            continue;
        }
        let img = set_of(&p.image(&s));
        let imgv: Vec<LatticeVector> = img.iter().cloned().collect();
        let target = face_of(&p.dual, &imgv);
        if img.iter().all(|x| square_poly.contains_lattice(x)) {
            into_square += 1;
        } else if img.len() == 3 && target.as_ref().is_some_and(|t| t.dim == 2) {
            onto_count += 1;
            onto.insert(img);
        } else {
            other.push(json!({"face": s, "image": img}));
        }
    }
    let ok = faces.len() == 20 && removed == 4 && onto_count == 12 && onto.len() == 12 && into_square == 4;
    Ok(Check::new(
        "nef-part-faces",
        "",
        ok,
        json!({"two_faces": faces.len(), "removed": removed, "onto_triangles": onto_count, "distinct_triangles": onto.len(), "into_square": into_square, "other": other}),
        json!({"two_faces": 20, "removed": 4, "onto_triangles": 12, "distinct_triangles": 12, "into_square": 4, "other": []}),
    ))
}

fn kernel_splits(p: &GrassmannPipeline) -> Result<Check> {
    let fan = p.split_fan(false)?;
    let mut got = BTreeMap::new();
    let mut want = BTreeMap::new();
    let mut ok = true;
    for name in ["e1", "e2", "e4"] {
        let g = p.split_cells(&fan, &p.kernel_face(name))?;
        let w = p.expected_splits(name);
        ok &= g == w;
        got.insert(name, json_sets(&g));
        want.insert(name, json_sets(&w));
    }
    Ok(Check::new("kernel-splits", "", ok, json(&got), json(&want)))
}

fn dual_three_skeleton(p: &GrassmannPipeline) -> Result<Fan> {
    Ok(Fan::over_faces(&p.dual)?.skeleton(3))
}

fn refined_fan_map(p: &GrassmannPipeline, complete: bool) -> Result<Check> {
    let fan = p.split_fan(complete)?;
    let v = Fan::is_fan_map(&p.projection, &fan, &dual_three_skeleton(p)?)?;
    let offending: Vec<VertexSet> = v.offending.iter().map(|c| set_of(c.rays())).collect();
    let id = if complete { "refined-fan-map-complete" } else { "refined-fan-map" };
    let mut computed = json!({"maximal_cones": fan.maximal_cones().len(), "holds": v.holds, "offending": offending});
    if complete {
        let extra: Vec<VertexSet> = p
            .section_removed
            .iter()
            .filter(|f| !p.removed.contains(f))
            .map(|f| face_set(&p.big, f))
            .collect();
        computed["removed_beyond_conditions"] = json(&extra);
    }
    Ok(Check::new(id, "", v.holds, computed, json!({"holds": true, "offending": []})))
}

fn compatible_lift(p: &GrassmannPipeline) -> Result<Check> {
    let checks = p.compatible_mpcp.check();
    let mut got = BTreeMap::new();
    let mut want = BTreeMap::new();
    let mut cells_ok = true;
    let mut refines = true;
    for name in ["v1v2v4", "v1v4v6", "v1v3v4", "v1v4v5", "S1"] {
        let face = Polytope::hull_lattice(&p.dual_face(name).expect("registered"))?;
        let g = induced_vertex_sets(&p.compatible, &face);
        let w = p.expected_lift_cells(name);
        cells_ok &= g == w;
        let coarse: Vec<Polytope> =
            w.iter().map(|c| Polytope::hull_lattice(&c.iter().cloned().collect::<Vec<_>>())).collect::<Result<_>>()?;
        for cell in induced_point_sets(&p.compatible_mpcp.subdivision, &face) {
            refines &= coarse.iter().any(|c| cell.iter().all(|x| c.contains_lattice(x)));
        }
        got.insert(name, json_sets(&g));
        want.insert(name, json_sets(&w));
    }
    let star = p.compatible.is_star_shaped() && p.compatible.verify_regular();
    let fan_refines = p.compatible_fan.refines(&p.compatible.fan()?);
    let ok = cells_ok && refines && star && checks.passed() && fan_refines;
    Ok(Check::new(
        "compatible-lift",
        "",
        ok,
        json!({"lift_strictly_convex": star, "cells": got, "mpcp_checks": checks, "rounds": p.compatible_mpcp.rounds.len(),
               "scale": p.compatible_mpcp.scale.to_string(), "mpcp_refines_cells": refines, "mpcp_fan_refines_lift_fan": fan_refines}),
        json!({"lift_strictly_convex": true, "cells": want, "mpcp_checks_pass": true, "mpcp_refines_cells": true, "mpcp_fan_refines_lift_fan": true}),
    ))
}

fn node_segment(p: &GrassmannPipeline) -> Result<Check> {
    let l = Polytope::hull_lattice(&p.fixture.node_segment)?;
    let pts = l.lattice_points();
    let cells = induced_point_sets(&p.compatible_mpcp.subdivision, &l);
    let ok = pts.len() == 5 && cells.len() == 4 && cells.iter().all(|c| c.len() == 2);
    Ok(Check::new(
        "node-segment",
        "",
        ok,
        json!({"lattice_points": pts.len(), "segments": cells}),
        json!({"lattice_points": 5, "segments": 4, "points_per_segment": 2}),
    ))
}

/// Restricted faces whose cones the agreement argument covers: those mapped injectively into a
/// 2-face of the dual polytope, and e1..e4.
fn named_faces(p: &GrassmannPipeline) -> (Vec<Face>, Vec<Face>) {
    let kernel: Vec<VertexSet> = p.fixture.kernel_faces.iter().map(|(_, f)| set_of(f)).collect();
    let mut named = Vec::new();
    let mut unnamed = Vec::new();
    for f in p.restricted.iter().filter(|f| f.dim == 2) {
        let s = face_set(&p.big, f);
        let img: Vec<RationalVector> = p.image(&s).iter().map(LatticeVector::to_rational).collect();
        let img_poly = Polytope::hull(&img).expect("nonempty");
        let injective = img_poly.dim() == 2 && img_poly.vertices().len() == s.len();
        let in_face = p.dual.smallest_face_containing(&img).is_some_and(|t| t.dim <= 2);
        if (injective && in_face) || kernel.contains(&s) {
            named.push(f.clone());
        } else {
            unnamed.push(f.clone());
        }
    }
    (named, unnamed)
}

fn final_agreement(p: &GrassmannPipeline, seed: u64) -> Result<Check> {
    let jp = p.induced.function();
    let hp = p.compatible_mpcp.function();
    let boundary = PlConvexFunction::from_polytope(&p.big.dual()?);
    let agree = |x: &RationalVector| -> Result<bool> {
        let lhs = jp.evaluate(x)?;
        let rhs = hp.evaluate(&p.projection.apply_rational(x)?)? + boundary.evaluate(x)?;
        Ok(lhs == rhs)
    };
    let (named, unnamed) = named_faces(p);
    let mut mismatches = Vec::new();
    let mut evaluations = 0usize;
    for (idx, f) in named.iter().enumerate() {
        let poly = p.big.face_polytope(f);
        for x in poly.lattice_points() {
            evaluations += 1;
            if !agree(&x.to_rational())? {
                mismatches.push(json!({"face": face_set(&p.big, f), "point": x}));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx as u64);
        let verts = poly.vertices();
        for _ in 0..20 {
            let mut x = RationalVector::zero(5);
            for v in verts {
                let w = q(rng.gen_range(1..=97), rng.gen_range(1..=97));
                x = x.checked_add(&v.scale(&w))?;
            }
            evaluations += 1;
            if !agree(&x)? {
                mismatches.push(json!({"face": face_set(&p.big, f), "point": x}));
            }
        }
    }
    let mut unnamed_agree = true;
    for f in &unnamed {
        for x in p.big.face_polytope(f).lattice_points() {
            unnamed_agree &= agree(&x.to_rational())?;
        }
    }
    let unnamed_sets: Vec<VertexSet> = unnamed.iter().map(|f| face_set(&p.big, f)).collect();
    let ok = mismatches.is_empty() && !named.is_empty();
    Ok(Check::new(
        "final-agreement",
        "",
        ok,
        json!({"named_cones": named.len(), "evaluations": evaluations, "mismatches": mismatches,
               "unnamed_cones": unnamed_sets, "unnamed_agree_at_lattice_points": unnamed_agree}),
        json!({"mismatches": []}),
    ))
}

fn final_fan_map(p: &GrassmannPipeline) -> Result<Check> {
    let refined = Fan::is_fan_map(&p.projection, &p.refined_restricted, &p.compatible_fan)?;
    let induced = Fan::is_fan_map(&p.projection, &p.induced_restricted, &p.compatible_fan)?;
    let offending: Vec<VertexSet> = refined.offending.iter().map(|c| set_of(c.rays())).collect();
    Ok(Check::new(
        "final-fan-map",
        "",
        refined.holds && induced.holds,
        json!({"refined_holds": refined.holds, "induced_holds": induced.holds, "refined_offending": offending,
               "refined_maximal_cones": p.refined_restricted.maximal_cones().len(), "induced_maximal_cones": p.induced_restricted.maximal_cones().len()}),
        json!({"refined_holds": true, "induced_holds": true}),
    ))
}

fn final_induced(p: &GrassmannPipeline) -> Result<Check> {
    let mut got = BTreeMap::new();
    let mut want = BTreeMap::new();
    let mut ok = true;
    for name in ["e1", "e2", "e3", "e4"] {
        let face = Polytope::hull_lattice(&p.kernel_face(name))?;
        let g = induced_vertex_sets(&p.induced, &face);
        let w = p.expected_induced_cells(name);
        ok &= g == w;
        got.insert(name, json_sets(&g));
        want.insert(name, json_sets(&w));
    }
    Ok(Check::new("final-induced-subdivisions", "", ok, json(&got), json(&want)))
}

fn induced_squares(p: &GrassmannPipeline) -> Result<Check> {
    let square_face = Polytope::hull_lattice(&p.fixture.square_face)?;
    let mut squares: Vec<Vec<LatticeVector>> = Vec::new();
    let mut non_simplicial_elsewhere = Vec::new();
    let mut non_empty = Vec::new();
    for f in p.restricted.iter().filter(|f| f.dim == 2) {
        let poly = p.big.face_polytope(f);
        for cell in induced_point_sets(&p.induced, &poly) {
            let hull = Polytope::hull_lattice(&cell)?;
            let nverts = hull.vertices().len();
            let inside_square_face = cell.iter().all(|x| square_face.contains_lattice(x));
            if nverts > 3 {
                if inside_square_face {
                    if !squares.iter().any(|s| set_of(s) == set_of(&cell)) {
                        squares.push(cell);
                    }
                } else {
                    non_simplicial_elsewhere.push(cell);
                }
            } else if !inside_square_face && cell.len() != 3 {
                non_empty.push(cell);
            }
        }
    }
    let is_unit_square = |s: &Vec<LatticeVector>| {
        Polytope::hull_lattice(s).is_ok_and(|h| h.vertices().len() == 4 && h.lattice_points().len() == 4)
    };
    let want_images: BTreeSet<VertexSet> = p.fixture.square_images.iter().map(set_of).collect();
    let got_images: BTreeSet<VertexSet> = squares
        .iter()
        .map(|s| {
            let img = Polytope::hull_lattice(&p.image(&set_of(s))).expect("nonempty");
            lattice_vertex_set(&img)
        })
        .collect();
    let mut splits = Vec::new();
    for s in &squares {
        let hull = Polytope::hull_lattice(s)?;
        let inner: Vec<Vec<LatticeVector>> = induced_point_sets(&p.induced_mpcp.subdivision, &square_face)
            .into_iter()
            .filter(|c| c.iter().all(|x| hull.contains_lattice(x)))
            .collect();
        splits.push(inner);
    }
    let split_ok = splits.iter().all(|cells| cells.len() == 2 && cells.iter().all(|c| c.len() == 3));
    let ok = squares.len() == 2
        && squares.iter().all(is_unit_square)
        && non_simplicial_elsewhere.is_empty()
        && non_empty.is_empty()
        && got_images == want_images
        && split_ok;
    Ok(Check::new(
        "induced-squares",
        "",
        ok,
        json!({"squares": squares, "square_images": json_sets(&got_images), "non_simplicial_elsewhere": non_simplicial_elsewhere,
               "non_empty_triangles": non_empty, "square_splits": splits}),
        json!({"squares": 2, "square_images": json_sets(&want_images), "non_simplicial_elsewhere": [], "non_empty_triangles": [],
               "triangles_per_square": 2}),
    ))
}

pub(super) fn face_drawing(name: &str) -> Result<FaceDrawing> {
    let p = grassmann_pipeline()?;
    let (title, face_pts, cells): (&str, Vec<LatticeVector>, Vec<Vec<LatticeVector>>) = match name {
        "e1" | "e2" | "e4" => {
            let face = p.kernel_face(name);
            let fan = p.split_fan(false)?;
            let cells = p.split_cells(&fan, &face)?.into_iter().map(|s| s.into_iter().collect()).collect();
            ("split at the kernel point", face, cells)
        }
        "e1-induced" | "e2-induced" | "e3" | "e4-induced" => {
            let face = p.kernel_face(name.trim_end_matches("-induced"));
            let poly = Polytope::hull_lattice(&face)?;
            ("induced subdivision", face, induced_point_sets(&p.induced, &poly))
        }
        "square-splits" => {
            let poly = Polytope::hull_lattice(&p.fixture.square_face)?;
            ("MPCP refinement", p.fixture.square_face.clone(), induced_point_sets(&p.induced_mpcp.subdivision, &poly))
        }
        "S1" => {
            let face = p.dual_face(name).expect("registered");
            let poly = Polytope::hull_lattice(&face)?;
            ("MPCP triangulation", face, induced_point_sets(&p.compatible_mpcp.subdivision, &poly))
        }
        "v1v2v4" | "v1v4v6" | "v1v3v4" | "v1v4v5" => {
            let face = p.dual_face(name).expect("registered");
            let poly = Polytope::hull_lattice(&face)?;
            ("compatible function", face, induced_point_sets(&p.compatible, &poly))
        }
        "L" => {
            let face = p.fixture.node_segment.to_vec();
            let poly = Polytope::hull_lattice(&face)?;
            ("MPCP subdivision", face, induced_point_sets(&p.compatible_mpcp.subdivision, &poly))
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let poly = Polytope::hull_lattice(&face_pts)?;
    let points = poly.lattice_points();
    let labels = p.labels().into_iter().filter(|(_, x)| poly.contains_lattice(x)).collect();
    Ok(FaceDrawing { name: name.to_string(), title: format!("{name}: {title}"), points, cells, labels })
}

