//! The two worked examples and their verification suites.

pub mod fixtures;
mod grassmann;
mod weighted;

pub use grassmann::{grassmann_pipeline, GrassmannPipeline};
pub use weighted::WeightedData;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactnum::LatticeVector;
use crate::polytope::Polytope;
use crate::subdivision::LiftedSubdivision;

/// One verified claim with the computed and expected values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub passed: bool,
    pub computed: Value,
    pub expected: Value,
}

impl Check {
    pub fn new(id: &str, claim: &str, passed: bool, computed: Value, expected: Value) -> Check {
        Check { id: id.to_string(), claim: claim.to_string(), passed, computed, expected }
    }

    fn from_error(id: &str, claim: &str, e: Error) -> Check {
        Check::new(id, claim, false, Value::String(format!("error: {e}")), Value::Null)
    }
}

/// The checks of one suite, in a fixed order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub samples: usize,
    pub conventions: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    fn new(suite: Suite, opts: &SuiteOptions, checks: Vec<Check>) -> SuiteReport {
        let passed = checks.iter().filter(|c| c.passed).count();
        SuiteReport {
            suite,
            seed: opts.seed,
            samples: opts.samples,
            conventions: conventions(),
            failed: checks.len() - passed,
            passed,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (seed {}, {} samples)\n", self.suite, self.seed, self.samples);
        let w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            out.push_str(&format!("  {:4}  {:w$}  {}\n", if c.passed { "PASS" } else { "FAIL" }, c.id, c.claim));
        }
        out.push_str(&format!("  {} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

fn conventions() -> Vec<String> {
    [
        "dual maps are transposes of the printed embedding matrices; images of points and polytopes apply the transpose",
        "pulling back a function composes it with the embedding itself",
        "the Newton polytope of f is {u : <u,v> >= -f(v) for all v}; the dual of P is {u : <u,v> >= -1 on P}",
        "a lifted subdivision's cells are the lower faces of the lifted points; functions are the max of the cell covectors",
        "rational numbers are written as p/q strings, lattice vectors as integer arrays",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

/// The registered suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    P24,
    P11222,
}

impl Suite {
    pub const ALL: [Suite; 2] = [Suite::P24, Suite::P11222];

    pub fn name(self) -> &'static str {
        match self {
            Suite::P24 => "p24",
            Suite::P11222 => "p11222",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Parameters of a suite run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Samples per birational theorem.
    pub samples: usize,
    /// Run against a fixture with one printed vertex moved.
    pub corrupt: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 7, samples: 100, corrupt: false }
    }
}

/// Runs every check of a suite. Failed checks are recorded and the suite continues.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::P24 => grassmann::checks(opts)?,
        Suite::P11222 => weighted::checks(opts)?,
    };
    Ok(SuiteReport::new(suite, opts, checks))
}

/// A face prepared for drawing: its lattice points and the cells of a computed subdivision.
#[derive(Clone, Debug)]
pub struct FaceDrawing {
    pub name: String,
    pub title: String,
    pub points: Vec<LatticeVector>,
    /// Cells as lattice point sets.
    pub cells: Vec<Vec<LatticeVector>>,
    /// Labelled points.
    pub labels: Vec<(String, LatticeVector)>,
}

/// Names of the faces that can be drawn for a suite.
pub fn face_names(suite: Suite) -> Vec<&'static str> {
    match suite {
        Suite::P24 => grassmann::FACE_NAMES.to_vec(),
        Suite::P11222 => weighted::FACE_NAMES.to_vec(),
    }
}

/// The computed subdivision of a named face.
pub fn face_drawing(suite: Suite, name: &str) -> Result<FaceDrawing> {
    match suite {
        Suite::P24 => grassmann::face_drawing(name),
        Suite::P11222 => weighted::face_drawing(name),
    }
}

pub(crate) type VertexSet = BTreeSet<LatticeVector>;

pub(crate) fn set_of<'a>(pts: impl IntoIterator<Item = &'a LatticeVector>) -> VertexSet {
    pts.into_iter().cloned().collect()
}

pub(crate) fn lattice_vertex_set(p: &Polytope) -> VertexSet {
    p.lattice_vertices().expect("lattice polytope").into_iter().collect()
}

/// Vertex sets of the cells a subdivision induces on a face.
pub(crate) fn induced_vertex_sets(sub: &LiftedSubdivision, face: &Polytope) -> BTreeSet<VertexSet> {
    sub.induced_on_face(face)
        .into_iter()
        .map(|cell| {
            let pts: Vec<LatticeVector> = cell.iter().map(|&i| sub.points()[i].clone()).collect();
            lattice_vertex_set(&Polytope::hull_lattice(&pts).expect("nonempty cell"))
        })
        .collect()
}

/// Lattice point sets of the cells a subdivision induces on a face.
pub(crate) fn induced_point_sets(sub: &LiftedSubdivision, face: &Polytope) -> Vec<Vec<LatticeVector>> {
    sub.induced_on_face(face).into_iter().map(|cell| cell.iter().map(|&i| sub.points()[i].clone()).collect()).collect()
}

pub(crate) fn json_sets(sets: &BTreeSet<VertexSet>) -> Value {
    serde_json::to_value(sets.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>()).expect("serializable")
}

pub(crate) fn json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}
