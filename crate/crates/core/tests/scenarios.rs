use std::collections::BTreeSet;

use mirrortoric::birational::{verify_factored_identity, verify_theorem, Identity, Theorem};
use mirrortoric::render::{cells_from_svg, render_svg};
use mirrortoric::scenarios::{face_drawing, face_names, run_suite, Suite, SuiteOptions};
use mirrortoric::LatticeVector;

fn set(cells: &[Vec<LatticeVector>]) -> BTreeSet<BTreeSet<LatticeVector>> {
    cells.iter().map(|c| c.iter().cloned().collect()).collect()
}

#[test]
fn corrupted_fixture_fails_only_the_printed_comparisons() {
    let opts = SuiteOptions { samples: 5, corrupt: true, ..SuiteOptions::default() };
    let r = run_suite(Suite::P24, &opts).unwrap();
    for id in ["newton-polytopes", "big-polytope-image"] {
        assert!(!r.check(id).unwrap().passed, "{id}");
    }
    assert!(r.check("dual-vertices").unwrap().passed);
    assert!(r.check("final-agreement").unwrap().passed);
}

#[test]
fn corrupted_maps_are_rejected() {
    for thm in [Theorem::Quartic, Theorem::Weighted] {
        let r = verify_theorem(thm, 10, 7, true).unwrap();
        assert!(!r.passed());
        assert!(!r.failures.is_empty());
    }
    for id in [Identity::Quartic, Identity::Weighted] {
        assert!(!verify_factored_identity(id, true).unwrap().holds);
    }
}

#[test]
fn every_registered_face_renders_its_computed_cells() {
    for suite in Suite::ALL {
        for name in face_names(suite) {
            let d = face_drawing(suite, name).unwrap();
            let svg = render_svg(&d).unwrap();
            let back = cells_from_svg(&svg).unwrap();
            assert_eq!(set(&back), set(&d.cells), "{suite}/{name}");
            assert_eq!(svg.matches("class=\"point\"").count(), d.points.len());
        }
    }
}

#[test]
fn drawn_cell_counts() {
    let count = |s: Suite, n: &str| face_drawing(s, n).unwrap().cells.len();
    assert_eq!(count(Suite::P24, "e1"), 2);
    assert_eq!(count(Suite::P24, "e2"), 2);
    assert_eq!(count(Suite::P24, "e4"), 3);
    assert_eq!(count(Suite::P24, "e3"), 4);
    assert_eq!(count(Suite::P24, "e4-induced"), 6);
    assert_eq!(count(Suite::P24, "L"), 4);
    assert_eq!(count(Suite::P11222, "A"), 4);
    assert_eq!(count(Suite::P11222, "A-refined"), 16);
    let s1 = face_drawing(Suite::P24, "S1").unwrap();
    assert!(s1.cells.iter().all(|c| c.len() == 3));
    assert_eq!(s1.cells.len(), 32);
}

#[test]
fn unknown_face_is_an_error() {
    assert!(face_drawing(Suite::P11222, "e4").is_err());
}
