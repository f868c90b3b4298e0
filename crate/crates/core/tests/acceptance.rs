//! The twelve acceptance criteria, one pass/fail line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;

use mirrortoric::scenarios::{run_suite, Suite, SuiteOptions, SuiteReport};
use rand::Rng;

const SEED: u64 = 7;
const SAMPLES: usize = 100;
const CASES: usize = 50;

fn report(suite: Suite) -> &'static SuiteReport {
    static P24: OnceLock<SuiteReport> = OnceLock::new();
    static P11222: OnceLock<SuiteReport> = OnceLock::new();
    let cell = match suite {
        Suite::P24 => &P24,
        Suite::P11222 => &P11222,
    };
    cell.get_or_init(|| {
        let opts = SuiteOptions { seed: SEED, samples: SAMPLES, corrupt: false };
        run_suite(suite, &opts).expect("suite runs")
    })
}

/// Failed check ids among `ids`, with their computed values.
fn checks(suite: Suite, ids: &[&str]) -> Result<(), String> {
    let r = report(suite);
    let mut failed = Vec::new();
    for id in ids {
        match r.check(id) {
            Some(c) if c.passed => {}
            Some(c) => failed.push(format!("{suite}/{id}: computed {}", c.computed)),
            None => failed.push(format!("{suite}/{id}: missing")),
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(failed.join("\n    "))
    }
}

fn theorems() -> Result<(), String> {
    checks(Suite::P24, &["factored-identity", "birational-theorem"])?;
    checks(Suite::P11222, &["factored-identity", "birational-theorem"])?;
    for suite in Suite::ALL {
        let c = report(suite).check("birational-theorem").expect("registered");
        let ok = c.computed["successes"] == SAMPLES && c.computed["reverse_successes"] == SAMPLES;
        if !ok {
            return Err(format!("{suite}: {}", c.computed));
        }
    }
    Ok(())
}

fn property_suites() -> Result<(), String> {
    let mut rng = common::rng(SEED);
    for i in 0..CASES {
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=5);
        let pts = common::random_points(&mut rng, m, n, 2);
        let p = common::random_matrix(&mut rng, m, k);
        common::check_newt_law(&pts, &p).map_err(|e| format!("pullback law case {i}: {e}"))?;
    }
    for i in 0..CASES {
        let d = if i % 2 == 0 { 2 } else { 3 };
        let delta = common::random_reflexive(&mut rng, d, 15);
        let n = rng.gen_range(1..=4);
        let newton = common::random_points(&mut rng, d, n, 2);
        let probes: Vec<_> = (0..5).map(|_| common::random_rational_point(&mut rng, &delta)).collect();
        common::check_lower_hull_parts(&delta, &newton, &probes).map_err(|e| format!("lower hull case {i}: {e}"))?;
    }
    for i in 0..CASES {
        let d = rng.gen_range(2..=3);
        let a = common::random_body(&mut rng, d);
        let b = common::random_body(&mut rng, d);
        common::check_dual_involution(&a).map_err(|e| format!("dual involution case {i}: {e}"))?;
        let probes = common::random_points(&mut rng, d, 10, 5);
        common::check_minkowski_addition(&a, &b, &probes).map_err(|e| format!("Minkowski case {i}: {e}"))?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Result<(), String>);

const CRITERIA: [Criterion; 12] = [
    ("dual of the degenerate Grassmannian polytope", || checks(Suite::P24, &["dual-vertices"])),
    ("Newton polytopes of the nef functions", || checks(Suite::P24, &["newton-polytopes"])),
    ("image of the big polytope and pulled-back values", || checks(Suite::P24, &["big-polytope-image"])),
    ("classification of 2-faces", || checks(Suite::P24, &["two-face-classification"])),
    ("removal conditions and section values", || checks(Suite::P24, &["removal-conditions"])),
    ("split restricted fan maps into the 3-skeleton", || {
        checks(Suite::P24, &["nef-part-faces", "kernel-splits", "refined-fan-map"])
    }),
    ("MPCP refinement of the compatible function", || checks(Suite::P24, &["compatible-lift", "node-segment"])),
    ("induced function on the big polytope", || {
        checks(Suite::P24, &["final-agreement", "final-fan-map", "final-induced-subdivisions"])
    }),
    ("two squares in the induced fan", || checks(Suite::P24, &["induced-squares"])),
    ("birational theorems and factored identities", theorems),
    ("weighted projective example", || {
        checks(Suite::P11222, &["second-pullback-newton", "not-contained", "listed-faces", "face-a-subdivision"])
    }),
    ("property suites", property_suites),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, (name, run)) in CRITERIA.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(()) => println!("criterion {:2} PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}\n    {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
