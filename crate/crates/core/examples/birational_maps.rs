//! Laurent polynomials, monomial maps and the birational theorems checked on exact samples.

use mirrortoric::birational::{sample_on_family, verify_factored_identity, verify_theorem, Family, Identity, Ring, Theorem};
use mirrortoric::exactnum::{fmt_rational, q};

fn main() -> mirrortoric::Result<()> {
    let ring = Ring::new(&["x", "y"]);
    let (a, b) = ("(x + y)^2 / (x*y) - 2", "x/y + y/x");
    let f = ring.parse(a)?;
    println!("{a} = {f}, equal to {b}: {}", f.equals(&ring.parse(b)?)?);
    println!("value at (1/2, 3): {}", f.evaluate(&[q(1, 2), q(3, 1)])?);

    let sample = sample_on_family(Family::Conifold, 7)?;
    let values: Vec<String> = sample.values().iter().map(fmt_rational).collect();
    println!("sample on {}: {values:?}, on family {}", Family::Conifold.name(), sample.lies_on_family());

    for thm in [Theorem::Quartic, Theorem::Weighted] {
        let forward = thm.forward();
        println!("{}: {:?}", thm.name(), forward.coordinate_functions()?.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        let report = verify_theorem(thm, 25, 7, false)?;
        println!("  {}/{} forward, {}/{} reverse", report.successes, report.samples, report.reverse_successes, report.samples);
    }
    for id in [Identity::Quartic, Identity::Weighted] {
        let v = verify_factored_identity(id, false)?;
        println!("{id:?} identity holds: {} ({} = {})", v.holds, v.lhs, v.rhs);
    }
    Ok(())
}
