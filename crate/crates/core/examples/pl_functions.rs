//! Piecewise linear convex functions: Newton polytopes, pullbacks, sums and section functions.

use mirrortoric::scenarios::fixtures::GrassmannFixture;
use mirrortoric::PlConvexFunction;

fn main() -> mirrortoric::Result<()> {
    let fixture = GrassmannFixture::new()?;
    let phi = [fixture.nef_function(0)?, fixture.nef_function(1)?];
    for (i, f) in phi.iter().enumerate() {
        let newton = f.newton()?;
        println!("nef part {}: Newton polytope with vertices", i + 1);
        for v in newton.vertices() {
            println!("  {v}");
        }
    }
    let sum = phi[0].add(&phi[1])?;
    println!("sum is the anticanonical function: {}", sum.newton()? == fixture.simplex.dual()?);

    let h = phi[1].pullback(&fixture.embedding)?;
    for u in &fixture.grassmann_rays {
        println!("pulled-back second part at {u}: {}", h.evaluate_lattice(u)?);
    }

    let s = &fixture.section_values[0];
    let section = PlConvexFunction::section_function(&fixture.nef_parts[s.part], &s.m)?;
    println!("section function of {} at {}: {}", s.m, s.ray, section.evaluate_lattice(&s.ray)?);
    Ok(())
}
