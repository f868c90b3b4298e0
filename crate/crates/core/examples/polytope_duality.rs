//! Hulls, duals, faces and lattice points of a reflexive polytope.

use mirrortoric::scenarios::fixtures::GrassmannFixture;

fn main() -> mirrortoric::Result<()> {
    let fixture = GrassmannFixture::new()?;
    let delta = fixture.degenerate_grassmann_polytope()?;
    println!("polytope of dimension {} with {} vertices", delta.dim(), delta.vertices().len());
    println!("reflexive: {}", delta.is_reflexive());

    let dual = delta.dual()?;
    println!("dual vertices:");
    for v in dual.vertices() {
        println!("  {v}");
    }
    for k in 0..dual.dim() {
        println!("  {} faces of dimension {k}", dual.faces(k).len());
    }
    println!("dual has {} lattice points", dual.lattice_points().len());
    println!("dual of the dual is the original: {}", dual.dual()? == delta);
    Ok(())
}
