//! The quartic pipeline: restricted fan, compatible function, its MPCP refinement and the induced function.

use mirrortoric::scenarios::grassmann_pipeline;

fn main() -> mirrortoric::Result<()> {
    let p = grassmann_pipeline()?;
    println!("big polytope: {} vertices, {} lattice points", p.big.vertices().len(), p.big.lattice_points().len());
    println!("faces removed by the listed conditions: {}", p.removed.len());
    println!("faces removed by the section test: {}", p.section_removed.len());
    println!("restricted fan: {} maximal cones", p.restricted_fan.maximal_cones().len());
    println!("compatible function: {} cells", p.compatible.cells().len());
    println!("MPCP refinement: {} cells, {:?}", p.compatible_mpcp.subdivision.cells().len(), p.compatible_mpcp.check());
    println!("induced function: {} cells, refined to {}", p.induced.cells().len(), p.induced_mpcp.subdivision.cells().len());
    println!("restricted induced fan: {} maximal cones", p.induced_restricted.maximal_cones().len());
    Ok(())
}
