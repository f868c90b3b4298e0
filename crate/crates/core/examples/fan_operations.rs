//! Fans over faces, cone removal, stellar subdivision and maps of fans.

use mirrortoric::fan::cone_over_face;
use mirrortoric::{lv, Fan, LatticeMatrix, Polytope};

fn main() -> mirrortoric::Result<()> {
    let octahedron = Polytope::hull_lattice(&[lv![1, 0, 0], lv![-1, 0, 0], lv![0, 1, 0], lv![0, -1, 0], lv![0, 0, 1], lv![0, 0, -1]])?;
    let fan = Fan::over_faces(&octahedron)?;
    println!("face fan: {} rays, {} maximal cones", fan.rays().len(), fan.maximal_cones().len());

    let top = octahedron.faces(2).into_iter().next().expect("a facet");
    let cone = cone_over_face(&octahedron, &top)?;
    let fewer = fan.remove_cones(std::slice::from_ref(&cone))?;
    println!("after removing {cone:?}: {} maximal cones", fewer.maximal_cones().len());

    let split = fan.stellar_subdivision(&cone.interior_point())?;
    println!("stellar subdivision at {}: {} maximal cones", cone.interior_point(), split.maximal_cones().len());
    println!("it refines the face fan: {}", split.refines(&fan));

    let flip = LatticeMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])?;
    let verdict = Fan::is_fan_map(&flip, &split, &fan)?;
    println!("swapping two coordinates maps it into the face fan: {}", verdict.holds);
    println!("{}", serde_json::to_string(&fan.skeleton(1).to_json())?);
    Ok(())
}
