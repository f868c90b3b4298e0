//! Lower hulls of lifted points, pulling refinements and MPCP certificates.

use mirrortoric::exactnum::qi;
use mirrortoric::subdivision::gkz_mpcp;
use mirrortoric::{lv, LiftedSubdivision, Polytope};

fn main() -> mirrortoric::Result<()> {
    let square = Polytope::hull_lattice(&[lv![1, 1], lv![1, -1], lv![-1, 1], lv![-1, -1]])?;
    let heights: Vec<_> = square
        .lattice_points()
        .into_iter()
        .map(|p| {
            let h = if p.is_zero() { qi(0) } else { qi(1) };
            (p, h)
        })
        .collect();
    let lift = LiftedSubdivision::lower_hull(&square, &heights)?;
    println!("lifted subdivision: {} cells, star-shaped {}", lift.cells().len(), lift.is_star_shaped());
    println!("non-tight points: {:?}", lift.non_tight_points());

    let cert = gkz_mpcp(&square, &lift.function())?;
    println!("MPCP refinement: {} cells after {} pulls, scale {}", cert.subdivision.cells().len(), cert.rounds.len(), cert.scale);
    for r in &cert.rounds {
        println!("  pulled {} by {}: {} -> {} cells", r.point, r.epsilon, r.cells_before, r.cells_after);
    }
    println!("{:?}", cert.check());
    println!("{}", serde_json::to_string(&cert.subdivision.to_json())?);
    Ok(())
}
