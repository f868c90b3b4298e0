//! Exact rationals, lattice vectors and integer kernels.

use mirrortoric::exactnum::{fmt_rational, hermite_normal_form, integer_kernel, parse_rational, q};
use mirrortoric::{lv, LatticeMatrix};

fn main() -> mirrortoric::Result<()> {
    let x = q(3, 4) + parse_rational("-5/6")?;
    println!("3/4 + -5/6 = {}", fmt_rational(&x));

    let v = lv![6, -4, 10];
    println!("{v} has content {} and primitive direction {}", v.content(), v.primitive()?);

    let m = LatticeMatrix::from_i64_rows(&[&[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, 1]])?;
    println!("rank {} kernel {:?}", m.rank(), m.kernel_basis());

    let rows = [lv![2, 4, 6], lv![1, 3, 5]];
    println!("integer kernel of the rows: {:?}", integer_kernel(&rows, 3));
    println!("lattice they span, in Hermite form: {:?}", hermite_normal_form(&rows));
    Ok(())
}
