//! Draws the computed subdivision of a named face as SVG.

use mirrortoric::render::{cells_from_svg, render_svg};
use mirrortoric::scenarios::{face_drawing, face_names, Suite};

fn main() -> mirrortoric::Result<()> {
    let suite = Suite::P11222;
    println!("faces of {suite}: {:?}", face_names(suite));
    let drawing = face_drawing(suite, "A")?;
    let svg = render_svg(&drawing)?;
    let path = std::env::temp_dir().join("face_a.svg");
    std::fs::write(&path, &svg)?;
    println!("{}: {} cells written to {}", drawing.title, drawing.cells.len(), path.display());
    println!("read back {} cells", cells_from_svg(&svg)?.len());
    Ok(())
}
