//! SVG drawings of subdivided faces.
//!
//! A face is drawn in the coordinates of an exact lattice basis of its affine span, scaled to a
//! fixed canvas. Each cell is one `<polygon class="cell">` whose `data-points` attribute lists the
//! cell's lattice points in ambient coordinates, so a drawing can be read back exactly.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::LatticeVector;
use crate::polytope::{AffineChart, Polytope};
use crate::scenarios::FaceDrawing;

const CANVAS: f64 = 480.0;
const MARGIN: f64 = 40.0;

fn plane(chart: &AffineChart, p: &LatticeVector) -> Result<(f64, f64)> {
    let c = chart.coordinates(p).ok_or_else(|| Error::NotInPolytope(p.to_string()))?;
    let f = |i: usize| c.entries().get(i).and_then(|x| x.to_f64()).unwrap_or(0.0);
    Ok((f(0), f(1)))
}

fn encode(pts: &[LatticeVector]) -> String {
    pts.iter()
        .map(|p| p.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Vertices of a cell in cyclic order.
fn boundary(chart: &AffineChart, cell: &[LatticeVector]) -> Result<Vec<(f64, f64)>> {
    let hull = Polytope::hull_lattice(cell)?;
    let verts = hull.lattice_vertices().ok_or_else(|| Error::Pipeline("non-lattice cell".into()))?;
    let mut xy = verts.iter().map(|v| plane(chart, v)).collect::<Result<Vec<_>>>()?;
    let n = xy.len() as f64;
    let (cx, cy) = xy.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    xy.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
    Ok(xy)
}

/// Draws the lattice points, the cells and the labels of a face of dimension at most 2.
pub fn render_svg(d: &FaceDrawing) -> Result<String> {
    let chart = AffineChart::new(&d.points)?;
    if chart.dim() > 2 {
        return Err(Error::Pipeline(format!("face {} has dimension {}", d.name, chart.dim())));
    }
    let xy = d.points.iter().map(|p| plane(&chart, p)).collect::<Result<Vec<_>>>()?;
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &xy {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1.0);
    let s = (CANVAS - 2.0 * MARGIN) / span;
    let to_canvas = |(x, y): (f64, f64)| (MARGIN + (x - x0) * s, CANVAS - MARGIN - (y - y0) * s);

    let mut out = String::new();
    let w = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    w(
        &mut out,
        format!(r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}" data-face="{}">"#, d.name),
    );
    w(&mut out, "<style>.cell{fill:#e8eef7;stroke:#234;stroke-width:1.5}.point{fill:#123}.label{font:12px sans-serif;fill:#a21}</style>".into());
    w(&mut out, format!("<title>{}</title>", d.title));
    for cell in &d.cells {
        let mut pts = String::new();
        for p in boundary(&chart, cell)? {
            let (x, y) = to_canvas(p);
            let _ = write!(pts, "{x:.2},{y:.2} ");
        }
        w(&mut out, format!(r#"<polygon class="cell" points="{}" data-points="{}"/>"#, pts.trim_end(), encode(cell)));
    }
    for p in &xy {
        let (x, y) = to_canvas(*p);
        w(&mut out, format!(r#"<circle class="point" cx="{x:.2}" cy="{y:.2}" r="3"/>"#));
    }
    for (name, p) in &d.labels {
        let (x, y) = to_canvas(plane(&chart, p)?);
        w(&mut out, format!(r#"<text class="label" x="{:.2}" y="{:.2}">{name}</text>"#, x + 5.0, y - 5.0));
    }
    w(&mut out, "</svg>".into());
    Ok(out)
}

/// The cells of a drawing made by [`render_svg`], read back from their `data-points` attributes.
pub fn cells_from_svg(svg: &str) -> Result<Vec<Vec<LatticeVector>>> {
    let key = "data-points=\"";
    let mut cells = Vec::new();
    for line in svg.lines().filter(|l| l.contains("class=\"cell\"")) {
        let start = line.find(key).ok_or_else(|| Error::Parse("cell without data-points".into()))? + key.len();
        let end = line[start..].find('"').ok_or_else(|| Error::Parse("unterminated data-points".into()))?;
        let cell = line[start..start + end]
            .split(';')
            .map(|p| {
                let xs = p.split(',').map(|x| x.parse::<i64>()).collect::<std::result::Result<Vec<_>, _>>();
                xs.map(|v| LatticeVector::from_i64s(&v)).map_err(|e| Error::Parse(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        cells.push(cell);
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roundtrip() {
        let v = |a: i64, b: i64| LatticeVector::from_i64s(&[a, b, 1]);
        let d = FaceDrawing {
            name: "sq".into(),
            title: "square".into(),
            points: vec![v(0, 0), v(1, 0), v(0, 1), v(1, 1)],
            cells: vec![vec![v(0, 0), v(1, 0), v(1, 1)], vec![v(0, 0), v(0, 1), v(1, 1)]],
            labels: vec![("o".into(), v(0, 0))],
        };
        let svg = render_svg(&d).unwrap();
        assert_eq!(cells_from_svg(&svg).unwrap(), d.cells);
        assert_eq!(svg.matches("<circle").count(), 4);
    }
}
