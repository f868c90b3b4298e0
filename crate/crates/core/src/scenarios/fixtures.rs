//! Input data for the two worked examples, entered exactly as printed.

use crate::error::Result;
use crate::exactnum::{qi, LatticeMatrix, LatticeVector, Rational};
use crate::plconvex::PlConvexFunction;
use crate::polytope::Polytope;
use crate::subdivision::LiftedSubdivision;

fn rows(r: &[&[i64]]) -> Vec<LatticeVector> {
    r.iter().map(|x| LatticeVector::from_i64s(x)).collect()
}

/// A known value of a section function: `phi^part_m(ray) = value`.
#[derive(Clone, Debug)]
pub struct SectionValue {
    /// 0 for the first nef part, 1 for the second.
    pub part: usize,
    pub m: LatticeVector,
    pub ray: LatticeVector,
    pub value: i64,
}

/// The quartic-in-the-degenerate-Grassmannian example.
#[derive(Clone, Debug)]
pub struct GrassmannFixture {
    /// The simplex whose face fan is the fan of projective 5-space.
    pub simplex: Polytope,
    /// Convex hulls of the origin and the simplex vertices where each nef function is 1.
    pub nef_parts: [Polytope; 2],
    /// Values of the two nef functions at the simplex vertices, in the order of `simplex_rays`.
    pub nef_values: [Vec<i64>; 2],
    pub simplex_rays: Vec<LatticeVector>,
    /// The printed vertex rows of the two Newton polytopes.
    pub newton_rows: [Vec<LatticeVector>; 2],
    /// The toric embedding (5 x 4), acting on columns.
    pub embedding: LatticeMatrix,
    /// Rays of the degenerate Grassmannian fan, in printed order.
    pub grassmann_rays: Vec<LatticeVector>,
    /// Printed vertices of the dual of the degenerate Grassmannian polytope.
    pub dual_rows: Vec<LatticeVector>,
    /// Printed images of the four remaining vertices of the second Newton polytope.
    pub image_rows: Vec<LatticeVector>,
    /// Center of the square 2-face of the dual polytope.
    pub square_center: LatticeVector,
    pub kernel: LatticeVector,
    /// Endpoints of the segment dual to the square face.
    pub node_segment: [LatticeVector; 2],
    /// Rows of the matrix in the second removal condition.
    pub removal_rows: Vec<LatticeVector>,
    /// The vertices named by the first removal condition.
    pub removal_points: Vec<LatticeVector>,
    pub section_values: Vec<SectionValue>,
    /// The face cut in half through the kernel point (two of them) and the quadrilateral split
    /// three ways, then the face mapped onto a segment.
    pub kernel_faces: Vec<(&'static str, Vec<LatticeVector>)>,
    /// The face over which the induced subdivision keeps two squares.
    pub square_face: Vec<LatticeVector>,
    /// The two segments of the node segment that carry the squares' images.
    pub square_images: Vec<[LatticeVector; 2]>,
}

impl GrassmannFixture {
    pub fn new() -> Result<Self> {
        let simplex_rays = rows(&[
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
            &[-1, -1, -1, -1, -1],
        ]);
        let simplex = Polytope::hull_lattice(&simplex_rays)?;
        let nef_values = [vec![1, 1, 1, 1, 0, 0], vec![0, 0, 0, 0, 1, 1]];
        let part = |vals: &[i64]| -> Result<Polytope> {
            let mut pts = vec![LatticeVector::zero(5)];
            pts.extend(simplex_rays.iter().zip(vals).filter(|(_, &v)| v == 1).map(|(r, _)| r.clone()));
            Polytope::hull_lattice(&pts)
        };
        let nef_parts = [part(&nef_values[0])?, part(&nef_values[1])?];
        let newton_rows = [
            rows(&[
                &[-1, -1, -1, -1, 0],
                &[3, -1, -1, -1, 0],
                &[-1, 3, -1, -1, 0],
                &[-1, -1, 3, -1, 0],
                &[-1, -1, -1, 3, 0],
                &[-1, -1, -1, -1, 4],
            ]),
            rows(&[
                &[0, 0, 0, 0, -1],
                &[2, 0, 0, 0, -1],
                &[0, 2, 0, 0, -1],
                &[0, 0, 2, 0, -1],
                &[0, 0, 0, 2, -1],
                &[0, 0, 0, 0, 1],
            ]),
        ];
        let embedding = LatticeMatrix::from_i64_rows(&[
            &[0, 0, 0, -1],
            &[-1, 1, 0, 0],
            &[-1, 0, 1, -1],
            &[-1, 0, 0, -1],
            &[-1, 1, 0, -1],
        ])?;
        let grassmann_rays = rows(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, -1, -1, 0],
            &[1, 1, 0, -1],
        ]);
        let dual_rows = rows(&[
            &[-1, -1, -1, -1],
            &[3, -1, -1, -1],
            &[-1, 3, -1, -1],
            &[-1, -1, 3, -1],
            &[3, -1, -1, 3],
            &[-1, 3, -1, 3],
        ]);
        let image_rows = rows(&[&[1, -1, 0, -1], &[-1, 1, 0, 1], &[-1, -1, 2, -1], &[-1, -1, 0, -1]]);
        let w = &newton_rows[0];
        let z = &newton_rows[1];
        let kernel = LatticeVector::from_i64s(&[1, 1, 0, 0, -1]);
        let section_values = vec![
            sv(1, &[0, 0, 0, 0, 1], &[-1, -1, -1, -1, 4], 4),
            sv(1, &[0, 0, 0, 0, 1], &[0, 0, 0, 0, 1], 2),
            sv(1, &[-1, -1, -1, -1, -1], &[-1, -1, -1, -1, 0], 4),
            sv(1, &[-1, -1, -1, -1, -1], &[0, 0, 0, 0, -1], 2),
            sv(0, &[1, 0, 0, 0, 0], &[3, -1, -1, -1, 0], 4),
            sv(0, &[1, 0, 0, 0, 0], &[2, 0, 0, 0, -1], 2),
            sv(0, &[0, 1, 0, 0, 0], &[-1, 3, -1, -1, 0], 4),
            sv(0, &[0, 1, 0, 0, 0], &[0, 2, 0, 0, -1], 2),
            sv(0, &[0, 0, 1, 0, 0], &[-1, -1, 3, -1, 0], 4),
            sv(0, &[0, 0, 1, 0, 0], &[0, 0, 2, 0, -1], 2),
            sv(0, &[0, 0, 0, 1, 0], &[-1, -1, -1, 3, 0], 4),
            sv(0, &[0, 0, 0, 1, 0], &[0, 0, 0, 2, -1], 2),
        ];
        let kernel_faces = vec![
            ("e1", vec![z[1].clone(), z[2].clone(), z[3].clone()]),
            ("e2", vec![z[1].clone(), z[2].clone(), z[4].clone()]),
            ("e3", vec![z[3].clone(), z[4].clone(), w[3].clone(), w[4].clone()]),
            ("e4", vec![z[1].clone(), z[2].clone(), w[1].clone(), w[2].clone()]),
        ];
        Ok(GrassmannFixture {
            simplex,
            nef_parts,
            nef_values,
            simplex_rays,
            newton_rows: newton_rows.clone(),
            embedding,
            grassmann_rays,
            dual_rows,
            image_rows,
            square_center: LatticeVector::from_i64s(&[1, 1, -1, 1]),
            kernel,
            node_segment: [LatticeVector::from_i64s(&[-1, -1, -1, -1]), LatticeVector::from_i64s(&[-1, -1, 3, -1])],
            removal_rows: w[1..5].to_vec(),
            removal_points: vec![z[5].clone(), z[0].clone()],
            section_values,
            kernel_faces,
            square_face: vec![w[3].clone(), w[4].clone(), z[3].clone(), z[4].clone()],
            square_images: vec![
                [LatticeVector::from_i64s(&[-1, -1, 0, -1]), LatticeVector::from_i64s(&[-1, -1, 1, -1])],
                [LatticeVector::from_i64s(&[-1, -1, 1, -1]), LatticeVector::from_i64s(&[-1, -1, 2, -1])],
            ],
        })
    }

    /// The dual map, the transpose of the embedding.
    pub fn projection(&self) -> LatticeMatrix {
        self.embedding.transpose()
    }

    /// The nef function with the given values on the simplex vertices, as the lower hull of those
    /// values (and 0 at the origin) over the simplex.
    pub fn nef_function(&self, i: usize) -> Result<PlConvexFunction> {
        simplex_function(&self.simplex, &self.simplex_rays, &self.nef_values[i])
    }

    pub fn degenerate_grassmann_polytope(&self) -> Result<Polytope> {
        Polytope::hull_lattice(&self.grassmann_rays)
    }

    pub fn big(&self) -> Result<Polytope> {
        let mut pts = self.newton_rows[0].clone();
        pts.extend(self.newton_rows[1].iter().cloned());
        Polytope::hull_lattice(&pts)
    }
}

fn sv(part: usize, m: &[i64], ray: &[i64], value: i64) -> SectionValue {
    SectionValue { part, m: LatticeVector::from_i64s(m), ray: LatticeVector::from_i64s(ray), value }
}

/// The function with the given values on the vertices of a simplex containing the origin, linear
/// on the cones over its facets.
pub fn simplex_function(simplex: &Polytope, rays: &[LatticeVector], values: &[i64]) -> Result<PlConvexFunction> {
    let mut heights: Vec<(LatticeVector, Rational)> =
        rays.iter().zip(values).map(|(r, &v)| (r.clone(), qi(v))).collect();
    heights.push((LatticeVector::zero(simplex.ambient_dim()), qi(0)));
    Ok(LiftedSubdivision::lower_hull(simplex, &heights)?.function())
}

/// The weighted projective space example.
#[derive(Clone, Debug)]
pub struct WeightedFixture {
    pub polytope_vertices: Vec<LatticeVector>,
    /// The printed extra lattice point besides the vertices and the origin.
    pub extra_point: LatticeVector,
    /// The toric embedding into projective 5-space (5 x 4).
    pub embedding: LatticeMatrix,
    /// Printed vertices of the Newton polytope of the pulled-back second nef function.
    pub newton_rows: Vec<LatticeVector>,
    /// The 2-face of the dual polytope where the singularities sit.
    pub singular_face: Vec<LatticeVector>,
    /// The listed 2-faces of the big polytope whose images lie over the singular face.
    pub listed_faces: Vec<(&'static str, Vec<LatticeVector>)>,
}

impl WeightedFixture {
    pub fn new() -> Result<Self> {
        let g = GrassmannFixture::new()?;
        let w = &g.newton_rows[0];
        let z = &g.newton_rows[1];
        Ok(WeightedFixture {
            polytope_vertices: rows(&[&[-1, -2, -2, -2], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
            extra_point: LatticeVector::from_i64s(&[0, -1, -1, -1]),
            embedding: LatticeMatrix::from_i64_rows(&[
                &[0, 0, 0, 1],
                &[0, 0, 1, 0],
                &[0, 1, 0, 0],
                &[1, 0, 0, 0],
                &[2, 0, 0, 0],
            ])?,
            newton_rows: rows(&[&[-2, 0, 0, 0], &[2, 0, 0, 0], &[-2, 2, 0, 0], &[-2, 0, 2, 0], &[-2, 0, 0, 2]]),
            singular_face: rows(&[&[-1, 3, -1, -1], &[-1, -1, 3, -1], &[-1, -1, -1, 3]]),
            listed_faces: vec![
                ("k1", vec![z[1].clone(), z[2].clone(), z[3].clone()]),
                ("k2", vec![w[1].clone(), w[2].clone(), z[1].clone(), z[2].clone()]),
                ("k3", vec![w[1].clone(), w[3].clone(), z[1].clone(), z[3].clone()]),
                ("k4", vec![w[2].clone(), w[3].clone(), z[2].clone(), z[3].clone()]),
                ("k5", vec![w[1].clone(), w[2].clone(), w[3].clone()]),
            ],
        })
    }

    pub fn polytope(&self) -> Result<Polytope> {
        Polytope::hull_lattice(&self.polytope_vertices)
    }

    pub fn projection(&self) -> LatticeMatrix {
        self.embedding.transpose()
    }
}
