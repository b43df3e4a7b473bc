//! The cusp torus of a triangulation.

use super::complex::SurfaceComplex;
use crate::error::{Error, Result};
use crate::tri::IdealTriangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTorus {
    pub complex: SurfaceComplex,
    /// Truncation triangle `(tet, vertex)` behind each triangle, when the
    /// triangle still comes from the triangulation.
    pub origin: Vec<Option<(usize, u8)>>,
}

impl BoundaryTorus {
    /// Wraps a closed surface complex, checking it is a torus.
    pub fn from_complex(complex: SurfaceComplex) -> Result<BoundaryTorus> {
        let summary = complex.summary();
        if !summary.is_torus() {
            return Err(Error::BoundaryNotTorus(format!(
                "{} components, euler characteristic {}, orientable {}",
                summary.components, summary.euler, summary.orientable
            )));
        }
        let origin = vec![None; complex.triangle_count()];
        Ok(BoundaryTorus { complex, origin })
    }

    /// (vertices, edges, triangles).
    pub fn counts(&self) -> (usize, usize, usize) {
        (
            self.complex.vertex_count(),
            self.complex.edge_count(),
            self.complex.triangle_count(),
        )
    }
}

/// Triangle `4 * tet + v` is the truncation triangle at vertex `v` of `tet`;
/// edge ids follow the validator's `B<k>` numbering.
pub fn boundary_complex(tri: &IdealTriangulation) -> Result<BoundaryTorus> {
    let complex = tri.boundary_surface()?;
    let mut torus = BoundaryTorus::from_complex(complex)?;
    torus.origin = (0..4 * tri.tet_count())
        .map(|k| Some((k / 4, (k % 4) as u8)))
        .collect();
    Ok(torus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn census_cusp_counts() {
        let t = boundary_complex(&fixtures::figure_eight()).unwrap();
        assert_eq!(t.counts(), (4, 12, 8));
        assert_eq!(t.origin[5], Some((1, 1)));
    }

    #[test]
    fn klein_cusp_rejected() {
        assert!(matches!(
            boundary_complex(&fixtures::one_tet_klein_cusp()),
            Err(Error::BoundaryNotTorus(_))
        ));
    }
}
