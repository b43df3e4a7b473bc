//! Small triangulations used by tests, examples and the command line.

use crate::tri::{parse_input, parse_triangulation, IdealTriangulation};

/// Two-tetrahedron census triangulation of the figure-eight knot exterior.
pub const FIGURE_EIGHT_JSON: &str = include_str!("../fixtures/figure_eight.json");

pub fn figure_eight() -> IdealTriangulation {
    parse_triangulation(FIGURE_EIGHT_JSON).expect("fixture parses")
}

pub fn figure_eight_meridian() -> Vec<String> {
    parse_input(FIGURE_EIGHT_JSON)
        .expect("fixture parses")
        .meridian
}

/// One tetrahedron whose cusp is a Klein bottle.
pub const ONE_TET_KLEIN_CUSP_JSON: &str = include_str!("../fixtures/one_tet_klein_cusp.json");

/// Two tetrahedra, torus cusp, edge valences 11 and 1: no angle structure,
/// strict or partially flat.
pub const VALENCE_ONE_EDGE_JSON: &str = include_str!("../fixtures/valence_one_edge.json");

/// Two tetrahedra, torus cusp, edge valences 4 and 8: only partially flat
/// angle structures.
pub const FLAT_ONLY_JSON: &str = include_str!("../fixtures/flat_only.json");

pub fn one_tet_klein_cusp() -> IdealTriangulation {
    parse_triangulation(ONE_TET_KLEIN_CUSP_JSON).expect("fixture parses")
}

pub fn valence_one_edge() -> IdealTriangulation {
    parse_triangulation(VALENCE_ONE_EDGE_JSON).expect("fixture parses")
}

pub fn flat_only() -> IdealTriangulation {
    parse_triangulation(FLAT_ONLY_JSON).expect("fixture parses")
}
