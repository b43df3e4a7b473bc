//! Matching equations over disc-type counts and their fundamental solutions.

mod bounded;
mod hilbert;

pub use bounded::bounded_hilbert_basis;
pub use hilbert::{decompose_into, hilbert_basis, HilbertBasis, HilbertOptions};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::discs::sphere::{boundary_edge, boundary_edge_parts, is_interior};
use crate::discs::DiscType;
use crate::error::{Error, Result};
use crate::perm::{edge_index, Perm4, EDGE_VERTICES};
use crate::tri::IdealTriangulation;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Variable {
    pub tet: usize,
    /// Index into the disc universe.
    pub disc: usize,
}

/// One equation: arcs of one kind on hexagon `face` of tetrahedron `tet`
/// must equal the corresponding arcs on the face glued to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub tet: usize,
    pub face: u8,
    pub to_tet: usize,
    pub to_face: u8,
    /// Sphere edges joined by the arc on the `(tet, face)` side.
    pub arc: (u8, u8),
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchingSystem {
    pub universe: Vec<DiscType>,
    pub variables: Vec<Variable>,
    pub rows: Vec<Row>,
}

/// Image of a sphere edge of hexagon `face` under a face gluing.
fn map_edge(edge: u8, perm: Perm4, to_face: u8) -> u8 {
    let e = edge as usize;
    if is_interior(e) {
        let (i, j) = EDGE_VERTICES[e];
        edge_index(perm.apply(i), perm.apply(j)) as u8
    } else {
        let (v, _) = boundary_edge_parts(e);
        boundary_edge(perm.apply(v), to_face) as u8
    }
}

/// Every disc of the universe in every tetrahedron.
pub fn build_system(tri: &IdealTriangulation, universe: &[DiscType]) -> MatchingSystem {
    let variables = (0..tri.tet_count())
        .flat_map(|tet| (0..universe.len()).map(move |disc| Variable { tet, disc }))
        .collect();
    build_system_with(tri, universe, variables).expect("variables in range by construction")
}

/// Builds the equations over an explicit variable list.
pub fn build_system_with(
    tri: &IdealTriangulation,
    universe: &[DiscType],
    variables: Vec<Variable>,
) -> Result<MatchingSystem> {
    for v in &variables {
        if v.tet >= tri.tet_count() || v.disc >= universe.len() {
            return Err(Error::IndexOutOfRange(format!(
                "variable (tet {}, disc {}) outside the triangulation or universe",
                v.tet, v.disc
            )));
        }
    }
    let counts: Vec<_> = universe.iter().map(DiscType::hexagon_arc_counts).collect();
    let n = variables.len();
    let mut rows = Vec::new();
    for tet in 0..tri.tet_count() {
        for face in 0..4u8 {
            let g = tri.gluing(tet, face);
            if (g.tet, g.face) < (tet, face) {
                continue;
            }
            let back = g.perm.inverse();
            let mut acc: BTreeMap<(u8, u8), Vec<i64>> = BTreeMap::new();
            for (k, var) in variables.iter().enumerate() {
                if var.tet == tet {
                    for (&arc, &c) in &counts[var.disc][face as usize] {
                        acc.entry(arc).or_insert_with(|| vec![0; n])[k] += c as i64;
                    }
                }
                if var.tet == g.tet {
                    for (&(x, y), &c) in &counts[var.disc][g.face as usize] {
                        let (a, b) = (map_edge(x, back, face), map_edge(y, back, face));
                        let arc = (a.min(b), a.max(b));
                        acc.entry(arc).or_insert_with(|| vec![0; n])[k] -= c as i64;
                    }
                }
            }
            for (arc, coeffs) in acc {
                if coeffs.iter().any(|&c| c != 0) {
                    rows.push(Row {
                        tet,
                        face,
                        to_tet: g.tet,
                        to_face: g.face,
                        arc,
                        coeffs,
                    });
                }
            }
        }
    }
    Ok(MatchingSystem {
        universe: universe.to_vec(),
        variables,
        rows,
    })
}

impl MatchingSystem {
    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.coeffs.clone()).collect()
    }

    fn check_dim(&self, v: &[u64]) -> Result<()> {
        if v.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Boundary-edge crossings of each variable's disc.
    pub fn boundary_weights(&self) -> Vec<i64> {
        self.variables
            .iter()
            .map(|v| self.universe[v.disc].boundary_degree() as i64)
            .collect()
    }

    pub fn boundary_degree(&self, v: &[u64]) -> Result<u64> {
        self.check_dim(v)?;
        Ok(self
            .boundary_weights()
            .iter()
            .zip(v)
            .map(|(&w, &c)| w as u64 * c)
            .sum())
    }

    /// The vector with one copy of every vertex-linking triangle, if all
    /// of them are variables.
    pub fn link_vector(&self) -> Option<Vec<u64>> {
        let mut v = vec![0u64; self.dimension()];
        let t = self.variables.iter().map(|x| x.tet + 1).max().unwrap_or(0);
        let mut found = vec![0usize; t];
        for (k, var) in self.variables.iter().enumerate() {
            if is_link_triangle(&self.universe[var.disc]) {
                v[k] = 1;
                found[var.tet] += 1;
            }
        }
        if t > 0 && found.iter().all(|&c| c == 4) {
            Some(v)
        } else {
            None
        }
    }
}

/// A triangle crossing the three interior edges at one vertex.
pub fn is_link_triangle(d: &DiscType) -> bool {
    d.len() == 3 && d.boundary_degree() == 0 && d.interior_degree() == 3 && {
        let edges: Vec<usize> = (0..6).filter(|&e| d.interior_mult[e] == 1).collect();
        (0..4u8).any(|v| {
            edges
                .iter()
                .all(|&e| EDGE_VERTICES[e].0 == v || EDGE_VERTICES[e].1 == v)
        })
    }
}

pub fn is_solution(sys: &MatchingSystem, v: &[u64]) -> Result<bool> {
    sys.check_dim(v)?;
    for r in &sys.rows {
        let s: i128 = r
            .coeffs
            .iter()
            .zip(v)
            .map(|(&c, &x)| c as i128 * x as i128)
            .sum();
        if s != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Hilbert basis of the solution monoid. Elements with a coordinate above
/// `coord_cap` are withheld and the result is flagged truncated.
pub fn fundamental_solutions(sys: &MatchingSystem, coord_cap: Option<i64>) -> Result<HilbertBasis> {
    fundamental_solutions_with(sys, coord_cap, None)
}

/// As [`fundamental_solutions`], keeping only elements whose boundary
/// degree is at most `max_boundary_degree`.
pub fn fundamental_solutions_with(
    sys: &MatchingSystem,
    coord_cap: Option<i64>,
    max_boundary_degree: Option<i64>,
) -> Result<HilbertBasis> {
    match max_boundary_degree {
        Some(b) => bounded_hilbert_basis(
            &sys.matrix(),
            sys.dimension(),
            &sys.boundary_weights(),
            b,
            coord_cap,
        ),
        None => hilbert_basis(
            &sys.matrix(),
            sys.dimension(),
            &HilbertOptions {
                coord_cap,
                degree_bound: None,
            },
        ),
    }
}

pub fn decompose(sys: &MatchingSystem, v: &[u64], basis: &[Vec<i64>]) -> Result<bool> {
    sys.check_dim(v)?;
    for b in basis {
        if b.len() != sys.dimension() {
            return Err(Error::DimensionMismatch {
                expected: sys.dimension(),
                got: b.len(),
            });
        }
    }
    let v: Vec<i64> = v.iter().map(|&x| x as i64).collect();
    Ok(decompose_into(&v, basis).is_some())
}
