//! Compactified ideal triangulations: gluing tables, derived edge classes,
//! validation, Pachner moves and the angled-triangulation search.
//!
//! Tetrahedron vertices are 0..3. Hexagonal face `f` is the face opposite
//! vertex `f`; truncation triangle `v` sits at vertex `v`. The boundary edge
//! `(v, f)` is the side shared by truncation triangle `v` and hexagon `f`.

mod io;
mod pachner;
mod search;
mod signature;

pub use io::{
    parse_input, parse_triangulation, to_file, GluingRecord, ParsedInput, PermRecord,
    TriangulationFile,
};
pub use pachner::{pachner_23, pachner_32, MoveOutcome};
pub use search::{search_angled_triangulation, SearchHit, SearchOptions};
pub use signature::isomorphism_signature;

use serde::{Deserialize, Serialize};

use crate::boundary::complex::{Perm3, SideGluing, SurfaceComplex, SurfaceSummary};
use crate::error::{Error, Result};
use crate::perm::{edge_index, others, Perm4, EDGE_VERTICES};

/// Face gluing: face `face` of tetrahedron `tet`, with `perm` sending the
/// source tetrahedron's vertices to the target's (`perm(source face) = face`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gluing {
    pub tet: usize,
    pub face: u8,
    pub perm: Perm4,
}

/// A boundary edge slot `(tet, v, f)`: the side of truncation triangle `v`
/// lying in hexagon `f`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundarySlot {
    pub tet: usize,
    pub vertex: u8,
    pub face: u8,
}

#[derive(Clone, Debug)]
pub struct IdealTriangulation {
    gluings: Vec<[Gluing; 4]>,
    edge_class: Vec<[usize; 6]>,
    edge_classes: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for IdealTriangulation {
    fn eq(&self, other: &Self) -> bool {
        self.gluings == other.gluings
    }
}

impl Eq for IdealTriangulation {}

impl IdealTriangulation {
    /// Builds a triangulation from a complete gluing table.
    pub fn new(gluings: Vec<[Gluing; 4]>) -> Result<IdealTriangulation> {
        let t = gluings.len();
        if t == 0 {
            return Err(Error::Syntax("triangulation has no tetrahedra".into()));
        }
        for (tet, row) in gluings.iter().enumerate() {
            for face in 0..4u8 {
                let g = row[face as usize];
                let bad = |reason: &str| Error::InconsistentGluing {
                    tet,
                    face,
                    reason: reason.to_string(),
                };
                if g.tet >= t || g.face > 3 {
                    return Err(bad("target out of range"));
                }
                if g.perm.apply(face) != g.face {
                    return Err(bad("permutation does not send the face to the target face"));
                }
                if g.tet == tet && g.face == face {
                    return Err(bad("face glued to itself"));
                }
                let back = gluings[g.tet][g.face as usize];
                if back.tet != tet || back.face != face || back.perm != g.perm.inverse() {
                    return Err(bad("gluing is not an involution"));
                }
            }
        }

        // interior edges: orbits of (tet, edge) under face crossings
        let mut edge_class = vec![[usize::MAX; 6]; t];
        let mut edge_classes = Vec::new();
        for tet in 0..t {
            for e in 0..6 {
                if edge_class[tet][e] != usize::MAX {
                    continue;
                }
                let id = edge_classes.len();
                let mut members = Vec::new();
                let mut stack = vec![(tet, e)];
                edge_class[tet][e] = id;
                while let Some((tt, ee)) = stack.pop() {
                    members.push((tt, ee));
                    let (i, j) = EDGE_VERTICES[ee];
                    for face in 0..4u8 {
                        if face == i || face == j {
                            continue;
                        }
                        let g = gluings[tt][face as usize];
                        let ne = edge_index(g.perm.apply(i), g.perm.apply(j));
                        if edge_class[g.tet][ne] == usize::MAX {
                            edge_class[g.tet][ne] = id;
                            stack.push((g.tet, ne));
                        }
                    }
                }
                members.sort_unstable();
                edge_classes.push(members);
            }
        }
        Ok(IdealTriangulation {
            gluings,
            edge_class,
            edge_classes,
        })
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Gluing {
        self.gluings[tet][face as usize]
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    pub fn edge_class_count(&self) -> usize {
        self.edge_classes.len()
    }

    /// Interior edge class of edge `e` (index into 01,02,03,12,13,23) of `tet`.
    pub fn edge_class(&self, tet: usize, e: usize) -> usize {
        self.edge_class[tet][e]
    }

    /// Slots `(tet, edge)` in an interior edge class, sorted.
    pub fn edge_class_members(&self, class: usize) -> &[(usize, usize)] {
        &self.edge_classes[class]
    }

    pub fn edge_valence(&self, class: usize) -> usize {
        self.edge_classes[class].len()
    }

    /// The slot across the hexagon containing the given boundary slot.
    pub fn boundary_partner(&self, s: BoundarySlot) -> BoundarySlot {
        let g = self.gluing(s.tet, s.face);
        BoundarySlot {
            tet: g.tet,
            vertex: g.perm.apply(s.vertex),
            face: g.face,
        }
    }

    /// Truncation triangle index of `(tet, v)` in the boundary complex.
    pub fn boundary_triangle(tet: usize, v: u8) -> usize {
        4 * tet + v as usize
    }

    /// Side index of boundary slot `(v, f)` inside truncation triangle `v`.
    pub fn boundary_side_index(v: u8, f: u8) -> u8 {
        others(v)
            .iter()
            .position(|&x| x == f)
            .expect("f differs from v") as u8
    }

    pub fn slot_of_side(tri: usize, side: u8) -> BoundarySlot {
        let tet = tri / 4;
        let vertex = (tri % 4) as u8;
        BoundarySlot {
            tet,
            vertex,
            face: others(vertex)[side as usize],
        }
    }

    /// The boundary surface: one triangle per truncated vertex, corners
    /// indexed by the ascending other vertices.
    pub fn boundary_surface(&self) -> Result<SurfaceComplex> {
        let mut rows = Vec::with_capacity(4 * self.tet_count());
        for tet in 0..self.tet_count() {
            for v in 0..4u8 {
                let corners_v = others(v);
                let mut row = [SideGluing {
                    tri: 0,
                    side: 0,
                    corners: Perm3([0, 1, 2]),
                }; 3];
                for (side, &f) in corners_v.iter().enumerate() {
                    let g = self.gluing(tet, f);
                    let tv = g.perm.apply(v);
                    let target_corners = others(tv);
                    let mut map = [0u8; 3];
                    for (k, &w) in corners_v.iter().enumerate() {
                        let img = g.perm.apply(w);
                        map[k] = target_corners.iter().position(|&x| x == img).unwrap() as u8;
                    }
                    row[side] = SideGluing {
                        tri: Self::boundary_triangle(g.tet, tv),
                        side: Self::boundary_side_index(tv, g.face),
                        corners: Perm3(map),
                    };
                }
                rows.push(row);
            }
        }
        SurfaceComplex::new(rows)
    }

    /// Number of boundary edge classes; always 6t.
    pub fn boundary_edge_count(&self) -> usize {
        6 * self.tet_count()
    }

    pub fn is_connected(&self) -> bool {
        let t = self.tet_count();
        let mut seen = vec![false; t];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for g in &self.gluings[x] {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    stack.push(g.tet);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

/// Removes backtracks from a cyclic word of exit slots: an exit immediately
/// followed by the exit back through the same side.
pub fn normalize_slot_word(tri: &IdealTriangulation, word: &[BoundarySlot]) -> Vec<BoundarySlot> {
    let mut w = word.to_vec();
    loop {
        let n = w.len();
        if n < 2 {
            return w;
        }
        let hit = (0..n).find(|&i| w[(i + 1) % n] == tri.boundary_partner(w[i]));
        match hit {
            None => return w,
            Some(i) if i + 1 < n => {
                w.drain(i..i + 2);
            }
            Some(_) => {
                w.pop();
                w.remove(0);
            }
        }
    }
}

/// Boundary edge class with its deterministic id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEdgeInfo {
    pub id: String,
    pub slots: [BoundarySlot; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub tet_count: usize,
    pub edge_class_count: usize,
    pub edge_valences: Vec<usize>,
    pub boundary_genus: i64,
    pub boundary_component_count: usize,
    pub boundary: SurfaceSummary,
    pub boundary_edges: Vec<BoundaryEdgeInfo>,
    pub diagnostics: Vec<String>,
}

/// Id string for boundary edge class `k`.
pub fn boundary_edge_id(k: usize) -> String {
    format!("B{k}")
}

pub fn validate(tri: &IdealTriangulation) -> ValidationReport {
    let mut diagnostics = Vec::new();
    let surface = match tri.boundary_surface() {
        Ok(s) => s,
        Err(e) => {
            // unreachable for tables accepted by IdealTriangulation::new
            diagnostics.push(format!("boundary complex invalid: {e}"));
            return ValidationReport {
                ok: false,
                tet_count: tri.tet_count(),
                edge_class_count: tri.edge_class_count(),
                edge_valences: vec![],
                boundary_genus: 0,
                boundary_component_count: 0,
                boundary: SurfaceSummary {
                    triangles: 0,
                    edges: 0,
                    vertices: 0,
                    euler: 0,
                    components: 0,
                    orientable: false,
                },
                boundary_edges: vec![],
                diagnostics,
            };
        }
    };
    let summary = surface.summary();
    let boundary_edges = (0..surface.edge_count())
        .map(|k| {
            let [a, b] = surface.edge_sides(k);
            BoundaryEdgeInfo {
                id: boundary_edge_id(k),
                slots: [
                    IdealTriangulation::slot_of_side(a.tri, a.side),
                    IdealTriangulation::slot_of_side(b.tri, b.side),
                ],
            }
        })
        .collect();

    let mut ok = true;
    if !tri.is_connected() {
        ok = false;
        diagnostics.push("triangulation is not connected".into());
    }
    if summary.components != 1 {
        ok = false;
        diagnostics.push(format!(
            "boundary not a torus: {} boundary components",
            summary.components
        ));
    } else if !summary.orientable {
        ok = false;
        diagnostics.push(format!(
            "boundary not a torus: non-orientable boundary with euler characteristic {}",
            summary.euler
        ));
    } else if summary.euler != 0 {
        ok = false;
        diagnostics.push(format!(
            "boundary not a torus: euler characteristic {}",
            summary.euler
        ));
    }
    if tri.edge_class_count() != tri.tet_count() {
        ok = false;
        diagnostics.push(format!(
            "edge class count {} differs from tetrahedron count {}",
            tri.edge_class_count(),
            tri.tet_count()
        ));
    }
    let boundary_genus = if summary.orientable && summary.components == 1 {
        (2 - summary.euler) / 2
    } else {
        // non-orientable genus, or per-component average when disconnected
        if summary.components == 1 {
            2 - summary.euler
        } else {
            0
        }
    };
    ValidationReport {
        ok,
        tet_count: tri.tet_count(),
        edge_class_count: tri.edge_class_count(),
        edge_valences: (0..tri.edge_class_count())
            .map(|c| tri.edge_valence(c))
            .collect(),
        boundary_genus,
        boundary_component_count: summary.components,
        boundary: summary,
        boundary_edges,
        diagnostics,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn census_fixture_validates() {
        let tri = fixtures::figure_eight();
        let report = validate(&tri);
        assert!(report.ok, "{:?}", report.diagnostics);
        assert_eq!(report.edge_class_count, 2);
        assert_eq!(report.edge_valences, vec![6, 6]);
        assert_eq!(
            (
                report.boundary.triangles,
                report.boundary.edges,
                report.boundary.vertices
            ),
            (8, 12, 4)
        );
        assert_eq!(report.boundary.euler, 0);
        assert_eq!(report.boundary_genus, 1);
        assert_eq!(report.boundary_edges.len(), 12);
        assert_eq!(report.boundary_edges[0].id, "B0");
    }

    #[test]
    fn boundary_slots_pair_up() {
        let tri = fixtures::figure_eight();
        for tet in 0..2 {
            for v in 0..4u8 {
                for f in 0..4u8 {
                    if v == f {
                        continue;
                    }
                    let s = BoundarySlot {
                        tet,
                        vertex: v,
                        face: f,
                    };
                    let p = tri.boundary_partner(s);
                    assert_ne!(s, p);
                    assert_eq!(tri.boundary_partner(p), s);
                }
            }
        }
    }

    #[test]
    fn non_torus_single_tet_is_reported() {
        let tri = fixtures::one_tet_klein_cusp();
        let report = validate(&tri);
        assert!(!report.ok);
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.contains("boundary not a torus")));
    }
}
