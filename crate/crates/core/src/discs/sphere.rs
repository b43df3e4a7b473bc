//! The boundary sphere of a truncated tetrahedron as a cell complex.
//!
//! Faces: hexagon `f` (id `f`) and truncation triangle `v` (id `4 + v`).
//! Edges: interior edge `e` (id `e`, order 01,02,03,12,13,23) and boundary
//! edge `(v, f)` (id `6 + 3v + k`, `f = others(v)[k]`). Vertices: `(v, w)`,
//! the end of interior edge `vw` at triangle `v` (id `3v + k`, `w = others(v)[k]`).
//!
//! Points on an edge are ordered from its first endpoint to its second.

use std::sync::OnceLock;

use crate::perm::{edge_index, others, EDGE_VERTICES};

pub const FACES: usize = 8;
pub const EDGES: usize = 18;
pub const VERTICES: usize = 12;

#[derive(Clone, Debug)]
pub struct Sphere {
    /// Endpoints of each edge, first to second.
    pub ends: [(usize, usize); EDGES],
    /// The two faces containing each edge, ascending.
    pub edge_faces: [[usize; 2]; EDGES],
    /// Boundary cycle of each face: sides as (edge, traversed first-to-second).
    pub cycles: Vec<Vec<(usize, bool)>>,
}

pub fn vertex_id(v: u8, w: u8) -> usize {
    3 * v as usize
        + others(v)
            .iter()
            .position(|&x| x == w)
            .expect("w differs from v")
}

pub fn boundary_edge(v: u8, f: u8) -> usize {
    6 + 3 * v as usize
        + others(v)
            .iter()
            .position(|&x| x == f)
            .expect("f differs from v")
}

/// `(v, f)` of a boundary edge id.
pub fn boundary_edge_parts(edge: usize) -> (u8, u8) {
    debug_assert!((6..EDGES).contains(&edge));
    let v = ((edge - 6) / 3) as u8;
    (v, others(v)[(edge - 6) % 3])
}

pub fn is_interior(edge: usize) -> bool {
    edge < 6
}

pub fn is_hexagon(face: usize) -> bool {
    face < 4
}

/// Face id of the truncation triangle at `v`.
pub fn triangle_face(v: u8) -> usize {
    4 + v as usize
}

impl Sphere {
    fn build() -> Sphere {
        let mut ends = [(0, 0); EDGES];
        for (e, &(i, j)) in EDGE_VERTICES.iter().enumerate() {
            ends[e] = (vertex_id(i, j), vertex_id(j, i));
        }
        for v in 0..4u8 {
            for f in others(v) {
                let rest: Vec<u8> = others(v).into_iter().filter(|&x| x != f).collect();
                ends[boundary_edge(v, f)] = (vertex_id(v, rest[0]), vertex_id(v, rest[1]));
            }
        }
        // each face as a cycle of vertices
        let mut vertex_cycles: Vec<Vec<usize>> = Vec::new();
        for f in 0..4u8 {
            let [a, b, c] = others(f);
            vertex_cycles.push(vec![
                vertex_id(a, b),
                vertex_id(b, a),
                vertex_id(b, c),
                vertex_id(c, b),
                vertex_id(c, a),
                vertex_id(a, c),
            ]);
        }
        for v in 0..4u8 {
            let [x, y, z] = others(v);
            vertex_cycles.push(vec![vertex_id(v, x), vertex_id(v, y), vertex_id(v, z)]);
        }
        let mut cycles = Vec::new();
        let mut edge_faces = [[usize::MAX; 2]; EDGES];
        for (face, vc) in vertex_cycles.iter().enumerate() {
            let mut sides = Vec::new();
            for k in 0..vc.len() {
                let (p, q) = (vc[k], vc[(k + 1) % vc.len()]);
                let edge = (0..EDGES)
                    .find(|&e| ends[e] == (p, q) || ends[e] == (q, p))
                    .expect("consecutive face vertices span an edge");
                sides.push((edge, ends[edge] == (p, q)));
                let slot = &mut edge_faces[edge];
                if slot[0] == usize::MAX {
                    slot[0] = face;
                } else {
                    slot[1] = face;
                }
            }
            cycles.push(sides);
        }
        Sphere {
            ends,
            edge_faces,
            cycles,
        }
    }

    pub fn get() -> &'static Sphere {
        static SPHERE: OnceLock<Sphere> = OnceLock::new();
        SPHERE.get_or_init(Sphere::build)
    }

    pub fn other_face(&self, edge: usize, face: usize) -> usize {
        let [a, b] = self.edge_faces[edge];
        if a == face {
            b
        } else {
            a
        }
    }

    pub fn face_has_edge(&self, face: usize, edge: usize) -> bool {
        self.edge_faces[edge].contains(&face)
    }

    /// Position of `edge` in the boundary cycle of `face`, with direction.
    pub fn side_in_face(&self, face: usize, edge: usize) -> Option<(usize, bool)> {
        self.cycles[face]
            .iter()
            .position(|&(e, _)| e == edge)
            .map(|k| (k, self.cycles[face][k].1))
    }
}

/// Interior edge id joining tetrahedron vertices `i` and `j`.
pub fn interior_edge(i: u8, j: u8) -> usize {
    edge_index(i, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristic_is_two() {
        let s = Sphere::get();
        assert_eq!(VERTICES as i64 - EDGES as i64 + FACES as i64, 2);
        for e in 0..EDGES {
            let [a, b] = s.edge_faces[e];
            assert!(a < b && b < FACES, "edge {e}: {a} {b}");
        }
        for f in 0..4 {
            assert_eq!(s.cycles[f].len(), 6);
            // sides alternate interior and boundary
            for k in 0..6 {
                assert_eq!(is_interior(s.cycles[f][k].0), k % 2 == 0);
            }
        }
        for v in 0..4 {
            assert!(s.cycles[4 + v].iter().all(|&(e, _)| !is_interior(e)));
        }
    }

    #[test]
    fn interior_edges_lie_between_hexagons() {
        let s = Sphere::get();
        for (e, &(i, j)) in EDGE_VERTICES.iter().enumerate() {
            let rest: Vec<usize> = (0..4)
                .filter(|&x| x != i as usize && x != j as usize)
                .collect();
            assert_eq!(s.edge_faces[e].to_vec(), rest);
        }
        for v in 0..4u8 {
            for f in others(v) {
                assert_eq!(
                    s.edge_faces[boundary_edge(v, f)],
                    [f as usize, triangle_face(v)]
                );
            }
        }
    }
}
