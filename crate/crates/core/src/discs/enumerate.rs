//! Enumeration of closed embedded curves on the boundary sphere under a
//! boundary-crossing budget and a per-interior-edge multiplicity cap.
//!
//! Curves are grown point by point. Each new crossing is inserted into one
//! of the gaps between the points already on its edge, and its arc must not
//! cross earlier arcs in the same face, so every partial path is drawn
//! embedded. A curve is started on its least edge and first runs into the
//! lower face of that edge.

use std::collections::BTreeSet;

use serde::Serialize;

use super::embed::{chords_cross, face_coord};
use super::sphere::{is_interior, Sphere, EDGES};
use super::{arc_allowed, canonical_sequence, Arc, Classification, DiscType};

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub discs: Vec<DiscType>,
    /// Some curve within the boundary budget that is not rejected by
    /// classification needs multiplicity `interior_cap + 1` on an interior
    /// edge and was left out.
    pub cap_pruned: bool,
}

impl Enumeration {
    /// The disc types a surface may be built from: all but the rejected.
    pub fn admissible(&self) -> Vec<DiscType> {
        self.discs
            .iter()
            .filter(|d| !matches!(d.classification, Classification::Rejected(_)))
            .cloned()
            .collect()
    }
}

struct Walker {
    b_max: u32,
    cap: u32,
    start_edge: usize,
    close_face: usize,
    // per edge: point ids in order along the edge
    on_edge: Vec<Vec<usize>>,
    point_edge: Vec<usize>,
    chords: Vec<(usize, usize, usize)>, // (face, point, point)
    arcs: Vec<Arc>,
    boundary_used: u32,
    found: BTreeSet<Vec<Arc>>,
}

impl Walker {
    fn coord(&self, face: usize, p: usize) -> u32 {
        let e = self.point_edge[p];
        let pos = self.on_edge[e].iter().position(|&x| x == p).unwrap() as u32;
        face_coord(face, e, pos, self.on_edge[e].len() as u32)
    }

    fn chord_fits(&self, face: usize, p: usize, q: usize) -> bool {
        let (a, b) = (self.coord(face, p), self.coord(face, q));
        self.chords
            .iter()
            .filter(|c| c.0 == face)
            .all(|&(_, x, y)| !chords_cross(a, b, self.coord(face, x), self.coord(face, y)))
    }

    fn mult_ok(&self, edge: usize) -> bool {
        let m = self.on_edge[edge].len() as u32;
        if is_interior(edge) {
            m < self.cap
        } else {
            self.boundary_used < self.b_max
        }
    }

    fn walk(&mut self, p: usize, face: usize) {
        let s = Sphere::get();
        let e = self.point_edge[p];
        if face == self.close_face
            && arc_allowed(face, e, self.start_edge)
            && self.chord_fits(face, p, 0)
        {
            self.arcs.push(Arc {
                face: face as u8,
                from: e as u8,
                to: self.start_edge as u8,
            });
            self.found.insert(canonical_sequence(&self.arcs));
            self.arcs.pop();
        }
        let sides: Vec<usize> = s.cycles[face].iter().map(|&(x, _)| x).collect();
        for next in sides {
            if next < self.start_edge || !arc_allowed(face, e, next) || !self.mult_ok(next) {
                continue;
            }
            let q = self.point_edge.len();
            self.point_edge.push(next);
            for gap in 0..=self.on_edge[next].len() {
                self.on_edge[next].insert(gap, q);
                if self.chord_fits(face, p, q) {
                    self.chords.push((face, p, q));
                    self.arcs.push(Arc {
                        face: face as u8,
                        from: e as u8,
                        to: next as u8,
                    });
                    if !is_interior(next) {
                        self.boundary_used += 1;
                    }
                    self.walk(q, s.other_face(next, face));
                    if !is_interior(next) {
                        self.boundary_used -= 1;
                    }
                    self.arcs.pop();
                    self.chords.pop();
                }
                self.on_edge[next].remove(gap);
            }
            self.point_edge.pop();
        }
    }
}

fn closed_curves(b_max: u32, cap: u32) -> BTreeSet<Vec<Arc>> {
    let s = Sphere::get();
    let mut found = BTreeSet::new();
    for start in 0..EDGES {
        if is_interior(start) && cap == 0 || !is_interior(start) && b_max == 0 {
            continue;
        }
        let mut w = Walker {
            b_max,
            cap,
            start_edge: start,
            close_face: s.edge_faces[start][1],
            on_edge: vec![Vec::new(); EDGES],
            point_edge: vec![start],
            chords: Vec::new(),
            arcs: Vec::new(),
            boundary_used: u32::from(!is_interior(start)),
            found: BTreeSet::new(),
        };
        w.on_edge[start].push(0);
        w.walk(0, s.edge_faces[start][0]);
        found.append(&mut w.found);
    }
    found
}

/// All disc types with at most `b_max` boundary crossings and at most
/// `interior_cap` crossings per interior edge, shortest first, then by
/// canonical arc sequence.
pub fn enumerate_disc_types(b_max: u32, interior_cap: u32) -> Enumeration {
    let curves = closed_curves(b_max, interior_cap + 1);
    let mut discs = Vec::new();
    let mut cap_pruned = false;
    let mut ordered: Vec<Vec<Arc>> = curves.into_iter().collect();
    ordered.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    for arcs in ordered {
        let d = DiscType::from_arcs(&arcs)
            .expect("enumerated curves chain")
            .expect("enumerated curves are embedded");
        if d.max_interior_mult() > interior_cap {
            cap_pruned |= !matches!(d.classification, Classification::Rejected(_));
        } else {
            discs.push(d);
        }
    }
    Enumeration { discs, cap_pruned }
}
