//! Arc types, disc types and their classification on a truncated
//! tetrahedron. Every tetrahedron shares the same disc catalogue; a matching
//! variable pairs a tetrahedron with a catalogue entry.

mod classify;
mod embed;
mod enumerate;
pub mod sphere;

pub use classify::{classify_disc, edge_compression_sides, CurveSide, EdgeCompression};
pub use embed::{curves_embeddable, is_embeddable, realize, realize_curves};
pub use enumerate::{enumerate_disc_types, Enumeration};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use sphere::{is_hexagon, is_interior, Sphere};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaceKind {
    Hexagon,
    Triangle,
}

/// Label of an arc isotopy class on one face. Sides are numbered around the
/// face; on a hexagon even sides are interior and odd sides are boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArcType {
    /// Endpoints on two distinct sides.
    Between(u8, u8),
    /// Both endpoints on boundary side `side`; the other sides split into
    /// the runs `side+1 ..= side+cut` and the rest.
    Returning { side: u8, cut: u8 },
}

/// Catalogue of arc labels on a face: 3 on a triangle, 15 side pairs plus
/// four separations per boundary side on a hexagon.
pub fn arc_types(kind: FaceKind) -> Vec<ArcType> {
    let n = match kind {
        FaceKind::Triangle => 3u8,
        FaceKind::Hexagon => 6u8,
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(ArcType::Between(i, j));
        }
    }
    if kind == FaceKind::Hexagon {
        for side in (1..6u8).step_by(2) {
            for cut in 1..5u8 {
                out.push(ArcType::Returning { side, cut });
            }
        }
    }
    out
}

/// One arc of a curve: it runs inside `face` from a point on sphere edge
/// `from` to a point on sphere edge `to`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub face: u8,
    pub from: u8,
    pub to: u8,
}

impl Arc {
    fn reversed(self) -> Arc {
        Arc {
            face: self.face,
            from: self.to,
            to: self.from,
        }
    }
}

/// Whether an arc may appear on a disc boundary: distinct sides, or a
/// hexagon arc returning to one boundary side.
pub fn arc_allowed(face: usize, from: usize, to: usize) -> bool {
    let s = Sphere::get();
    if !s.face_has_edge(face, from) || !s.face_has_edge(face, to) {
        return false;
    }
    from != to || (is_hexagon(face) && !is_interior(from))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classification {
    Normal,
    NormalToOneSide(CurveSide),
    AlmostNormal,
    Rejected(String),
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Normal => "normal",
            Classification::NormalToOneSide(_) => "normal-to-one-side",
            Classification::AlmostNormal => "almost-normal",
            Classification::Rejected(_) => "rejected",
        }
    }
}

/// A closed embedded curve on the boundary sphere, up to normal isotopy.
///
/// Crossing `i` is the point where arc `i - 1` meets arc `i`, on edge
/// `arcs[i].from`; `realization[i]` is its position along that edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscType {
    pub arcs: Vec<Arc>,
    pub interior_mult: [u32; 6],
    pub boundary_mult: [u32; 12],
    pub realization: Vec<u32>,
    pub classification: Classification,
}

impl DiscType {
    /// Builds and classifies a disc type from an arc sequence, which is
    /// first brought to canonical form.
    pub fn from_arcs(arcs: &[Arc]) -> Result<Option<DiscType>> {
        let arcs = canonical_sequence(arcs);
        let Some(realization) = realize(&arcs)? else {
            return Ok(None);
        };
        let mut interior_mult = [0u32; 6];
        let mut boundary_mult = [0u32; 12];
        for a in &arcs {
            let e = a.from as usize;
            if is_interior(e) {
                interior_mult[e] += 1;
            } else {
                boundary_mult[e - 6] += 1;
            }
        }
        let mut d = DiscType {
            arcs,
            interior_mult,
            boundary_mult,
            realization,
            classification: Classification::Normal,
        };
        d.classification = classify_disc(&d);
        Ok(Some(d))
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn boundary_degree(&self) -> u32 {
        self.boundary_mult.iter().sum()
    }

    pub fn interior_degree(&self) -> u32 {
        self.interior_mult.iter().sum()
    }

    pub fn max_interior_mult(&self) -> u32 {
        self.interior_mult.iter().copied().max().unwrap_or(0)
    }

    /// Arc counts on each hexagon, keyed by the (sorted) pair of sphere edges
    /// the arc joins.
    pub fn hexagon_arc_counts(&self) -> [BTreeMap<(u8, u8), u32>; 4] {
        let mut out: [BTreeMap<(u8, u8), u32>; 4] = Default::default();
        for a in &self.arcs {
            if is_hexagon(a.face as usize) {
                let key = (a.from.min(a.to), a.from.max(a.to));
                *out[a.face as usize].entry(key).or_insert(0) += 1;
            }
        }
        out
    }

    /// Number of arcs on truncation triangles.
    pub fn triangle_arc_count(&self) -> u32 {
        self.arcs
            .iter()
            .filter(|a| !is_hexagon(a.face as usize))
            .count() as u32
    }

    pub fn hexagon_arc_count(&self) -> u32 {
        self.arcs.len() as u32 - self.triangle_arc_count()
    }
}

/// Least rotation or reflection of a cyclic arc sequence.
pub fn canonical_sequence(arcs: &[Arc]) -> Vec<Arc> {
    let n = arcs.len();
    let reversed: Vec<Arc> = arcs.iter().rev().map(|a| a.reversed()).collect();
    let mut best: Option<Vec<Arc>> = None;
    for seq in [arcs, &reversed[..]] {
        for r in 0..n {
            let cand: Vec<Arc> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// A tube annulus: two normal discs of one tetrahedron joined by a tube
/// parallel to a hexagon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubeAnnulusType {
    pub tet: usize,
    pub discs: [usize; 2],
    pub face: u8,
}

impl TubeAnnulusType {
    pub fn new(
        universe: &[DiscType],
        tet: usize,
        discs: [usize; 2],
        face: u8,
    ) -> Result<TubeAnnulusType> {
        for &d in &discs {
            let disc = universe
                .get(d)
                .ok_or_else(|| Error::IndexOutOfRange(format!("disc {d}")))?;
            if disc.classification != Classification::Normal {
                return Err(Error::InvalidArgument(format!(
                    "tube component {d} is not a normal disc"
                )));
            }
            if !disc.arcs.iter().any(|a| a.face == face) {
                return Err(Error::InvalidArgument(format!(
                    "disc {d} does not meet hexagon {face}"
                )));
            }
        }
        if face > 3 {
            return Err(Error::IndexOutOfRange(format!("hexagon {face}")));
        }
        Ok(TubeAnnulusType { tet, discs, face })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_catalogue_sizes() {
        assert_eq!(arc_types(FaceKind::Triangle).len(), 3);
        let hex = arc_types(FaceKind::Hexagon);
        assert_eq!(hex.len(), 27);
        for side in [1u8, 3, 5] {
            let n = hex
                .iter()
                .filter(|a| matches!(a, ArcType::Returning { side: s, .. } if *s == side))
                .count();
            assert_eq!(n, 4);
        }
    }

    #[test]
    fn canonical_sequence_is_rotation_and_reflection_invariant() {
        let arcs = vec![
            Arc {
                face: 1,
                from: 0,
                to: 1,
            },
            Arc {
                face: 0,
                from: 1,
                to: 4,
            },
            Arc {
                face: 2,
                from: 4,
                to: 0,
            },
        ];
        let c = canonical_sequence(&arcs);
        let mut rotated = arcs.clone();
        rotated.rotate_left(1);
        assert_eq!(canonical_sequence(&rotated), c);
        let reflected: Vec<Arc> = arcs.iter().rev().map(|a| a.reversed()).collect();
        assert_eq!(canonical_sequence(&reflected), c);
    }
}
