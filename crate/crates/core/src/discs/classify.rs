//! Sides of a disc boundary curve, edge compressions and classification.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::sphere::{triangle_face, Sphere, EDGES, VERTICES};
use super::{Classification, DiscType};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveSide {
    Plus,
    Minus,
}

impl CurveSide {
    fn from_parity(p: u8) -> CurveSide {
        if p == 0 {
            CurveSide::Plus
        } else {
            CurveSide::Minus
        }
    }
}

/// An edge compression: the segment of interior edge `edge` between two
/// crossings adjacent along it, and the side of the curve it lies on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCompression {
    pub edge: u8,
    /// Crossing indices along the curve.
    pub crossings: (usize, usize),
    pub side: CurveSide,
}

/// Parity of each sphere vertex relative to the reference region. The plus
/// region contains truncation triangle 0, or else the lowest face the curve
/// misses, or else sphere vertex 0.
fn vertex_parity(d: &DiscType) -> [u8; VERTICES] {
    let s = Sphere::get();
    let mut touched = [false; 8];
    for a in &d.arcs {
        touched[a.face as usize] = true;
    }
    let reference_face = if !touched[triangle_face(0)] {
        Some(triangle_face(0))
    } else {
        (0..8).find(|&f| !touched[f])
    };
    let start = match reference_face {
        Some(f) => {
            let (e, forward) = s.cycles[f][0];
            if forward {
                s.ends[e].0
            } else {
                s.ends[e].1
            }
        }
        None => 0,
    };
    let mut mult = [0u32; EDGES];
    for a in &d.arcs {
        mult[a.from as usize] += 1;
    }
    let mut parity = [u8::MAX; VERTICES];
    parity[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for e in 0..EDGES {
            let (p, q) = s.ends[e];
            let other = if p == x {
                q
            } else if q == x {
                p
            } else {
                continue;
            };
            if parity[other] == u8::MAX {
                parity[other] = parity[x] ^ (mult[e] % 2) as u8;
                queue.push_back(other);
            }
        }
    }
    parity
}

/// Crossings on `edge` in order along it.
fn crossings_along(d: &DiscType, edge: usize) -> Vec<usize> {
    let mut pts: Vec<usize> = (0..d.arcs.len())
        .filter(|&i| d.arcs[i].from as usize == edge)
        .collect();
    pts.sort_by_key(|&i| d.realization[i]);
    pts
}

pub fn edge_compression_sides(d: &DiscType) -> Vec<EdgeCompression> {
    let s = Sphere::get();
    let parity = vertex_parity(d);
    let mut out = Vec::new();
    for e in 0..6 {
        let pts = crossings_along(d, e);
        if pts.len() < 2 {
            continue;
        }
        let base = parity[s.ends[e].0];
        for j in 0..pts.len() - 1 {
            // gap j + 1 lies between the j-th and (j+1)-th crossings
            out.push(EdgeCompression {
                edge: e as u8,
                crossings: (pts[j], pts[j + 1]),
                side: CurveSide::from_parity(base ^ ((j as u8 + 1) % 2)),
            });
        }
    }
    out
}

/// Two compression arcs on the disc meet when they share an endpoint or
/// their endpoints alternate around the boundary.
fn supports_meet(a: (usize, usize), b: (usize, usize)) -> bool {
    if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
        return true;
    }
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |x: usize| lo < x && x < hi;
    inside(b.0) != inside(b.1)
}

pub fn classify_disc(d: &DiscType) -> Classification {
    let comps = edge_compression_sides(d);
    if comps.is_empty() {
        return Classification::Normal;
    }
    let plus: Vec<&EdgeCompression> = comps.iter().filter(|c| c.side == CurveSide::Plus).collect();
    let minus: Vec<&EdgeCompression> = comps
        .iter()
        .filter(|c| c.side == CurveSide::Minus)
        .collect();
    if minus.is_empty() {
        return Classification::NormalToOneSide(CurveSide::Plus);
    }
    if plus.is_empty() {
        return Classification::NormalToOneSide(CurveSide::Minus);
    }
    if d.interior_mult.iter().any(|&m| m > 2) {
        return Classification::Rejected(
            "interior multiplicity exceeds 2 with compressions on both sides".into(),
        );
    }
    for p in &plus {
        for m in &minus {
            if !supports_meet(p.crossings, m.crossings) {
                return Classification::Rejected(
                    "opposite-side edge compressions are disjoint".into(),
                );
            }
        }
    }
    Classification::AlmostNormal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_intersection() {
        assert!(supports_meet((0, 4), (2, 6)));
        assert!(!supports_meet((0, 2), (4, 6)));
        assert!(supports_meet((0, 2), (2, 6)));
        assert!(!supports_meet((0, 6), (2, 4)));
    }
}
