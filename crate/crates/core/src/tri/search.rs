//! Breadth-first search over 2-3 and 3-2 moves for a triangulation admitting
//! a (partially flat) angle structure.

use std::collections::{BTreeMap, BTreeSet};

use super::{isomorphism_signature, pachner_23, pachner_32, BoundarySlot, IdealTriangulation};
use crate::angles::{find_angle_structure, AngleStructure};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub depth: usize,
    pub flat_budget: usize,
    /// Largest tetrahedron count a 2-3 move may produce.
    pub max_tets: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            depth: 0,
            flat_budget: 0,
            max_tets: 12,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub triangulation: IdealTriangulation,
    pub angles: AngleStructure,
    /// Meridian as exit slots, carried along the moves.
    pub meridian: Vec<BoundarySlot>,
    pub moves: usize,
    pub visited: usize,
}

struct Node {
    tri: IdealTriangulation,
    meridian: Vec<BoundarySlot>,
}

/// Tests the root, then each BFS level in signature order; the first
/// triangulation with an angle structure wins.
pub fn search_angled_triangulation(
    tri: &IdealTriangulation,
    meridian: &[BoundarySlot],
    opts: &SearchOptions,
) -> Option<SearchHit> {
    let allow_flat = opts.flat_budget > 0;
    let mut seen = BTreeSet::new();
    seen.insert(isomorphism_signature(tri));
    let mut frontier = vec![Node {
        tri: tri.clone(),
        meridian: meridian.to_vec(),
    }];
    let mut visited = 0;
    for level in 0..=opts.depth {
        for node in &frontier {
            visited += 1;
            if let Some(angles) = find_angle_structure(&node.tri, allow_flat, opts.flat_budget) {
                return Some(SearchHit {
                    triangulation: node.tri.clone(),
                    angles,
                    meridian: node.meridian.clone(),
                    moves: level,
                    visited,
                });
            }
        }
        if level == opts.depth {
            break;
        }
        let mut next: BTreeMap<Vec<u32>, Node> = BTreeMap::new();
        for node in &frontier {
            for child in neighbours(&node.tri, opts.max_tets) {
                let sig = isomorphism_signature(&child.triangulation);
                if seen.contains(&sig) || next.contains_key(&sig) {
                    continue;
                }
                let Ok(word) = child.transport.transport_word(&node.meridian) else {
                    continue;
                };
                let meridian = super::normalize_slot_word(&child.triangulation, &word);
                next.insert(
                    sig,
                    Node {
                        tri: child.triangulation,
                        meridian,
                    },
                );
            }
        }
        seen.extend(next.keys().cloned());
        frontier = next.into_values().collect();
        if frontier.is_empty() {
            break;
        }
    }
    None
}

fn neighbours(tri: &IdealTriangulation, max_tets: usize) -> Vec<super::MoveOutcome> {
    let mut out = Vec::new();
    if tri.tet_count() < max_tets {
        for tet in 0..tri.tet_count() {
            for face in 0..4u8 {
                let g = tri.gluing(tet, face);
                // each face pair once
                if (g.tet, g.face) < (tet, face) {
                    continue;
                }
                if let Ok(m) = pachner_23(tri, tet, face) {
                    out.push(m);
                }
            }
        }
    }
    for e in 0..tri.edge_class_count() {
        if let Ok(m) = pachner_32(tri, e) {
            out.push(m);
        }
    }
    out
}
