//! Embeddability of a cyclic arc sequence: choosing the order of crossings
//! along each edge so that no two arcs in a face cross.

use super::sphere::{Sphere, EDGES};
use super::{arc_allowed, Arc};
use crate::error::{Error, Result};

/// Cyclic coordinate of a point on `edge` at position `pos` (of `mult`)
/// around the boundary of `face`.
pub(crate) fn face_coord(face: usize, edge: usize, pos: u32, mult: u32) -> u32 {
    let (k, forward) = Sphere::get()
        .side_in_face(face, edge)
        .expect("edge on face");
    let along = if forward { pos } else { mult - 1 - pos };
    k as u32 * 4096 + along
}

/// Whether chords `(a, b)` and `(c, d)` with distinct endpoints interleave.
pub(crate) fn chords_cross(a: u32, b: u32, c: u32, d: u32) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let inside = |x: u32| lo < x && x < hi;
    inside(c) != inside(d)
}

pub(crate) fn check_chain(arcs: &[Arc]) -> Result<()> {
    let s = Sphere::get();
    let n = arcs.len();
    if n < 2 {
        return Err(Error::InvalidCurve(
            "a closed curve needs at least two arcs".into(),
        ));
    }
    for i in 0..n {
        let a = arcs[i];
        let b = arcs[(i + 1) % n];
        if !arc_allowed(a.face as usize, a.from as usize, a.to as usize) {
            return Err(Error::InvalidCurve(format!(
                "arc {i} is not an allowed arc: {a:?}"
            )));
        }
        if a.to != b.from || s.other_face(a.to as usize, a.face as usize) != b.face as usize {
            return Err(Error::InvalidCurve(format!(
                "arcs {i} and {} do not chain",
                (i + 1) % n
            )));
        }
    }
    Ok(())
}

/// First embedded realization in backtracking order (edges ascending, point
/// orders lexicographic), as a position per crossing. `None` if the sequence
/// cannot be drawn without self-crossings.
pub fn realize(arcs: &[Arc]) -> Result<Option<Vec<u32>>> {
    realize_curves(&[arcs.to_vec()])
}

pub fn is_embeddable(arcs: &[Arc]) -> Result<bool> {
    realize(arcs).map(|r| r.is_some())
}

/// Realizes several closed curves at once, pairwise disjoint. Positions are
/// indexed by crossing in the concatenation of the curves.
pub fn realize_curves(curves: &[Vec<Arc>]) -> Result<Option<Vec<u32>>> {
    let mut arcs = Vec::new();
    let mut next = Vec::new();
    for c in curves {
        check_chain(c)?;
        let base = arcs.len();
        let n = c.len();
        arcs.extend_from_slice(c);
        next.extend((0..n).map(|i| base + (i + 1) % n));
    }
    let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); EDGES];
    for (i, a) in arcs.iter().enumerate() {
        on_edge[a.from as usize].push(i);
    }
    let edges: Vec<usize> = (0..EDGES).filter(|&e| !on_edge[e].is_empty()).collect();
    // chords by face: (start crossing, end crossing)
    let mut by_face: Vec<Vec<(usize, usize)>> = vec![Vec::new(); 8];
    for (i, a) in arcs.iter().enumerate() {
        by_face[a.face as usize].push((i, next[i]));
    }
    let mult: Vec<u32> = on_edge.iter().map(|p| p.len() as u32).collect();
    let mut pos = vec![u32::MAX; arcs.len()];
    let ok = place(0, &edges, &on_edge, &by_face, &arcs, &mult, &mut pos);
    Ok(if ok { Some(pos) } else { None })
}

/// Whether the curves can be drawn disjointly on the sphere.
pub fn curves_embeddable(curves: &[Vec<Arc>]) -> Result<bool> {
    realize_curves(curves).map(|r| r.is_some())
}

fn place(
    k: usize,
    edges: &[usize],
    on_edge: &[Vec<usize>],
    by_face: &[Vec<(usize, usize)>],
    arcs: &[Arc],
    mult: &[u32],
    pos: &mut [u32],
) -> bool {
    if k == edges.len() {
        return true;
    }
    let e = edges[k];
    let pts = &on_edge[e];
    let mut order: Vec<usize> = (0..pts.len()).collect();
    loop {
        for (p, &o) in order.iter().enumerate() {
            pos[pts[o]] = p as u32;
        }
        if consistent(e, by_face, arcs, mult, pos)
            && place(k + 1, edges, on_edge, by_face, arcs, mult, pos)
        {
            return true;
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    for &p in pts {
        pos[p] = u32::MAX;
    }
    false
}

fn consistent(
    edge: usize,
    by_face: &[Vec<(usize, usize)>],
    arcs: &[Arc],
    mult: &[u32],
    pos: &[u32],
) -> bool {
    let s = Sphere::get();
    for &face in &s.edge_faces[edge] {
        let chords: Vec<(u32, u32)> = by_face[face]
            .iter()
            .filter(|&&(a, b)| pos[a] != u32::MAX && pos[b] != u32::MAX)
            .map(|&(a, b)| {
                let ea = arcs[a].from as usize;
                let eb = arcs[b].from as usize;
                (
                    face_coord(face, ea, pos[a], mult[ea]),
                    face_coord(face, eb, pos[b], mult[eb]),
                )
            })
            .collect();
        for i in 0..chords.len() {
            for j in i + 1..chords.len() {
                let (a, b) = chords[i];
                let (c, d) = chords[j];
                if chords_cross(a, b, c, d) {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link_triangle() -> Vec<Arc> {
        vec![
            Arc {
                face: 3,
                from: 0,
                to: 1,
            },
            Arc {
                face: 1,
                from: 1,
                to: 2,
            },
            Arc {
                face: 2,
                from: 2,
                to: 0,
            },
        ]
    }

    #[test]
    fn link_triangle_embeds() {
        assert!(is_embeddable(&link_triangle()).unwrap());
    }

    #[test]
    fn broken_chain_is_an_error() {
        let mut arcs = link_triangle();
        arcs[1].to = 3;
        assert!(is_embeddable(&arcs).is_err());
    }

    #[test]
    fn two_quads_of_different_types_cross() {
        let s = Sphere::get();
        // quads separating {0,1} from {2,3} and {0,2} from {1,3}
        let quad = |edges: [usize; 4]| -> Vec<Arc> {
            (0..4)
                .map(|i| {
                    let (a, b) = (edges[i], edges[(i + 1) % 4]);
                    let face = s.edge_faces[a]
                        .iter()
                        .copied()
                        .find(|&f| s.face_has_edge(f, b))
                        .unwrap();
                    Arc {
                        face: face as u8,
                        from: a as u8,
                        to: b as u8,
                    }
                })
                .collect()
        };
        // interior edges 01,02,03,12,13,23 are 0..6
        let q1 = quad([1, 2, 4, 3]);
        let q2 = quad([0, 2, 5, 3]);
        assert!(is_embeddable(&q1).unwrap() && is_embeddable(&q2).unwrap());
        assert!(!curves_embeddable(&[q1.clone(), q2]).unwrap());
        assert!(curves_embeddable(&[q1.clone(), q1.clone()]).unwrap());
        assert!(curves_embeddable(&[q1, link_triangle()]).unwrap());
    }

    #[test]
    fn chord_interleaving() {
        assert!(chords_cross(0, 2, 1, 3));
        assert!(!chords_cross(0, 3, 1, 2));
        assert!(!chords_cross(0, 1, 2, 3));
    }
}
