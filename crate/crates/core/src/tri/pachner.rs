//! 2-3 and 3-2 moves.
//!
//! Both moves replace a small set of tetrahedra by another set filling the
//! same ball. Every vertex of the removed and inserted tetrahedra carries an
//! abstract label; faces with equal label sets are identified, which fixes
//! both the new gluings and how boundary slots and curves are carried across.

use std::collections::{BTreeMap, VecDeque};

use super::{BoundarySlot, Gluing, IdealTriangulation};
use crate::error::{Error, Result};
use crate::perm::{edge_index, others, Perm4, EDGE_VERTICES};

type Label = u8;

#[derive(Clone, Debug)]
pub struct MoveOutcome {
    pub triangulation: IdealTriangulation,
    /// Interior edge class created by a 2-3 move.
    pub new_edge: Option<usize>,
    pub transport: SlotTransport,
}

/// Carries boundary slots and boundary curves from the old triangulation to
/// the new one.
#[derive(Clone, Debug)]
pub struct SlotTransport {
    old_tets: usize,
    kept_index: Vec<Option<usize>>,
    old_labels: BTreeMap<usize, [Label; 4]>,
    new_labels: Vec<[Label; 4]>,
    first_new: usize,
    // old removed slot (tet, face) -> new tet face, if external
    old_face_to_new: BTreeMap<(usize, u8), (usize, u8)>,
    // new faces internal to the inserted ball
    new_internal: Vec<[bool; 4]>,
    new_tri: IdealTriangulation,
}

fn label_set(labels: &[Label; 4], skip: u8) -> [Label; 3] {
    let mut s = [0u8; 3];
    let mut k = 0;
    for (v, &l) in labels.iter().enumerate() {
        if v as u8 != skip {
            s[k] = l;
            k += 1;
        }
    }
    s.sort_unstable();
    s
}

fn position(labels: &[Label; 4], l: Label) -> u8 {
    labels.iter().position(|&x| x == l).expect("label present") as u8
}

fn rebuild(
    tri: &IdealTriangulation,
    old_labels: BTreeMap<usize, [Label; 4]>,
    new_labels: Vec<[Label; 4]>,
) -> Result<(IdealTriangulation, SlotTransport)> {
    let t = tri.tet_count();
    let mut kept_index = vec![None; t];
    let mut kept = 0;
    for (tet, slot) in kept_index.iter_mut().enumerate() {
        if !old_labels.contains_key(&tet) {
            *slot = Some(kept);
            kept += 1;
        }
    }
    let first_new = kept;
    let total = kept + new_labels.len();

    let mut old_by_set: BTreeMap<[Label; 3], Vec<(usize, u8)>> = BTreeMap::new();
    for (&tet, labels) in &old_labels {
        for f in 0..4u8 {
            old_by_set
                .entry(label_set(labels, f))
                .or_default()
                .push((tet, f));
        }
    }
    let mut new_by_set: BTreeMap<[Label; 3], Vec<(usize, u8)>> = BTreeMap::new();
    for (n, labels) in new_labels.iter().enumerate() {
        for f in 0..4u8 {
            new_by_set
                .entry(label_set(labels, f))
                .or_default()
                .push((n, f));
        }
    }

    let degenerate =
        |msg: &str| Error::MoveNotApplicable(format!("degenerate configuration: {msg}"));
    let mut old_face_to_new = BTreeMap::new();
    for (set, olds) in &old_by_set {
        let news = new_by_set.get(set).map(Vec::as_slice).unwrap_or(&[]);
        match (olds.len(), news.len()) {
            (2, 0) => {
                // internal to the removed ball; must be glued to each other
                let g = tri.gluing(olds[0].0, olds[0].1);
                if (g.tet, g.face) != olds[1] {
                    return Err(degenerate("internal faces are not glued together"));
                }
            }
            (1, 1) => {
                old_face_to_new.insert(olds[0], news[0]);
            }
            _ => return Err(degenerate("face labels do not match")),
        }
    }

    let placeholder = Gluing {
        tet: 0,
        face: 0,
        perm: Perm4::IDENTITY,
    };
    let mut rows = vec![[placeholder; 4]; total];
    let mut new_internal = vec![[false; 4]; new_labels.len()];
    for (n, labels) in new_labels.iter().enumerate() {
        for j in 0..4u8 {
            let set = label_set(labels, j);
            let news = &new_by_set[&set];
            let gluing = if news.len() == 2 {
                new_internal[n][j as usize] = true;
                let (m, k) = if news[0] == (n, j) { news[1] } else { news[0] };
                let mut img = [0u8; 4];
                for x in 0..4u8 {
                    img[x as usize] = if x == j {
                        k
                    } else {
                        position(&new_labels[m], labels[x as usize])
                    };
                }
                Gluing {
                    tet: first_new + m,
                    face: k,
                    perm: Perm4::from_images(img).ok_or_else(|| degenerate("bad internal map"))?,
                }
            } else {
                let olds = old_by_set
                    .get(&set)
                    .ok_or_else(|| degenerate("unmatched new face"))?;
                let (r, i) = olds[0];
                let g = tri.gluing(r, i);
                let r_labels = &old_labels[&r];
                let mut img = [0u8; 4];
                let (target_tet, target_face);
                match kept_index[g.tet] {
                    Some(u) => {
                        target_tet = u;
                        target_face = g.face;
                        for x in 0..4u8 {
                            img[x as usize] = if x == j {
                                g.face
                            } else {
                                g.perm.apply(position(r_labels, labels[x as usize]))
                            };
                        }
                    }
                    None => {
                        let &(n2, j2) = old_face_to_new
                            .get(&(g.tet, g.face))
                            .ok_or_else(|| degenerate("external face glued to internal face"))?;
                        target_tet = first_new + n2;
                        target_face = j2;
                        let u_labels = &old_labels[&g.tet];
                        for x in 0..4u8 {
                            img[x as usize] = if x == j {
                                j2
                            } else {
                                let y = g.perm.apply(position(r_labels, labels[x as usize]));
                                position(&new_labels[n2], u_labels[y as usize])
                            };
                        }
                    }
                }
                Gluing {
                    tet: target_tet,
                    face: target_face,
                    perm: Perm4::from_images(img).ok_or_else(|| degenerate("bad external map"))?,
                }
            };
            rows[first_new + n][j as usize] = gluing;
        }
    }
    for old in 0..t {
        let Some(u) = kept_index[old] else { continue };
        for f in 0..4u8 {
            let g = tri.gluing(old, f);
            rows[u][f as usize] = match kept_index[g.tet] {
                Some(w) => Gluing {
                    tet: w,
                    face: g.face,
                    perm: g.perm,
                },
                None => {
                    let (n, j) = old_face_to_new[&(g.tet, g.face)];
                    let back = rows[first_new + n][j as usize];
                    Gluing {
                        tet: first_new + n,
                        face: j,
                        perm: back.perm.inverse(),
                    }
                }
            };
        }
    }
    let new_tri = IdealTriangulation::new(rows)?;
    let transport = SlotTransport {
        old_tets: t,
        kept_index,
        old_labels,
        new_labels,
        first_new,
        old_face_to_new,
        new_internal,
        new_tri: new_tri.clone(),
    };
    Ok((new_tri, transport))
}

impl SlotTransport {
    /// New slot for an old boundary slot, or `None` when the slot lies on a
    /// face interior to the replaced ball.
    pub fn map_slot(&self, s: BoundarySlot) -> Option<BoundarySlot> {
        debug_assert!(s.tet < self.old_tets);
        if let Some(u) = self.kept_index[s.tet] {
            return Some(BoundarySlot { tet: u, ..s });
        }
        let &(n, j) = self.old_face_to_new.get(&(s.tet, s.face))?;
        let label = self.old_labels[&s.tet][s.vertex as usize];
        Some(BoundarySlot {
            tet: self.first_new + n,
            vertex: position(&self.new_labels[n], label),
            face: j,
        })
    }

    fn is_new_internal(&self, s: BoundarySlot) -> bool {
        s.tet >= self.first_new && self.new_internal[s.tet - self.first_new][s.face as usize]
    }

    /// Shortest route between two truncation triangles of the inserted ball
    /// crossing only internal sides; returns the exit slots in order.
    fn route(&self, from: (usize, u8), to: (usize, u8)) -> Option<Vec<BoundarySlot>> {
        if from == to {
            return Some(vec![]);
        }
        let mut prev: BTreeMap<(usize, u8), ((usize, u8), BoundarySlot)> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        while let Some(cur) = queue.pop_front() {
            if cur.0 < self.first_new {
                continue;
            }
            for f in others(cur.1) {
                let slot = BoundarySlot {
                    tet: cur.0,
                    vertex: cur.1,
                    face: f,
                };
                if !self.is_new_internal(slot) {
                    continue;
                }
                let p = self.new_tri.boundary_partner(slot);
                let next = (p.tet, p.vertex);
                if next != from && !prev.contains_key(&next) {
                    prev.insert(next, (cur, slot));
                    if next == to {
                        let mut path = Vec::new();
                        let mut at = to;
                        while at != from {
                            let (before, s) = prev[&at];
                            path.push(s);
                            at = before;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Carries a cyclic boundary curve, given as exit slots, across the move.
    /// Each stretch inside one replaced piece is rerouted through the
    /// corresponding new piece; a curve confined to one piece becomes empty.
    pub fn transport_word(&self, word: &[BoundarySlot]) -> Result<Vec<BoundarySlot>> {
        let external: Vec<(usize, BoundarySlot)> = word
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| self.map_slot(s).map(|n| (i, n)))
            .collect();
        if external.is_empty() {
            return Ok(vec![]);
        }
        let mut out = Vec::new();
        for k in 0..external.len() {
            let (_, cur) = external[k];
            let (_, next) = external[(k + 1) % external.len()];
            out.push(cur);
            let entered = self.new_tri.boundary_partner(cur);
            let path = self
                .route((entered.tet, entered.vertex), (next.tet, next.vertex))
                .ok_or_else(|| {
                    Error::InvalidCurve("curve could not be carried across the move".into())
                })?;
            out.extend(path);
        }
        Ok(out)
    }
}

/// 2-3 move across the face `(tet, face)`, which must join two distinct
/// tetrahedra.
pub fn pachner_23(tri: &IdealTriangulation, tet: usize, face: u8) -> Result<MoveOutcome> {
    if tet >= tri.tet_count() || face > 3 {
        return Err(Error::IndexOutOfRange(format!("face ({tet}, {face})")));
    }
    let g = tri.gluing(tet, face);
    if g.tet == tet {
        return Err(Error::MoveNotApplicable(
            "2-3 move across a face joining a tetrahedron to itself is not supported".into(),
        ));
    }
    let xs = others(face);
    let mut a_labels = [0u8; 4];
    let mut b_labels = [0u8; 4];
    a_labels[face as usize] = 0;
    b_labels[g.face as usize] = 1;
    for (m, &x) in xs.iter().enumerate() {
        a_labels[x as usize] = 2 + m as u8;
        b_labels[g.perm.apply(x) as usize] = 2 + m as u8;
    }
    let mut old_labels = BTreeMap::new();
    old_labels.insert(tet, a_labels);
    old_labels.insert(g.tet, b_labels);
    let new_labels: Vec<[Label; 4]> = (0..3u8)
        .map(|k| {
            let rest: Vec<u8> = (0..3u8).filter(|&m| m != k).collect();
            [0, 1, 2 + rest[0], 2 + rest[1]]
        })
        .collect();
    let (new_tri, transport) = rebuild(tri, old_labels, new_labels)?;
    let new_edge = Some(new_tri.edge_class(transport.first_new, 0));
    Ok(MoveOutcome {
        triangulation: new_tri,
        new_edge,
        transport,
    })
}

/// 3-2 move about an interior edge class of valence three whose three
/// incident tetrahedra are distinct.
pub fn pachner_32(tri: &IdealTriangulation, edge_class: usize) -> Result<MoveOutcome> {
    if edge_class >= tri.edge_class_count() {
        return Err(Error::IndexOutOfRange(format!("edge class {edge_class}")));
    }
    let members = tri.edge_class_members(edge_class);
    if members.len() != 3 {
        return Err(Error::MoveNotApplicable(format!(
            "edge class {edge_class} has valence {}, not 3",
            members.len()
        )));
    }
    let mut tets: Vec<usize> = members.iter().map(|m| m.0).collect();
    tets.sort_unstable();
    tets.dedup();
    if tets.len() != 3 {
        return Err(Error::MoveNotApplicable(format!(
            "edge class {edge_class} meets a tetrahedron more than once"
        )));
    }
    let rest = |p: u8, q: u8| -> (u8, u8) {
        let v: Vec<u8> = (0..4u8).filter(|&x| x != p && x != q).collect();
        (v[0], v[1])
    };
    let (t0, e0) = members[0];
    let (p0, q0) = EDGE_VERTICES[e0];
    let (r0, s0) = rest(p0, q0);
    let g0 = tri.gluing(t0, s0);
    let (t1, p1, q1, r1) = (
        g0.tet,
        g0.perm.apply(p0),
        g0.perm.apply(q0),
        g0.perm.apply(r0),
    );
    let s1 = rest(p1, q1);
    let s1 = if s1.0 == r1 { s1.1 } else { s1.0 };
    let g1 = tri.gluing(t1, r1);
    let (t2, p2, q2, r2) = (
        g1.tet,
        g1.perm.apply(p1),
        g1.perm.apply(q1),
        g1.perm.apply(s1),
    );
    let s2 = rest(p2, q2);
    let s2 = if s2.0 == r2 { s2.1 } else { s2.0 };
    let g2 = tri.gluing(t2, r2);
    let closes = g2.tet == t0
        && g2.perm.apply(p2) == p0
        && g2.perm.apply(q2) == q0
        && g2.perm.apply(s2) == s0;
    if !closes || t0 == t1 || t1 == t2 || t0 == t2 {
        return Err(Error::MoveNotApplicable(format!(
            "degenerate identification around edge class {edge_class}"
        )));
    }
    debug_assert_eq!(tri.edge_class(t1, edge_index(p1, q1)), edge_class);
    let mut old_labels = BTreeMap::new();
    let mut l0 = [0u8; 4];
    l0[p0 as usize] = 0;
    l0[q0 as usize] = 1;
    l0[r0 as usize] = 2;
    l0[s0 as usize] = 4;
    let mut l1 = [0u8; 4];
    l1[p1 as usize] = 0;
    l1[q1 as usize] = 1;
    l1[r1 as usize] = 2;
    l1[s1 as usize] = 3;
    let mut l2 = [0u8; 4];
    l2[p2 as usize] = 0;
    l2[q2 as usize] = 1;
    l2[r2 as usize] = 3;
    l2[s2 as usize] = 4;
    old_labels.insert(t0, l0);
    old_labels.insert(t1, l1);
    old_labels.insert(t2, l2);
    let new_labels = vec![[0, 2, 3, 4], [1, 2, 3, 4]];
    let (new_tri, transport) = rebuild(tri, old_labels, new_labels)?;
    Ok(MoveOutcome {
        triangulation: new_tri,
        new_edge: None,
        transport,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tri::{isomorphism_signature, validate};

    #[test]
    fn two_three_on_every_face_validates() {
        let tri = fixtures::figure_eight();
        for tet in 0..2 {
            for face in 0..4u8 {
                let out = pachner_23(&tri, tet, face).unwrap();
                let t3 = &out.triangulation;
                assert_eq!(t3.tet_count(), 3);
                assert_eq!(t3.edge_class_count(), tri.edge_class_count() + 1);
                let report = validate(t3);
                assert!(report.ok, "{:?}", report.diagnostics);
                let e = out.new_edge.unwrap();
                assert_eq!(t3.edge_valence(e), 3);
            }
        }
    }

    #[test]
    fn three_two_inverts_two_three() {
        let tri = fixtures::figure_eight();
        let sig = isomorphism_signature(&tri);
        for tet in 0..2 {
            for face in 0..4u8 {
                let out = pachner_23(&tri, tet, face).unwrap();
                let back = pachner_32(&out.triangulation, out.new_edge.unwrap()).unwrap();
                assert_eq!(back.triangulation.tet_count(), 2);
                assert!(validate(&back.triangulation).ok);
                assert_eq!(isomorphism_signature(&back.triangulation), sig);
            }
        }
    }

    #[test]
    fn three_two_rejects_wrong_valence() {
        let tri = fixtures::figure_eight();
        let err = pachner_32(&tri, 0).unwrap_err();
        assert!(matches!(err, Error::MoveNotApplicable(_)));
    }

    #[test]
    fn slots_map_bijectively_off_the_internal_faces() {
        let tri = fixtures::figure_eight();
        let out = pachner_23(&tri, 0, 0).unwrap();
        let mut images = Vec::new();
        for tet in 0..2 {
            for v in 0..4u8 {
                for f in others(v) {
                    if let Some(n) = out.transport.map_slot(BoundarySlot {
                        tet,
                        vertex: v,
                        face: f,
                    }) {
                        images.push(n);
                    }
                }
            }
        }
        let before = images.len();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), before);
        // six slots lie on the glued face (three per side)
        assert_eq!(before, 24 - 6);
    }
}
