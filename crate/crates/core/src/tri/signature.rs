//! Canonical isomorphism signatures: the lexicographically least gluing code
//! over every choice of starting tetrahedron and vertex labelling.

use super::IdealTriangulation;
use crate::perm::Perm4;

fn perm_rank(p: Perm4) -> u32 {
    let mut rank = 0u32;
    let mut pool: Vec<u8> = vec![0, 1, 2, 3];
    for (slot, radix) in [6u32, 2, 1, 1].iter().enumerate() {
        let idx = pool.iter().position(|&x| x == p.0[slot]).unwrap();
        rank += idx as u32 * radix;
        pool.remove(idx);
    }
    rank
}

fn code_from(tri: &IdealTriangulation, start: usize, start_perm: Perm4) -> Vec<u32> {
    let t = tri.tet_count();
    let mut new_index = vec![usize::MAX; t];
    // relabel[old tet] : old vertex -> new vertex
    let mut relabel = vec![Perm4::IDENTITY; t];
    let mut order = Vec::with_capacity(t);
    new_index[start] = 0;
    relabel[start] = start_perm;
    order.push(start);
    let mut code = Vec::with_capacity(4 * t * 2);
    let mut next_unvisited = 0;
    let mut i = 0;
    loop {
        while i < order.len() {
            let old = order[i];
            let inv = relabel[old].inverse();
            for new_face in 0..4u8 {
                let old_face = inv.apply(new_face);
                let g = tri.gluing(old, old_face);
                if new_index[g.tet] == usize::MAX {
                    new_index[g.tet] = order.len();
                    // new label of g.perm(x) equals new label of x
                    relabel[g.tet] = relabel[old].compose(g.perm.inverse());
                    order.push(g.tet);
                }
                let composed = relabel[g.tet].compose(g.perm).compose(inv);
                code.push(new_index[g.tet] as u32);
                code.push(perm_rank(composed));
            }
            i += 1;
        }
        // disconnected input: continue from the lowest unvisited tetrahedron
        while next_unvisited < t && new_index[next_unvisited] != usize::MAX {
            next_unvisited += 1;
        }
        if next_unvisited == t {
            break;
        }
        new_index[next_unvisited] = order.len();
        order.push(next_unvisited);
    }
    code
}

/// Canonical signature; equal signatures iff the triangulations are
/// combinatorially isomorphic (for connected inputs).
pub fn isomorphism_signature(tri: &IdealTriangulation) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for start in 0..tri.tet_count() {
        for p in Perm4::all() {
            let code = code_from(tri, start, p);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    let mut out = vec![tri.tet_count() as u32];
    out.extend(best.unwrap_or_default());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tri::Gluing;

    fn relabelled(
        tri: &IdealTriangulation,
        tet_perm: &[usize],
        vperm: &[Perm4],
    ) -> IdealTriangulation {
        let t = tri.tet_count();
        let mut rows = vec![
            [Gluing {
                tet: 0,
                face: 0,
                perm: Perm4::IDENTITY
            }; 4];
            t
        ];
        for old in 0..t {
            for f in 0..4u8 {
                let g = tri.gluing(old, f);
                let nf = vperm[old].apply(f);
                let perm = vperm[g.tet].compose(g.perm).compose(vperm[old].inverse());
                rows[tet_perm[old]][nf as usize] = Gluing {
                    tet: tet_perm[g.tet],
                    face: vperm[g.tet].apply(g.face),
                    perm,
                };
            }
        }
        IdealTriangulation::new(rows).unwrap()
    }

    #[test]
    fn signature_invariant_under_relabelling() {
        let tri = fixtures::figure_eight();
        let sig = isomorphism_signature(&tri);
        let perms: Vec<Perm4> = Perm4::all().collect();
        for (a, b) in [(3usize, 17usize), (5, 0), (23, 11)] {
            let other = relabelled(&tri, &[1, 0], &[perms[a], perms[b]]);
            assert_eq!(isomorphism_signature(&other), sig);
        }
    }

    #[test]
    fn perm_rank_is_bijective() {
        let mut ranks: Vec<u32> = Perm4::all().map(perm_rank).collect();
        ranks.sort();
        assert_eq!(ranks, (0..24).collect::<Vec<_>>());
    }
}
