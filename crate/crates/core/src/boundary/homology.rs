//! Homology classes of curves on a triangulated torus, read off as
//! algebraic intersection numbers with two edge cycles.

use std::collections::VecDeque;

use serde::Serialize;

use super::complex::{Side, SurfaceComplex};
use super::word::CurveWord;
use crate::error::{Error, Result};

/// Two edge cycles spanning first homology, each as signed edge counts
/// relative to the direction of the edge's first side.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    cycles: [Vec<i64>; 2],
    orientation: Vec<i8>,
}

/// Direction of `side` relative to its edge's reference direction.
fn side_direction(s: &SurfaceComplex, side: Side) -> i64 {
    let e = s.edge_of(side);
    let first = s.edge_sides(e)[0];
    if first == side {
        return 1;
    }
    let g = s.gluing(first);
    if g.corners.apply((first.side + 1) % 3) == (side.side + 1) % 3 {
        1
    } else {
        -1
    }
}

/// Tree-cotree decomposition: the two edges in neither the spanning tree
/// nor the dual spanning tree close up the basis cycles.
pub fn cycle_basis(s: &SurfaceComplex) -> Result<CycleBasis> {
    let orientation = s
        .orientation()
        .ok_or_else(|| Error::BoundaryNotTorus("surface is not orientable".into()))?;
    let nv = s.vertex_count();
    let ne = s.edge_count();
    // spanning tree of the 1-skeleton, breadth first from vertex 0
    let mut parent: Vec<Option<(usize, usize, i64)>> = vec![None; nv]; // (prev vertex, edge, sign)
    let mut seen = vec![false; nv];
    let mut in_tree = vec![false; ne];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for e in 0..ne {
            let (a, b) = s.edge_endpoints(e);
            let (other, sign) = if a == x && !seen[b] {
                (b, 1)
            } else if b == x && !seen[a] {
                (a, -1)
            } else {
                continue;
            };
            seen[other] = true;
            in_tree[e] = true;
            parent[other] = Some((x, e, sign));
            queue.push_back(other);
        }
    }
    // spanning tree of the dual graph avoiding tree edges
    let nt = s.triangle_count();
    let mut tseen = vec![false; nt];
    let mut in_cotree = vec![false; ne];
    tseen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        for side in 0..3u8 {
            let here = Side { tri: t, side };
            let e = s.edge_of(here);
            let p = s.partner(here);
            if in_tree[e] || tseen[p.tri] {
                continue;
            }
            tseen[p.tri] = true;
            in_cotree[e] = true;
            queue.push_back(p.tri);
        }
    }
    let leftover: Vec<usize> = (0..ne).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();
    if leftover.len() != 2 {
        return Err(Error::BoundaryNotTorus(format!(
            "tree-cotree leaves {} edges, expected 2",
            leftover.len()
        )));
    }
    let path_to_root = |mut v: usize, counts: &mut Vec<i64>, factor: i64| {
        while let Some((prev, e, sign)) = parent[v] {
            // walking from v back to prev runs against the tree direction
            counts[e] -= factor * sign;
            v = prev;
        }
    };
    let mut cycles: [Vec<i64>; 2] = [vec![0; ne], vec![0; ne]];
    for (k, &e) in leftover.iter().enumerate() {
        let (a, b) = s.edge_endpoints(e);
        let c = &mut cycles[k];
        // root -> a, then e, then b -> root
        path_to_root(a, c, -1);
        c[e] += 1;
        path_to_root(b, c, 1);
    }
    Ok(CycleBasis {
        cycles,
        orientation,
    })
}

impl CycleBasis {
    /// Algebraic intersection numbers of a curve with the two basis cycles.
    pub fn pairing(&self, s: &SurfaceComplex, w: &CurveWord) -> (i64, i64) {
        let mut out = [0i64; 2];
        for &x in &w.sides {
            let e = s.edge_of(x);
            let sign = self.orientation[x.tri] as i64 * side_direction(s, x);
            for k in 0..2 {
                out[k] += sign * self.cycles[k][e];
            }
        }
        (out[0], out[1])
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Coordinates of curves against the marked meridian `m` and a companion
/// curve `l` with algebraic intersection one. The second coordinate is
/// the intersection number with the meridian; the first depends on the
/// choice of `l`.
#[derive(Clone, Debug)]
pub struct SlopeFrame {
    basis: CycleBasis,
    meridian: (i64, i64),
    companion: (i64, i64),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl SlopeFrame {
    pub fn new(s: &SurfaceComplex, meridian: &CurveWord) -> Result<SlopeFrame> {
        let basis = cycle_basis(s)?;
        let (m1, m2) = basis.pairing(s, meridian);
        let (g, x, y) = ext_gcd(m1, m2);
        if g.abs() != 1 {
            return Err(Error::InvalidCurve(format!(
                "meridian class ({m1}, {m2}) is not primitive"
            )));
        }
        // m1 * l2 - m2 * l1 = 1 with l = (-y, x) / g
        let companion = (-y * g, x * g);
        debug_assert_eq!(m1 * companion.1 - m2 * companion.0, 1);
        Ok(SlopeFrame {
            basis,
            meridian: (m1, m2),
            companion,
        })
    }

    /// Unoriented slope, sign-normalized so `q > 0`, or `q = 0` and `p >= 0`.
    pub fn slope(&self, s: &SurfaceComplex, w: &CurveWord) -> Slope {
        let (c1, c2) = self.basis.pairing(s, w);
        let (m1, m2) = self.meridian;
        let (l1, l2) = self.companion;
        let mut q = m1 * c2 - m2 * c1;
        let mut p = c1 * l2 - c2 * l1;
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Slope { p, q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::complex::tests::three_edge_torus;

    fn side(tri: usize, side: u8) -> Side {
        Side { tri, side }
    }

    #[test]
    fn standard_curves_have_independent_classes() {
        let t = three_edge_torus();
        let horizontal = CurveWord::new(vec![side(1, 2), side(0, 0)]);
        let vertical = CurveWord::new(vec![side(0, 1), side(1, 0)]);
        horizontal.check(&t).unwrap();
        vertical.check(&t).unwrap();
        let frame = SlopeFrame::new(&t, &horizontal).unwrap();
        assert_eq!(frame.slope(&t, &horizontal), Slope { p: 1, q: 0 });
        assert_eq!(frame.slope(&t, &vertical).q, 1);
    }
}
