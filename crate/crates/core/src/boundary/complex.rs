//! Triangulated closed surfaces given by side gluings.
//!
//! A triangle has corners 0, 1, 2; side `s` is the side opposite corner `s`.
//! A side gluing carries a permutation of {0, 1, 2} sending each corner of the
//! source triangle to the matching corner of the target, with the opposite
//! corner (the side index) mapped to the target side index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm3(pub [u8; 3]);

impl Perm3 {
    #[inline]
    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn inverse(self) -> Perm3 {
        let mut out = [0u8; 3];
        for i in 0..3u8 {
            out[self.0[i as usize] as usize] = i;
        }
        Perm3(out)
    }

    pub fn compose(self, first: Perm3) -> Perm3 {
        Perm3([
            self.0[first.0[0] as usize],
            self.0[first.0[1] as usize],
            self.0[first.0[2] as usize],
        ])
    }

    pub fn is_bijection(self) -> bool {
        let mut seen = [false; 3];
        for &x in &self.0 {
            if x > 2 || seen[x as usize] {
                return false;
            }
            seen[x as usize] = true;
        }
        true
    }
}

/// A triangle side slot.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Side {
    pub tri: usize,
    pub side: u8,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SideGluing {
    pub tri: usize,
    pub side: u8,
    pub corners: Perm3,
}

/// Closed triangulated surface with derived edge and vertex classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComplex {
    gluings: Vec<[SideGluing; 3]>,
    edge_of: Vec<[usize; 3]>,
    edges: Vec<[Side; 2]>,
    vertex_of: Vec<[usize; 3]>,
    vertex_count: usize,
}

/// Topological summary of a closed surface complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub triangles: usize,
    pub edges: usize,
    pub vertices: usize,
    pub euler: i64,
    pub components: usize,
    pub orientable: bool,
}

impl SurfaceSummary {
    pub fn is_torus(&self) -> bool {
        self.components == 1 && self.orientable && self.euler == 0
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

impl SurfaceComplex {
    /// Checks the gluing table is an involution with no side glued to itself.
    pub fn new(gluings: Vec<[SideGluing; 3]>) -> Result<SurfaceComplex> {
        let n = gluings.len();
        for (t, row) in gluings.iter().enumerate() {
            for s in 0..3u8 {
                let g = row[s as usize];
                let bad = |reason: &str| Error::InconsistentGluing {
                    tet: t,
                    face: s,
                    reason: reason.to_string(),
                };
                if g.tri >= n || g.side > 2 {
                    return Err(bad("target out of range"));
                }
                if !g.corners.is_bijection() || g.corners.apply(s) != g.side {
                    return Err(bad("corner map is not a bijection onto the target side"));
                }
                if g.tri == t && g.side == s {
                    return Err(bad("side glued to itself"));
                }
                let back = gluings[g.tri][g.side as usize];
                if back.tri != t || back.side != s || back.corners != g.corners.inverse() {
                    return Err(bad("gluing is not an involution"));
                }
            }
        }

        let mut edge_of = vec![[usize::MAX; 3]; n];
        let mut edges = Vec::new();
        for t in 0..n {
            for s in 0..3u8 {
                if edge_of[t][s as usize] == usize::MAX {
                    let g = gluings[t][s as usize];
                    let id = edges.len();
                    edge_of[t][s as usize] = id;
                    edge_of[g.tri][g.side as usize] = id;
                    edges.push([
                        Side { tri: t, side: s },
                        Side {
                            tri: g.tri,
                            side: g.side,
                        },
                    ]);
                }
            }
        }

        let mut parent: Vec<usize> = (0..3 * n).collect();
        for t in 0..n {
            for s in 0..3u8 {
                let g = gluings[t][s as usize];
                for c in 0..3u8 {
                    if c != s {
                        union(
                            &mut parent,
                            3 * t + c as usize,
                            3 * g.tri + g.corners.apply(c) as usize,
                        );
                    }
                }
            }
        }
        let mut vertex_of = vec![[0usize; 3]; n];
        let mut root_id = vec![usize::MAX; 3 * n];
        let mut vertex_count = 0;
        for t in 0..n {
            for c in 0..3 {
                let r = find(&mut parent, 3 * t + c);
                if root_id[r] == usize::MAX {
                    root_id[r] = vertex_count;
                    vertex_count += 1;
                }
                vertex_of[t][c] = root_id[r];
            }
        }
        Ok(SurfaceComplex {
            gluings,
            edge_of,
            edges,
            vertex_of,
            vertex_count,
        })
    }

    pub fn triangle_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn gluing(&self, side: Side) -> SideGluing {
        self.gluings[side.tri][side.side as usize]
    }

    pub fn gluings(&self) -> &[[SideGluing; 3]] {
        &self.gluings
    }

    /// The side on the other triangle across `side`.
    pub fn partner(&self, side: Side) -> Side {
        let g = self.gluing(side);
        Side {
            tri: g.tri,
            side: g.side,
        }
    }

    pub fn edge_of(&self, side: Side) -> usize {
        self.edge_of[side.tri][side.side as usize]
    }

    pub fn edge_sides(&self, edge: usize) -> [Side; 2] {
        self.edges[edge]
    }

    pub fn vertex_of_corner(&self, tri: usize, corner: u8) -> usize {
        self.vertex_of[tri][corner as usize]
    }

    /// Endpoint vertices of an edge, read off its first side.
    pub fn edge_endpoints(&self, edge: usize) -> (usize, usize) {
        let s = self.edges[edge][0];
        let a = (s.side + 1) % 3;
        let b = (s.side + 2) % 3;
        (
            self.vertex_of_corner(s.tri, a),
            self.vertex_of_corner(s.tri, b),
        )
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (a, b) = self.edge_endpoints(edge);
        a == b
    }

    /// Orientation sign per triangle if the surface is orientable; each
    /// component's lowest triangle is positive.
    pub fn orientation(&self) -> Option<Vec<i8>> {
        let n = self.triangle_count();
        let mut eps = vec![0i8; n];
        for start in 0..n {
            if eps[start] != 0 {
                continue;
            }
            eps[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for s in 0..3u8 {
                    let g = self.gluings[t][s as usize];
                    let forward = g.corners.apply((s + 1) % 3) == (g.side + 1) % 3;
                    let want = if forward { -eps[t] } else { eps[t] };
                    if eps[g.tri] == 0 {
                        eps[g.tri] = want;
                        stack.push(g.tri);
                    } else if eps[g.tri] != want {
                        return None;
                    }
                }
            }
        }
        Some(eps)
    }

    pub fn components(&self) -> Vec<usize> {
        let n = self.triangle_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for g in &self.gluings[t] {
                    if comp[g.tri] == usize::MAX {
                        comp[g.tri] = count;
                        stack.push(g.tri);
                    }
                }
            }
            count += 1;
        }
        comp
    }

    pub fn summary(&self) -> SurfaceSummary {
        let comps = self.components();
        let components = comps.iter().copied().max().map_or(0, |m| m + 1);
        SurfaceSummary {
            triangles: self.triangle_count(),
            edges: self.edge_count(),
            vertices: self.vertex_count(),
            euler: self.vertex_count() as i64 - self.edge_count() as i64
                + self.triangle_count() as i64,
            components,
            orientable: self.orientation().is_some(),
        }
    }

    /// Walks once around the vertex at `(tri, corner)` starting through side
    /// `first_side` (one of the two sides at that corner). Returns the corners
    /// visited (starting corner first) and the side crossed out of each.
    pub fn walk_link(&self, tri: usize, corner: u8, first_side: u8) -> Vec<((usize, u8), Side)> {
        debug_assert!(first_side != corner);
        let mut out = Vec::new();
        let (mut t, mut c, mut s) = (tri, corner, first_side);
        loop {
            out.push(((t, c), Side { tri: t, side: s }));
            let g = self.gluings[t][s as usize];
            let nc = g.corners.apply(c);
            let ns = 3 - g.side - nc;
            t = g.tri;
            c = nc;
            s = ns;
            if t == tri && c == corner && s == first_side {
                break;
            }
            if out.len() > 3 * self.triangle_count() + 3 {
                break;
            }
        }
        out
    }

    /// Vertex degree counted as the number of corners at the vertex.
    pub fn vertex_degree(&self, v: usize) -> usize {
        self.vertex_of.iter().flatten().filter(|&&x| x == v).count()
    }
}
