//! Curves on a triangulated surface as cyclic words of exit sides: entry `i`
//! is the side through which the curve leaves its `i`-th triangle.

use serde::{Deserialize, Serialize};

use super::complex::{Side, SurfaceComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CurveWord {
    pub sides: Vec<Side>,
}

impl CurveWord {
    pub fn new(sides: Vec<Side>) -> CurveWord {
        CurveWord { sides }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    /// Edge ids crossed, in order.
    pub fn edges(&self, s: &SurfaceComplex) -> Vec<usize> {
        self.sides.iter().map(|&x| s.edge_of(x)).collect()
    }

    /// Each exit leads into the triangle of the next exit.
    pub fn check(&self, s: &SurfaceComplex) -> Result<()> {
        let n = self.sides.len();
        for (i, &x) in self.sides.iter().enumerate() {
            if x.tri >= s.triangle_count() || x.side > 2 {
                return Err(Error::InvalidCurve(format!("side {x:?} out of range")));
            }
            let next = self.sides[(i + 1) % n];
            if s.partner(x).tri != next.tri {
                return Err(Error::InvalidCurve(format!(
                    "crossing {i} leads into triangle {}, but the next crossing leaves triangle {}",
                    s.partner(x).tri,
                    next.tri
                )));
            }
        }
        Ok(())
    }

    /// Whether the word is free of immediate backtracks.
    pub fn is_normal(&self, s: &SurfaceComplex) -> bool {
        let n = self.sides.len();
        (0..n).all(|i| n < 2 || self.sides[(i + 1) % n] != s.partner(self.sides[i]))
    }
}

/// Repeatedly cancels a crossing followed by the crossing straight back.
/// A curve that cancels completely lies in one triangle and has length 0.
pub fn normalize_curve(s: &SurfaceComplex, word: &CurveWord) -> CurveWord {
    let mut w = word.sides.clone();
    loop {
        let n = w.len();
        if n < 2 {
            // a single crossing of a side glued back into the same triangle
            return CurveWord::new(w);
        }
        let Some(i) = (0..n).find(|&i| w[(i + 1) % n] == s.partner(w[i])) else {
            return CurveWord::new(w);
        };
        if i + 1 < n {
            w.drain(i..i + 2);
        } else {
            w.pop();
            w.remove(0);
        }
    }
}

/// Parses an edge id of the form `B<k>`.
pub fn parse_edge_id(id: &str) -> Result<usize> {
    id.strip_prefix('B')
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| Error::InvalidCurve(format!("bad boundary edge id {id:?}")))
}

/// Resolves a cyclic sequence of edges into exit sides by backtracking over
/// the crossing direction at each edge (first side of an edge tried first).
pub fn word_from_edges(s: &SurfaceComplex, edges: &[usize]) -> Result<CurveWord> {
    if edges.is_empty() {
        return Ok(CurveWord::default());
    }
    for &e in edges {
        if e >= s.edge_count() {
            return Err(Error::InvalidCurve(format!("edge {e} out of range")));
        }
    }
    let mut chosen = Vec::with_capacity(edges.len());
    if pick(s, edges, &mut chosen) {
        Ok(CurveWord::new(chosen))
    } else {
        Err(Error::InvalidCurve(
            "edge sequence does not describe a closed curve through adjacent triangles".into(),
        ))
    }
}

fn pick(s: &SurfaceComplex, edges: &[usize], chosen: &mut Vec<Side>) -> bool {
    let i = chosen.len();
    if i == edges.len() {
        return s.partner(chosen[i - 1]).tri == chosen[0].tri;
    }
    for side in s.edge_sides(edges[i]) {
        if i > 0 && s.partner(chosen[i - 1]).tri != side.tri {
            continue;
        }
        chosen.push(side);
        if pick(s, edges, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

pub fn word_from_ids(s: &SurfaceComplex, ids: &[String]) -> Result<CurveWord> {
    let edges = ids
        .iter()
        .map(|x| parse_edge_id(x))
        .collect::<Result<Vec<_>>>()?;
    word_from_edges(s, &edges)
}

pub fn word_to_ids(s: &SurfaceComplex, w: &CurveWord) -> Vec<String> {
    w.edges(s)
        .into_iter()
        .map(crate::tri::boundary_edge_id)
        .collect()
}
