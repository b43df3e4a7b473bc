//! Edge contractions on a triangulated torus, with curve words carried
//! along, and the meridional edge-degree bound obtained from them.
//!
//! Contracting edge `ab` collapses its two triangles `abc` and `abd` onto
//! the edges `ac = bc` and `ad = bd`. A curve segment that ran through the
//! collapsed triangles is first pushed off the contracted edge.

use num::BigUint;
use serde::Serialize;

use super::complex::{Perm3, Side, SideGluing, SurfaceComplex};
use super::torus::BoundaryTorus;
use super::word::{normalize_curve, word_to_ids, CurveWord};
use crate::error::{Error, Result};

struct Contraction {
    complex: SurfaceComplex,
    tri_map: Vec<Option<usize>>,
}

fn swap_corners(collapse: u8) -> Perm3 {
    let mut p = [0u8, 1, 2];
    let (i, j) = ((collapse + 1) % 3, (collapse + 2) % 3);
    p.swap(i as usize, j as usize);
    Perm3(p)
}

fn contract_raw(s: &SurfaceComplex, edge: usize) -> Option<Contraction> {
    if edge >= s.edge_count() || s.is_loop(edge) {
        return None;
    }
    let [sa, sb] = s.edge_sides(edge);
    if sa.tri == sb.tri {
        return None;
    }
    let collapse_side = |t: usize| -> Option<u8> {
        if t == sa.tri {
            Some(sa.side)
        } else if t == sb.tri {
            Some(sb.side)
        } else {
            None
        }
    };
    let n = s.triangle_count();
    let mut tri_map = vec![None; n];
    let mut k = 0;
    for (t, slot) in tri_map.iter_mut().enumerate() {
        if collapse_side(t).is_none() {
            *slot = Some(k);
            k += 1;
        }
    }
    let mut rows = Vec::with_capacity(k);
    for t in 0..n {
        let Some(_) = tri_map[t] else { continue };
        let mut row = [SideGluing {
            tri: 0,
            side: 0,
            corners: Perm3([0, 1, 2]),
        }; 3];
        for side in 0..3u8 {
            let mut g = s.gluing(Side { tri: t, side });
            let mut steps = 0;
            while let Some(c) = collapse_side(g.tri) {
                if g.side == c || steps > 4 {
                    return None;
                }
                let through = 3 - c - g.side;
                let acc = swap_corners(c).compose(g.corners);
                let next = s.gluing(Side {
                    tri: g.tri,
                    side: through,
                });
                g = SideGluing {
                    tri: next.tri,
                    side: next.side,
                    corners: next.corners.compose(acc),
                };
                steps += 1;
            }
            if g.tri == t && g.side == side {
                return None;
            }
            row[side as usize] = SideGluing {
                tri: tri_map[g.tri].expect("kept"),
                side: g.side,
                corners: g.corners,
            };
        }
        rows.push(row);
    }
    let complex = SurfaceComplex::new(rows).ok()?;
    let before = s.summary();
    let after = complex.summary();
    if (after.triangles, after.edges, after.vertices)
        != (before.triangles - 2, before.edges - 3, before.vertices - 1)
        || !after.is_torus()
    {
        return None;
    }
    Some(Contraction { complex, tri_map })
}

/// Non-loop edges whose contraction leaves a torus with one vertex, three
/// edges and two triangles fewer.
pub fn contractible_edges(torus: &BoundaryTorus) -> Vec<usize> {
    (0..torus.complex.edge_count())
        .filter(|&e| contract_raw(&torus.complex, e).is_some())
        .collect()
}

/// Pushes every crossing of `edge` across the endpoint it turns around, so
/// the curve passes the two triangles of `edge` only between their other
/// sides. Each crossing is replaced by a walk around that vertex the other
/// way; the backtracks this creates are removed.
fn sweep_off(s: &SurfaceComplex, edge: usize, word: &CurveWord) -> Result<CurveWord> {
    let mut w = normalize_curve(s, word);
    let limit = w.len() + 1;
    for _ in 0..limit {
        let n = w.len();
        let Some(j) = (0..n).find(|&j| s.edge_of(w.sides[j]) == edge) else {
            return Ok(w);
        };
        let x = w.sides[j];
        let entry = s.partner(w.sides[(j + n - 1) % n]).side;
        if entry == x.side {
            return Err(Error::InvalidCurve("curve backtracks".into()));
        }
        let p = 3 - x.side - entry;
        let g = s.gluing(x);
        let target = (g.tri, g.corners.apply(p));
        let walk = s.walk_link(x.tri, p, entry);
        let stop = walk
            .iter()
            .position(|&((_, c), out)| {
                let h = s.gluing(out);
                (h.tri, h.corners.apply(c)) == target
            })
            .ok_or_else(|| Error::InvalidCurve("vertex link does not close".into()))?;
        let detour: Vec<Side> = walk[..=stop].iter().map(|&(_, out)| out).collect();
        let mut sides = Vec::with_capacity(n + detour.len());
        sides.extend_from_slice(&w.sides[..j]);
        sides.extend(detour);
        sides.extend_from_slice(&w.sides[j + 1..]);
        w = normalize_curve(s, &CurveWord::new(sides));
    }
    Err(Error::InvalidCurve(
        "could not move curve off the contracted edge".into(),
    ))
}

fn rewrite(
    old: &SurfaceComplex,
    c: &Contraction,
    edge: usize,
    word: &CurveWord,
) -> Result<CurveWord> {
    let swept = sweep_off(old, edge, word)?;
    let kept = |t: usize| c.tri_map[t].is_some();
    let out = swept
        .sides
        .iter()
        .filter(|x| kept(x.tri))
        .map(|x| Side {
            tri: c.tri_map[x.tri].expect("kept"),
            side: x.side,
        })
        .collect();
    Ok(CurveWord::new(out))
}

/// Contracts `edge`, rewriting and normalizing `word`.
pub fn contract_edge(
    torus: &BoundaryTorus,
    edge: usize,
    word: &CurveWord,
) -> Result<(BoundaryTorus, CurveWord)> {
    let c = contract_raw(&torus.complex, edge).ok_or(Error::NotContractible(edge))?;
    word.check(&torus.complex)?;
    let rewritten = rewrite(&torus.complex, &c, edge, word)?;
    let normalized = normalize_curve(&c.complex, &rewritten);
    normalized.check(&c.complex)?;
    let mut origin = vec![None; c.complex.triangle_count()];
    for (t, m) in c.tri_map.iter().enumerate() {
        if let Some(nt) = m {
            origin[*nt] = torus.origin.get(t).copied().flatten();
        }
    }
    Ok((
        BoundaryTorus {
            complex: c.complex,
            origin,
        },
        normalized,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub contracted_edge: usize,
    pub word: Vec<String>,
    pub word_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeridionalBound {
    /// Normalized length of the input word.
    pub initial_length: usize,
    pub steps: Vec<TraceStep>,
    /// Final word length `n`.
    pub n: usize,
    /// Contractions performed `k`.
    pub k: usize,
    /// `n * 4^k`.
    pub u: u64,
    /// `n * 4^(edges of the input complex)`, in decimal.
    pub coarse_bound: String,
    /// (vertices, edges, triangles) of the terminal complex.
    pub terminal: (usize, usize, usize),
    /// Set when the terminal complex is not the one-vertex, three-edge torus.
    pub deviation: Option<String>,
}

/// Contracts the lowest-numbered contractible edge until none remains.
pub fn meridional_bound(torus: &BoundaryTorus, meridian: &CurveWord) -> Result<MeridionalBound> {
    meridian.check(&torus.complex)?;
    let coarse_exp = torus.complex.edge_count();
    let mut word = normalize_curve(&torus.complex, meridian);
    let initial_length = word.len();
    if word.is_empty() {
        return Err(Error::InvalidCurve(
            "meridian is inessential (normalizes to length 0)".into(),
        ));
    }
    let mut current = torus.clone();
    let mut steps = Vec::new();
    while let Some(&e) = contractible_edges(&current).first() {
        let (next, w) = contract_edge(&current, e, &word)?;
        steps.push(TraceStep {
            contracted_edge: e,
            word: word_to_ids(&next.complex, &w),
            word_length: w.len(),
        });
        current = next;
        word = w;
    }
    let n = word.len();
    let k = steps.len();
    let u = 4u64
        .checked_pow(k as u32)
        .and_then(|p| p.checked_mul(n as u64))
        .ok_or_else(|| Error::Overflow(format!("{n} * 4^{k}")))?;
    let coarse = BigUint::from(n) * BigUint::from(4u32).pow(coarse_exp as u32);
    let terminal = current.counts();
    let deviation = if terminal == (1, 3, 2) {
        None
    } else {
        Some(format!(
            "terminal complex has {} vertices, {} edges, {} triangles",
            terminal.0, terminal.1, terminal.2
        ))
    };
    Ok(MeridionalBound {
        initial_length,
        steps,
        n,
        k,
        u,
        coarse_bound: coarse.to_string(),
        terminal,
        deviation,
    })
}
