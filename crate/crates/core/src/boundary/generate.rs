//! Inverse contractions: subdividing a triangle at an interior point or an
//! edge at its midpoint, carrying a curve word along. Used to build test
//! tori with known contraction depth.

use std::collections::{BTreeMap, VecDeque};

use super::complex::{Perm3, Side, SideGluing, SurfaceComplex};
use super::word::{normalize_curve, CurveWord};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Label {
    Corner(usize, u8),
    Mid,
    Center,
}

struct Piece {
    origin: usize,
    labels: [Label; 3],
}

/// The side of old triangle `t` on which a new side with these corner
/// labels lies, if any.
fn old_side(t: usize, split: Option<(usize, u8)>, x: Label, y: Label) -> Option<u8> {
    let on = |l: Label, j: u8| match l {
        Label::Corner(tt, k) => tt == t && k != j,
        Label::Mid => split == Some((t, j)),
        Label::Center => false,
    };
    (0..3u8).find(|&j| on(x, j) && on(y, j))
}

fn rebuild(
    s: &SurfaceComplex,
    pieces: Vec<Piece>,
    split: &[(usize, u8)],
) -> Result<(SurfaceComplex, Vec<[Option<(usize, u8)>; 3]>)> {
    let split_of = |t: usize| split.iter().copied().find(|&(tt, _)| tt == t);
    // sides keyed by origin triangle and label pair
    let mut by_key: BTreeMap<(usize, Label, Label), Vec<Side>> = BTreeMap::new();
    for (i, p) in pieces.iter().enumerate() {
        for side in 0..3u8 {
            let x = p.labels[((side + 1) % 3) as usize];
            let y = p.labels[((side + 2) % 3) as usize];
            by_key
                .entry((p.origin, x.min(y), x.max(y)))
                .or_default()
                .push(Side { tri: i, side });
        }
    }
    let position = |p: &Piece, l: Label| p.labels.iter().position(|&x| x == l).map(|k| k as u8);
    let mut rows = Vec::with_capacity(pieces.len());
    let mut on_old = Vec::with_capacity(pieces.len());
    for (i, p) in pieces.iter().enumerate() {
        let mut row = [SideGluing {
            tri: 0,
            side: 0,
            corners: Perm3([0, 1, 2]),
        }; 3];
        let mut homes = [None; 3];
        for side in 0..3u8 {
            let x = p.labels[((side + 1) % 3) as usize];
            let y = p.labels[((side + 2) % 3) as usize];
            let (target, fx, fy) = match old_side(p.origin, split_of(p.origin), x, y) {
                Some(j) => {
                    homes[side as usize] = Some((p.origin, j));
                    let g = s.gluing(Side {
                        tri: p.origin,
                        side: j,
                    });
                    let phi = |l: Label| match l {
                        Label::Corner(_, k) => Label::Corner(g.tri, g.corners.apply(k)),
                        other => other,
                    };
                    let (fx, fy) = (phi(x), phi(y));
                    let cands = by_key
                        .get(&(g.tri, fx.min(fy), fx.max(fy)))
                        .ok_or_else(|| Error::InvalidArgument("subdivision lost a side".into()))?;
                    let t = cands
                        .iter()
                        .copied()
                        .find(|c| (c.tri, c.side) != (i, side))
                        .ok_or_else(|| {
                            Error::InvalidArgument("subdivision side has no partner".into())
                        })?;
                    (t, fx, fy)
                }
                None => {
                    let cands = &by_key[&(p.origin, x.min(y), x.max(y))];
                    let t = cands
                        .iter()
                        .copied()
                        .find(|c| (c.tri, c.side) != (i, side))
                        .ok_or_else(|| {
                            Error::InvalidArgument("internal side has no partner".into())
                        })?;
                    (t, x, y)
                }
            };
            let q = &pieces[target.tri];
            let mut map = [0u8; 3];
            map[side as usize] = target.side;
            map[((side + 1) % 3) as usize] = position(q, fx).expect("label present");
            map[((side + 2) % 3) as usize] = position(q, fy).expect("label present");
            row[side as usize] = SideGluing {
                tri: target.tri,
                side: target.side,
                corners: Perm3(map),
            };
        }
        rows.push(row);
        on_old.push(homes);
    }
    Ok((SurfaceComplex::new(rows)?, on_old))
}

/// Carries a word across a subdivision: each old crossing becomes a crossing
/// of a new side on the same old side, joined by shortest paths inside the
/// pieces of each old triangle.
fn transport(
    new: &SurfaceComplex,
    homes: &[[Option<(usize, u8)>; 3]],
    word: &CurveWord,
) -> Result<CurveWord> {
    let n = word.len();
    if n == 0 {
        return Ok(CurveWord::default());
    }
    // candidate new sides for each old exit side
    let mut on_side: BTreeMap<(usize, u8), Vec<Side>> = BTreeMap::new();
    for (i, h) in homes.iter().enumerate() {
        for side in 0..3u8 {
            if let Some(home) = h[side as usize] {
                on_side.entry(home).or_default().push(Side { tri: i, side });
            }
        }
    }
    let internal = |x: Side| homes[x.tri][x.side as usize].is_none();
    // shortest internal path from triangle a to triangle b, as exit sides
    let path = |a: usize, b: usize| -> Option<Vec<Side>> {
        let mut prev: BTreeMap<usize, Side> = BTreeMap::new();
        let mut queue = VecDeque::from([a]);
        let mut seen = vec![false; new.triangle_count()];
        seen[a] = true;
        while let Some(t) = queue.pop_front() {
            if t == b {
                let mut out = Vec::new();
                let mut at = b;
                while at != a {
                    let x = prev[&at];
                    out.push(x);
                    at = x.tri;
                }
                out.reverse();
                return Some(out);
            }
            for side in 0..3u8 {
                let x = Side { tri: t, side };
                if !internal(x) {
                    continue;
                }
                let p = new.partner(x);
                if !seen[p.tri] {
                    seen[p.tri] = true;
                    prev.insert(p.tri, x);
                    queue.push_back(p.tri);
                }
            }
        }
        None
    };
    // choose the new crossing for each old crossing greedily
    let mut chosen: Vec<Side> = Vec::with_capacity(n);
    for (i, x) in word.sides.iter().enumerate() {
        let cands = &on_side[&(x.tri, x.side)];
        let pick = if cands.len() == 1 || i == 0 {
            cands[0]
        } else {
            let entered = new.partner(chosen[i - 1]).tri;
            *cands
                .iter()
                .min_by_key(|c| path(entered, c.tri).map_or(usize::MAX, |p| p.len()))
                .expect("nonempty")
        };
        chosen.push(pick);
    }
    let mut out = Vec::new();
    for i in 0..n {
        let entered = new.partner(chosen[i]).tri;
        let next = chosen[(i + 1) % n];
        out.push(chosen[i]);
        out.extend(
            path(entered, next.tri)
                .ok_or_else(|| Error::InvalidCurve("no internal path".into()))?,
        );
    }
    let w = CurveWord::new(out);
    w.check(new)?;
    Ok(normalize_curve(new, &w))
}

/// Cone triangle `t` from a new interior point.
pub fn subdivide_triangle(
    s: &SurfaceComplex,
    t: usize,
    word: &CurveWord,
) -> Result<(SurfaceComplex, CurveWord)> {
    if t >= s.triangle_count() {
        return Err(Error::IndexOutOfRange(format!("triangle {t}")));
    }
    let mut pieces = Vec::new();
    for u in 0..s.triangle_count() {
        if u == t {
            continue;
        }
        pieces.push(Piece {
            origin: u,
            labels: [
                Label::Corner(u, 0),
                Label::Corner(u, 1),
                Label::Corner(u, 2),
            ],
        });
    }
    for i in 0..3u8 {
        pieces.push(Piece {
            origin: t,
            labels: [
                Label::Center,
                Label::Corner(t, (i + 1) % 3),
                Label::Corner(t, (i + 2) % 3),
            ],
        });
    }
    let (complex, homes) = rebuild(s, pieces, &[])?;
    let w = transport(&complex, &homes, word)?;
    Ok((complex, w))
}

/// Splits edge `e` at its midpoint, and each of its two triangles in two.
/// The two sides of `e` must lie in different triangles.
pub fn subdivide_edge(
    s: &SurfaceComplex,
    e: usize,
    word: &CurveWord,
) -> Result<(SurfaceComplex, CurveWord)> {
    if e >= s.edge_count() {
        return Err(Error::IndexOutOfRange(format!("edge {e}")));
    }
    let [a, b] = s.edge_sides(e);
    if a.tri == b.tri {
        return Err(Error::InvalidArgument(
            "edge has both sides on one triangle".into(),
        ));
    }
    let mut pieces = Vec::new();
    for u in 0..s.triangle_count() {
        match [a, b].iter().find(|x| x.tri == u) {
            None => pieces.push(Piece {
                origin: u,
                labels: [
                    Label::Corner(u, 0),
                    Label::Corner(u, 1),
                    Label::Corner(u, 2),
                ],
            }),
            Some(x) => {
                let i = x.side;
                let (c0, c1, c2) = (i, (i + 1) % 3, (i + 2) % 3);
                pieces.push(Piece {
                    origin: u,
                    labels: [Label::Corner(u, c0), Label::Corner(u, c1), Label::Mid],
                });
                pieces.push(Piece {
                    origin: u,
                    labels: [Label::Corner(u, c0), Label::Mid, Label::Corner(u, c2)],
                });
            }
        }
    }
    let (complex, homes) = rebuild(s, pieces, &[(a.tri, a.side), (b.tri, b.side)])?;
    let w = transport(&complex, &homes, word)?;
    Ok((complex, w))
}

/// Straight curve of slope `(p, q)`, `p, q >= 0` coprime, on the square
/// torus of [`square_torus`]: length `p + q + |p - q|`.
pub fn square_torus_curve(p: u32, q: u32) -> CurveWord {
    let (p, q) = (p as f64, q as f64);
    let c = 0.123_456_789;
    // events along t in [0, 1): (t, kind) with kind 0 vertical, 1 horizontal, 2 diagonal
    let mut events: Vec<(f64, u8)> = Vec::new();
    for k in 1..=(p as i64) {
        events.push((k as f64 / p, 0));
    }
    for j in 1..=(q as i64) {
        let t = (j as f64 - c) / q;
        if (0.0..1.0).contains(&t) {
            events.push((t, 1));
        }
    }
    if p != q {
        let d = q - p;
        for m in -((p + q) as i64 + 2)..=((p + q) as i64 + 2) {
            let t = (m as f64 - c) / d;
            if t > 0.0 && t < 1.0 {
                events.push((t, 2));
            }
        }
    }
    events.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let sides = events
        .iter()
        .map(|&(_, kind)| match kind {
            0 => Side { tri: 0, side: 0 },
            1 => Side { tri: 1, side: 0 },
            _ if q > p => Side { tri: 0, side: 1 },
            _ => Side { tri: 1, side: 2 },
        })
        .collect();
    CurveWord::new(sides)
}

/// The one-vertex torus: unit square cut along its diagonal; triangle 0 is
/// below the diagonal, triangle 1 above.
pub fn square_torus() -> SurfaceComplex {
    let g = |tri, side, c: [u8; 3]| SideGluing {
        tri,
        side,
        corners: Perm3(c),
    };
    SurfaceComplex::new(vec![
        [g(1, 1, [1, 0, 2]), g(1, 2, [0, 2, 1]), g(1, 0, [2, 1, 0])],
        [g(0, 2, [2, 1, 0]), g(0, 0, [1, 0, 2]), g(0, 1, [0, 2, 1])],
    ])
    .expect("square torus is valid")
}
