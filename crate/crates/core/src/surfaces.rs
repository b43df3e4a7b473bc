//! Surfaces from solution vectors: cell counts, assembly, boundary curves,
//! and the finite candidate list for given Euler characteristic and
//! boundary degree budgets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::angles::{rational_string, surface_area, AngleStructure};
use crate::boundary::{CurveWord, Side, Slope, SlopeFrame, SurfaceComplex};
use crate::discs::curves_embeddable;
use crate::discs::sphere::{boundary_edge_parts, is_hexagon};
use crate::discs::{Classification, TubeAnnulusType};
use crate::error::{Error, Result};
use crate::matching::{is_solution, MatchingSystem};
use crate::tri::IdealTriangulation;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CellCounts {
    /// Points on edges of the triangulation.
    pub interior_points: u64,
    /// Points on edges of the boundary torus.
    pub boundary_points: u64,
    pub hexagon_arcs: u64,
    pub triangle_arcs: u64,
    pub discs: u64,
}

impl CellCounts {
    pub fn euler(&self) -> i64 {
        (self.interior_points + self.boundary_points + self.discs) as i64
            - (self.hexagon_arcs + self.triangle_arcs) as i64
    }
}

/// Cell counts of the surface a solution vector describes. Each point on an
/// edge of valence `k` is seen once from every one of the `k` edge slots,
/// each hexagon arc from both sides of its face, each boundary point from
/// both triangles at its edge.
pub fn cell_counts(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    v: &[u64],
) -> Result<CellCounts> {
    if v.len() != sys.dimension() {
        return Err(Error::DimensionMismatch {
            expected: sys.dimension(),
            got: v.len(),
        });
    }
    let mut slot_points: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut c = CellCounts::default();
    let (mut hex, mut bd) = (0u64, 0u64);
    for (var, &m) in sys.variables.iter().zip(v) {
        if m == 0 {
            continue;
        }
        let d = &sys.universe[var.disc];
        for e in 0..6 {
            *slot_points.entry((var.tet, e)).or_default() += m * d.interior_mult[e] as u64;
        }
        bd += m * d.boundary_degree() as u64;
        hex += m * d.hexagon_arc_count() as u64;
        c.triangle_arcs += m * d.triangle_arc_count() as u64;
        c.discs += m;
    }
    for class in 0..tri.edge_class_count() {
        let members = tri.edge_class_members(class);
        let counts: BTreeSet<u64> = members
            .iter()
            .map(|&(t, e)| slot_points.get(&(t, e)).copied().unwrap_or(0))
            .collect();
        if counts.len() > 1 {
            return Err(Error::InvalidArgument(format!(
                "edge class {class} is crossed a different number of times from different tetrahedra"
            )));
        }
        c.interior_points += counts.into_iter().next().unwrap_or(0);
    }
    if hex % 2 == 1 || bd % 2 == 1 {
        return Err(Error::InvalidArgument(
            "arcs do not pair up across faces".into(),
        ));
    }
    c.hexagon_arcs = hex / 2;
    c.boundary_points = bd / 2;
    Ok(c)
}

pub fn euler_characteristic(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    v: &[u64],
) -> Result<i64> {
    cell_counts(tri, sys, v).map(|c| c.euler())
}

/// Number of points where the surface boundary meets the edges of the
/// boundary torus.
pub fn edge_degree(sys: &MatchingSystem, v: &[u64]) -> Result<u64> {
    sys.boundary_degree(v).map(|d| d / 2)
}

/// Corner-arc counts per truncation triangle: entry `k` counts arcs cutting
/// off corner `k`.
pub fn corner_counts(tri: &IdealTriangulation, sys: &MatchingSystem, v: &[u64]) -> Vec<[u64; 3]> {
    let mut out = vec![[0u64; 3]; 4 * tri.tet_count()];
    for (var, &m) in sys.variables.iter().zip(v) {
        if m == 0 {
            continue;
        }
        for a in &sys.universe[var.disc].arcs {
            if is_hexagon(a.face as usize) {
                continue;
            }
            let (vx, _) = boundary_edge_parts(a.from as usize);
            let k1 = (a.from as usize - 6) % 3;
            let k2 = (a.to as usize - 6) % 3;
            out[IdealTriangulation::boundary_triangle(var.tet, vx)][3 - k1 - k2] += m;
        }
    }
    out
}

/// Traces the normal curves with the given corner-arc counts, each as the
/// cyclic sequence of sides it leaves through.
pub fn trace_curves(s: &SurfaceComplex, corners: &[[u64; 3]]) -> Result<Vec<CurveWord>> {
    if corners.len() != s.triangle_count() {
        return Err(Error::DimensionMismatch {
            expected: s.triangle_count(),
            got: corners.len(),
        });
    }
    let weight = |x: Side| {
        let c = corners[x.tri];
        c[((x.side + 1) % 3) as usize] + c[((x.side + 2) % 3) as usize]
    };
    for t in 0..s.triangle_count() {
        for side in 0..3u8 {
            let x = Side { tri: t, side };
            if weight(x) != weight(s.partner(x)) {
                return Err(Error::InvalidArgument(format!(
                    "boundary arcs do not match across side {x:?}"
                )));
            }
        }
    }
    // the point on the far side of a crossing
    let cross = |x: Side, j: u64| -> (Side, u64) {
        let g = s.gluing(x);
        let y = Side {
            tri: g.tri,
            side: g.side,
        };
        let same = g.corners.apply((x.side + 1) % 3) == (g.side + 1) % 3;
        (y, if same { j } else { weight(x) - 1 - j })
    };
    // the other end of the arc through point j of side x
    let along = |x: Side, j: u64| -> (Side, u64) {
        let c = corners[x.tri];
        let s1 = (x.side + 1) % 3;
        let s2 = (x.side + 2) % 3;
        if j < c[s1 as usize] {
            let y = Side {
                tri: x.tri,
                side: s2,
            };
            (y, weight(y) - 1 - j)
        } else {
            let d = weight(x) - 1 - j;
            (
                Side {
                    tri: x.tri,
                    side: s1,
                },
                d,
            )
        }
    };
    let total: u64 = (0..s.triangle_count())
        .flat_map(|t| (0..3u8).map(move |side| Side { tri: t, side }))
        .map(weight)
        .sum();
    let mut seen: BTreeSet<(usize, u8, u64)> = BTreeSet::new();
    let mut curves = Vec::new();
    for t in 0..s.triangle_count() {
        for side in 0..3u8 {
            let x0 = Side { tri: t, side };
            for j0 in 0..weight(x0) {
                if seen.contains(&(t, side, j0)) {
                    continue;
                }
                let mut word = Vec::new();
                let (mut x, mut j) = (x0, j0);
                loop {
                    seen.insert((x.tri, x.side, j));
                    word.push(x);
                    let (y, k) = cross(x, j);
                    seen.insert((y.tri, y.side, k));
                    (x, j) = along(y, k);
                    if (x, j) == (x0, j0) {
                        break;
                    }
                    if word.len() as u64 > total {
                        return Err(Error::InvalidCurve("boundary curve does not close".into()));
                    }
                }
                curves.push(CurveWord::new(word));
            }
        }
    }
    Ok(curves)
}

#[derive(Clone, Debug, Serialize)]
pub struct AssembledSurface {
    pub vector: Vec<u64>,
    pub cells: CellCounts,
    pub euler: i64,
    pub closed: bool,
    pub boundary: Vec<CurveWord>,
    /// Face arc classes shared by two or more disc types on one side; the
    /// gluing there follows the nesting order of the chosen realization.
    pub ambiguities: usize,
    pub tags: Vec<String>,
    pub tube_marker: Option<TubeAnnulusType>,
}

/// Whether the disc types present in each tetrahedron can be drawn
/// disjointly, memoized by the set of types.
#[derive(Default)]
pub struct EmbeddingCache {
    known: HashMap<Vec<usize>, bool>,
}

impl EmbeddingCache {
    fn compatible(&mut self, sys: &MatchingSystem, discs: Vec<usize>) -> Result<bool> {
        if discs.len() < 2 {
            return Ok(true);
        }
        if let Some(&ok) = self.known.get(&discs) {
            return Ok(ok);
        }
        if discs.len() > 2 {
            for i in 0..discs.len() {
                for j in i + 1..discs.len() {
                    if !self.compatible(sys, vec![discs[i], discs[j]])? {
                        self.known.insert(discs, false);
                        return Ok(false);
                    }
                }
            }
        }
        let curves: Vec<_> = discs
            .iter()
            .map(|&d| sys.universe[d].arcs.clone())
            .collect();
        let ok = curves_embeddable(&curves)?;
        self.known.insert(discs, ok);
        Ok(ok)
    }
}

fn locally_compatible(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    v: &[u64],
    cache: &mut EmbeddingCache,
) -> Result<bool> {
    let mut per_tet: Vec<Vec<usize>> = vec![Vec::new(); tri.tet_count()];
    for (var, &m) in sys.variables.iter().zip(v) {
        if m > 0 {
            per_tet[var.tet].push(var.disc);
        }
    }
    for mut discs in per_tet {
        discs.sort_unstable();
        discs.dedup();
        if !cache.compatible(sys, discs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The canonical surface of a solution vector, or `None` when the discs in
/// some tetrahedron cannot be embedded disjointly.
pub fn assemble(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    v: &[u64],
) -> Result<Option<AssembledSurface>> {
    assemble_cached(tri, sys, v, &mut EmbeddingCache::default())
}

pub fn assemble_cached(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    v: &[u64],
    cache: &mut EmbeddingCache,
) -> Result<Option<AssembledSurface>> {
    if !is_solution(sys, v)? {
        return Err(Error::InvalidArgument(
            "vector does not satisfy the matching equations".into(),
        ));
    }
    if !locally_compatible(tri, sys, v, cache)? {
        return Ok(None);
    }
    let cells = cell_counts(tri, sys, v)?;
    let complex = tri.boundary_surface()?;
    let boundary = trace_curves(&complex, &corner_counts(tri, sys, v))?;
    let ambiguities = sys
        .rows
        .iter()
        .filter(|r| {
            let plus = r
                .coeffs
                .iter()
                .zip(v)
                .filter(|&(&c, &x)| c > 0 && x > 0)
                .count();
            let minus = r
                .coeffs
                .iter()
                .zip(v)
                .filter(|&(&c, &x)| c < 0 && x > 0)
                .count();
            plus > 1 || minus > 1
        })
        .count();
    let tags: BTreeSet<String> = sys
        .variables
        .iter()
        .zip(v)
        .filter(|&(_, &m)| m > 0)
        .map(|(var, _)| sys.universe[var.disc].classification.tag().to_string())
        .collect();
    Ok(Some(AssembledSurface {
        vector: v.to_vec(),
        cells,
        euler: cells.euler(),
        closed: boundary.is_empty(),
        boundary,
        ambiguities,
        tags: tags.into_iter().collect(),
        tube_marker: None,
    }))
}

/// Boundary components with their slopes against the marked meridian.
pub fn boundary_curves(
    complex: &SurfaceComplex,
    s: &AssembledSurface,
    meridian: Option<&CurveWord>,
) -> Result<Vec<(CurveWord, Slope)>> {
    if s.boundary.is_empty() {
        return Ok(Vec::new());
    }
    let m = meridian.ok_or(Error::MissingMeridian)?;
    let frame = SlopeFrame::new(complex, m)?;
    Ok(s.boundary
        .iter()
        .map(|w| (w.clone(), frame.slope(complex, w)))
        .collect())
}

/// Closed with Euler characteristic zero. Under an angle structure such a
/// surface made of normal and almost normal discs is parallel to the
/// boundary torus.
pub fn is_boundary_parallel_torus(s: &AssembledSurface) -> bool {
    s.closed && s.euler == 0
}

/// Closed, Euler characteristic zero, normal discs only.
pub fn boundary_parallel_elements(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    basis: &[Vec<i64>],
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, e) in basis.iter().enumerate() {
        let v = to_unsigned(e)?;
        let normal_only = sys.variables.iter().zip(&v).all(|(var, &m)| {
            m == 0 || sys.universe[var.disc].classification == Classification::Normal
        });
        if normal_only && edge_degree(sys, &v)? == 0 && euler_characteristic(tri, sys, &v)? == 0 {
            out.push(i);
        }
    }
    Ok(out)
}

fn to_unsigned(e: &[i64]) -> Result<Vec<u64>> {
    e.iter()
        .map(|&x| {
            u64::try_from(x).map_err(|_| Error::InvalidArgument("negative coordinate".into()))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateParameters {
    /// Bound on minus the Euler characteristic.
    pub n: u64,
    /// Bound on the boundary degree: total boundary-edge crossings of the
    /// discs, so each point of the boundary curves counts twice.
    pub b: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapKind {
    /// Meets the boundary: `floor(b / b(v))`.
    Boundary,
    /// Closed with negative Euler characteristic: `n + X`.
    Closed,
    /// Closed with Euler characteristic zero: `4b + 4`.
    Torus,
    /// Closed with positive Euler characteristic; never needed.
    Sphere,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCaps {
    pub caps: Vec<u64>,
    pub kinds: Vec<CapKind>,
    pub degrees: Vec<u64>,
    pub euler: Vec<i64>,
    /// Largest `|chi|` over sums of boundary-meeting elements within the
    /// degree budget.
    pub chi_excess: u64,
}

/// Largest `|sum a_i chi_i|` over `a` with `sum a_i deg_i <= b`, all
/// `deg_i > 0`.
fn max_abs_chi(items: &[(u64, i64)], b: u64) -> u64 {
    fn go(items: &[(u64, i64)], left: u64, chi: i64, best: &mut u64) {
        *best = (*best).max(chi.unsigned_abs());
        let Some((&(d, x), rest)) = items.split_first() else {
            return;
        };
        let mut a = 0;
        while a * d <= left {
            go(rest, left - a * d, chi + a as i64 * x, best);
            a += 1;
        }
    }
    let mut best = 0;
    go(items, b, 0, &mut best);
    best
}

pub fn coefficient_caps(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    basis: &[Vec<i64>],
    truncated: bool,
    params: CandidateParameters,
    link_index: &[usize],
) -> Result<CoefficientCaps> {
    if truncated {
        return Err(Error::TruncatedBasis);
    }
    let mut degrees = Vec::with_capacity(basis.len());
    let mut euler = Vec::with_capacity(basis.len());
    for e in basis {
        let v = to_unsigned(e)?;
        degrees.push(sys.boundary_degree(&v)?);
        euler.push(euler_characteristic(tri, sys, &v)?);
    }
    for &i in link_index {
        if i >= basis.len() || degrees[i] != 0 || euler[i] != 0 {
            return Err(Error::InvalidArgument(format!(
                "basis element {i} is not a closed surface of Euler characteristic zero"
            )));
        }
    }
    Ok(caps_from_invariants(degrees, euler, params))
}

/// Caps from each element's boundary degree and Euler characteristic.
pub fn caps_from_invariants(
    degrees: Vec<u64>,
    euler: Vec<i64>,
    params: CandidateParameters,
) -> CoefficientCaps {
    let touching: Vec<(u64, i64)> = degrees
        .iter()
        .zip(&euler)
        .filter(|(&d, _)| d > 0)
        .map(|(&d, &x)| (d, x))
        .collect();
    let chi_excess = max_abs_chi(&touching, params.b);
    let b = params.b;
    let mut caps = Vec::with_capacity(degrees.len());
    let mut kinds = Vec::with_capacity(degrees.len());
    for (&d, &x) in degrees.iter().zip(&euler) {
        let (cap, kind) = if let Some(a) = b.checked_div(d) {
            (a, CapKind::Boundary)
        } else if x < 0 {
            (params.n + chi_excess, CapKind::Closed)
        } else if x == 0 {
            (4 * b + 4, CapKind::Torus)
        } else {
            (0, CapKind::Sphere)
        };
        caps.push(cap);
        kinds.push(kind);
    }
    CoefficientCaps {
        caps,
        kinds,
        degrees,
        euler,
        chi_excess,
    }
}

/// Coefficient tuples within the caps, the degree budget and the Euler
/// characteristic floor `-n`, in lexicographic order, with the first
/// coordinate fixed to `first`.
fn tuples_with_first(
    caps: &CoefficientCaps,
    params: CandidateParameters,
    first: u64,
) -> Vec<Vec<u64>> {
    struct Walk<'a> {
        caps: &'a CoefficientCaps,
        /// Largest Euler characteristic gain available from index `i` on.
        gain: Vec<i64>,
        floor: i64,
        out: Vec<Vec<u64>>,
    }
    fn go(w: &mut Walk, i: usize, left: u64, chi: i64, cur: &mut Vec<u64>) {
        if chi + w.gain[i] < w.floor {
            return;
        }
        if i == w.caps.caps.len() {
            w.out.push(cur.clone());
            return;
        }
        let d = w.caps.degrees[i];
        let x = w.caps.euler[i];
        for a in 0..=w.caps.caps[i] {
            if a * d > left {
                break;
            }
            cur.push(a);
            go(w, i + 1, left - a * d, chi + a as i64 * x, cur);
            cur.pop();
        }
    }
    let k = caps.caps.len();
    let mut gain = vec![0i64; k + 1];
    for i in (0..k).rev() {
        gain[i] = gain[i + 1] + caps.caps[i] as i64 * caps.euler[i].max(0);
    }
    let mut w = Walk {
        caps,
        gain,
        floor: -(params.n as i64),
        out: Vec::new(),
    };
    if first * caps.degrees[0] <= params.b {
        let mut cur = vec![first];
        go(
            &mut w,
            1,
            params.b - first * caps.degrees[0],
            first as i64 * caps.euler[0],
            &mut cur,
        );
    }
    w.out
}

pub fn combine(basis: &[Vec<i64>], coeffs: &[u64]) -> Vec<u64> {
    let n = basis.first().map_or(0, Vec::len);
    let mut v = vec![0u64; n];
    for (e, &a) in basis.iter().zip(coeffs) {
        if a > 0 {
            for (x, &y) in v.iter_mut().zip(e) {
                *x += a * y as u64;
            }
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateVector {
    pub coefficients: Vec<u64>,
    pub vector: Vec<u64>,
}

/// Every nonzero `sum a_i v_i` with `a_i <= cap_i` and `sum a_i b(v_i) <= b`
/// that assembles and has `chi >= -n`. Tuples are visited in lexicographic
/// order and each vector is reported at its first tuple. Work is split by
/// the first coefficient and merged in order, so the output does not depend
/// on the thread count.
pub fn candidate_vectors(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    basis: &[Vec<i64>],
    caps: &CoefficientCaps,
    params: CandidateParameters,
) -> Result<Vec<CandidateVector>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<Result<Vec<CandidateVector>>> = (0..=caps.caps[0])
        .into_par_iter()
        .map(|first| {
            let mut cache = EmbeddingCache::default();
            let mut out = Vec::new();
            for coeffs in tuples_with_first(caps, params, first) {
                let chi: i64 = coeffs
                    .iter()
                    .zip(&caps.euler)
                    .map(|(&a, &x)| a as i64 * x)
                    .sum();
                if chi < -(params.n as i64) || coeffs.iter().all(|&a| a == 0) {
                    continue;
                }
                let v = combine(basis, &coeffs);
                if locally_compatible(tri, sys, &v, &mut cache)? {
                    out.push(CandidateVector {
                        coefficients: coeffs,
                        vector: v,
                    });
                }
            }
            Ok(out)
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for part in parts {
        for c in part? {
            if seen.insert(c.vector.clone()) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// `v + k * link`.
pub fn add_link_torus(sys: &MatchingSystem, v: &[u64], k: i64) -> Result<Vec<u64>> {
    if k < 0 {
        return Err(Error::InvalidArgument(format!(
            "link torus multiple {k} is negative"
        )));
    }
    if v.len() != sys.dimension() {
        return Err(Error::DimensionMismatch {
            expected: sys.dimension(),
            got: v.len(),
        });
    }
    let link = sys.link_vector().ok_or_else(|| {
        Error::InvalidArgument("vertex-linking triangles are not all variables".into())
    })?;
    Ok(v.iter()
        .zip(&link)
        .map(|(&x, &l)| x + k as u64 * l)
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryComponent {
    pub word: Vec<String>,
    pub length: usize,
    pub slope: Option<Slope>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateRecord {
    pub coefficients: Vec<u64>,
    /// Nonzero coordinates as `(tet, disc, multiplicity)`.
    pub discs: Vec<(usize, usize, u64)>,
    pub euler: i64,
    pub area: Option<String>,
    pub boundary_degree: u64,
    pub boundary: Vec<BoundaryComponent>,
    pub boundary_parallel_torus: bool,
    pub tags: Vec<String>,
    pub ambiguities: usize,
}

/// The report entry for a candidate vector.
pub fn describe(
    tri: &IdealTriangulation,
    sys: &MatchingSystem,
    c: &CandidateVector,
    angles: Option<&AngleStructure>,
    meridian: Option<&CurveWord>,
) -> Result<CandidateRecord> {
    let s = assemble(tri, sys, &c.vector)?
        .ok_or_else(|| Error::InvalidArgument("candidate does not assemble".into()))?;
    let complex = tri.boundary_surface()?;
    let frame = match meridian {
        Some(m) if !s.boundary.is_empty() => Some(SlopeFrame::new(&complex, m)?),
        _ => None,
    };
    let boundary = s
        .boundary
        .iter()
        .map(|w| BoundaryComponent {
            word: crate::boundary::word_to_ids(&complex, w),
            length: w.len(),
            slope: frame.as_ref().map(|f| f.slope(&complex, w)),
        })
        .collect();
    let area = match angles {
        Some(a) => Some(rational_string(&surface_area(a, sys, &c.vector)?)),
        None => None,
    };
    Ok(CandidateRecord {
        coefficients: c.coefficients.clone(),
        discs: sys
            .variables
            .iter()
            .zip(&c.vector)
            .filter(|&(_, &m)| m > 0)
            .map(|(var, &m)| (var.tet, var.disc, m))
            .collect(),
        euler: s.euler,
        area,
        boundary_degree: sys.boundary_degree(&c.vector)?,
        boundary,
        boundary_parallel_torus: is_boundary_parallel_torus(&s),
        tags: s.tags,
        ambiguities: s.ambiguities,
    })
}
