//! Angle structures in exact rational arithmetic, in units of π, and the
//! combinatorial area of discs and surfaces.
//!
//! Angle `p` of a tetrahedron sits on both edges of opposite pair `p`
//! ({01,23} -> 0, {02,13} -> 1, {03,12} -> 2).

pub(crate) mod lp;

pub use lp::{maximize, LpOutcome};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::discs::DiscType;
use crate::error::{Error, Result};
use crate::matching::MatchingSystem;
use crate::perm::EDGE_PAIR;
use crate::tri::IdealTriangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleStructure {
    pub angles: Vec<[BigRational; 3]>,
    pub flat: Vec<bool>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Syntax(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Decimal rendering for display only.
pub fn approx(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Serialize, Deserialize)]
struct AngleStructureJson {
    angles: Vec<[String; 3]>,
    flat: Vec<bool>,
}

impl Serialize for AngleStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AngleStructureJson {
            angles: self
                .angles
                .iter()
                .map(|a| {
                    [
                        rational_string(&a[0]),
                        rational_string(&a[1]),
                        rational_string(&a[2]),
                    ]
                })
                .collect(),
            flat: self.flat.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AngleStructure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = AngleStructureJson::deserialize(d)?;
        let mut angles = Vec::with_capacity(raw.angles.len());
        for a in &raw.angles {
            let mut row = [q(0), q(0), q(0)];
            for (k, s) in a.iter().enumerate() {
                row[k] = parse_rational(s).map_err(serde::de::Error::custom)?;
            }
            angles.push(row);
        }
        Ok(AngleStructure {
            angles,
            flat: raw.flat,
        })
    }
}

impl AngleStructure {
    /// The same angle triple on every tetrahedron, no flat tetrahedra.
    pub fn uniform(t: usize, a: [BigRational; 3]) -> AngleStructure {
        AngleStructure {
            angles: vec![a; t],
            flat: vec![false; t],
        }
    }

    pub fn has_flat(&self) -> bool {
        self.flat.iter().any(|&f| f)
    }

    /// Angle at edge `e` (01,02,03,12,13,23) of `tet`.
    pub fn edge_angle(&self, tet: usize, e: usize) -> &BigRational {
        &self.angles[tet][EDGE_PAIR[e]]
    }
}

/// Solves for angles on the tetrahedra not listed in `fixed`, maximizing the
/// smallest free angle. Returns the structure when that minimum is positive.
fn solve_residual(tri: &IdealTriangulation, fixed: &[(usize, usize)]) -> Option<AngleStructure> {
    let t = tri.tet_count();
    let mut flat_pair = vec![None; t];
    for &(tet, p) in fixed {
        flat_pair[tet] = Some(p);
    }
    let free: Vec<usize> = (0..t).filter(|&x| flat_pair[x].is_none()).collect();
    let mut col = vec![usize::MAX; t];
    for (k, &tet) in free.iter().enumerate() {
        col[tet] = k;
    }
    // variables: delta, then s_{tet,p} for free tets
    let nvars = 1 + 3 * free.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (k, _) in free.iter().enumerate() {
        let mut row = vec![q(0); nvars];
        row[0] = q(3);
        for p in 0..3 {
            row[1 + 3 * k + p] = q(1);
        }
        a.push(row);
        b.push(q(1));
    }
    for class in 0..tri.edge_class_count() {
        let mut row = vec![q(0); nvars];
        let mut rhs = q(2);
        for &(tet, e) in tri.edge_class_members(class) {
            let p = EDGE_PAIR[e];
            match flat_pair[tet] {
                Some(fp) => {
                    if fp == p {
                        rhs -= q(1);
                    }
                }
                None => {
                    row[0] += q(1);
                    row[1 + 3 * col[tet] + p] += q(1);
                }
            }
        }
        a.push(row);
        b.push(rhs);
    }
    let build = |x: &[BigRational]| {
        let mut angles = Vec::with_capacity(t);
        for tet in 0..t {
            angles.push(match flat_pair[tet] {
                Some(p) => {
                    let mut r = [q(0), q(0), q(0)];
                    r[p] = q(1);
                    r
                }
                None => {
                    let k = col[tet];
                    [
                        &x[0] + &x[1 + 3 * k],
                        &x[0] + &x[2 + 3 * k],
                        &x[0] + &x[3 + 3 * k],
                    ]
                }
            });
        }
        AngleStructure {
            angles,
            flat: flat_pair.iter().map(Option::is_some).collect(),
        }
    };
    if free.is_empty() {
        // every tetrahedron flat: only the edge equations remain
        return if b.iter().all(Zero::is_zero) {
            Some(build(&[q(0)]))
        } else {
            None
        };
    }
    let mut c = vec![q(0); nvars];
    c[0] = q(1);
    match maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, x } if value.is_positive() => Some(build(&x)),
        _ => None,
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Finds an angle structure. The strict system is tried first; with
/// `allow_flat`, flat patterns on up to `flat_budget` tetrahedra follow in
/// order of size, then tetrahedron subset, then π-pair choice. The search is
/// exponential in `flat_budget`.
pub fn find_angle_structure(
    tri: &IdealTriangulation,
    allow_flat: bool,
    flat_budget: usize,
) -> Option<AngleStructure> {
    if let Some(s) = solve_residual(tri, &[]) {
        return Some(s);
    }
    if !allow_flat {
        return None;
    }
    let t = tri.tet_count();
    for k in 1..=flat_budget.min(t) {
        for subset in combinations(t, k) {
            for code in 0..3usize.pow(k as u32) {
                let mut c = code;
                let mut fixed = Vec::with_capacity(k);
                // most significant digit first, so the order is lexicographic
                let mut digits = vec![0; k];
                for d in digits.iter_mut().rev() {
                    *d = c % 3;
                    c /= 3;
                }
                for (i, &tet) in subset.iter().enumerate() {
                    fixed.push((tet, digits[i]));
                }
                if let Some(s) = solve_residual(tri, &fixed) {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// Exact check of the per-tetrahedron and per-edge sums, bounds and flat
/// pattern flags.
pub fn verify_angle_structure(tri: &IdealTriangulation, a: &AngleStructure) -> Result<bool> {
    let t = tri.tet_count();
    if a.angles.len() != t || a.flat.len() != t {
        return Err(Error::DimensionMismatch {
            expected: t,
            got: a.angles.len(),
        });
    }
    for (row, &flat) in a.angles.iter().zip(&a.flat) {
        if row.iter().any(|x| x.is_negative() || *x > q(1)) {
            return Ok(false);
        }
        if row.iter().sum::<BigRational>() != q(1) {
            return Ok(false);
        }
        let positive = row.iter().all(|x| x.is_positive() && *x < q(1));
        let flat_pattern = row.iter().filter(|x| x.is_one()).count() == 1
            && row.iter().filter(|x| x.is_zero()).count() == 2;
        if (flat && !flat_pattern) || (!flat && !positive) {
            return Ok(false);
        }
    }
    for class in 0..tri.edge_class_count() {
        let sum: BigRational = tri
            .edge_class_members(class)
            .iter()
            .map(|&(tet, e)| a.edge_angle(tet, e).clone())
            .sum();
        if sum != q(2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Combinatorial area of a disc in tetrahedron `tet`: exterior angles at
/// interior-edge crossings, one half per boundary-edge crossing, minus 2.
pub fn disc_area(a: &AngleStructure, tet: usize, d: &DiscType) -> BigRational {
    let mut area = q(-2);
    for (e, &m) in d.interior_mult.iter().enumerate() {
        if m > 0 {
            area += (q(1) - a.edge_angle(tet, e)) * q(m as i64);
        }
    }
    let b: u32 = d.boundary_mult.iter().sum();
    area + BigRational::new(BigInt::from(b), BigInt::from(2))
}

/// Area of the annulus formed by tubing together two discs of one
/// tetrahedron: the disc areas plus 4, since the annulus has Euler
/// characteristic zero where the two discs had two.
pub fn tube_annulus_area(
    a: &AngleStructure,
    tet: usize,
    d1: &DiscType,
    d2: &DiscType,
) -> BigRational {
    disc_area(a, tet, d1) + disc_area(a, tet, d2) + q(4)
}

/// Linear area functional over the variables of a matching system.
pub fn surface_area(a: &AngleStructure, sys: &MatchingSystem, v: &[u64]) -> Result<BigRational> {
    if v.len() != sys.variables.len() {
        return Err(Error::DimensionMismatch {
            expected: sys.variables.len(),
            got: v.len(),
        });
    }
    let mut total = q(0);
    for (var, &c) in sys.variables.iter().zip(v) {
        if c > 0 {
            total += disc_area(a, var.tet, &sys.universe[var.disc])
                * BigRational::from_integer(BigInt::from(c));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn third() -> BigRational {
        BigRational::new(1.into(), 3.into())
    }

    #[test]
    fn census_structure_is_all_thirds() {
        let tri = fixtures::figure_eight();
        let s = find_angle_structure(&tri, false, 0).unwrap();
        assert!(verify_angle_structure(&tri, &s).unwrap());
        for row in &s.angles {
            for x in row {
                assert_eq!(*x, third());
            }
        }
    }

    #[test]
    fn perturbed_structure_fails() {
        let tri = fixtures::figure_eight();
        let mut s = AngleStructure::uniform(2, [third(), third(), third()]);
        assert!(verify_angle_structure(&tri, &s).unwrap());
        s.angles[0][0] += BigRational::new(1.into(), 100.into());
        assert!(!verify_angle_structure(&tri, &s).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let tri = fixtures::figure_eight();
        let s = AngleStructure::uniform(3, [third(), third(), third()]);
        assert!(verify_angle_structure(&tri, &s).is_err());
    }

    #[test]
    fn serde_uses_rational_strings() {
        let s = AngleStructure::uniform(1, [third(), third(), third()]);
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"1/3\""));
        let back: AngleStructure = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn valence_one_edge_blocks_strict_structure() {
        let tri = fixtures::valence_one_edge();
        assert!((0..tri.edge_class_count()).any(|c| tri.edge_valence(c) == 1));
        assert!(find_angle_structure(&tri, false, 0).is_none());
    }
}
