//! Edge degrees of meridians for a torus triangulation transverse to a
//! meridional circle foliation.
//!
//! Each vertex gets a coordinate in `[0, 1)`; each edge, read along its
//! reference direction, winds by a nonzero amount `delta` congruent to the
//! difference of its endpoint coordinates modulo one. The meridian at level
//! `theta` meets the edge once for every integer `k` with `theta + k`
//! strictly between the start coordinate and start + `delta`.

use num::{BigInt, BigRational, One, Signed, Zero};

use super::complex::{Side, SurfaceComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardPosition {
    pub vertex_coords: Vec<BigRational>,
    pub edge_winding: Vec<BigRational>,
}

fn side_sign(s: &SurfaceComplex, side: Side) -> BigRational {
    let e = s.edge_of(side);
    let first = s.edge_sides(e)[0];
    let same = first == side || {
        let g = s.gluing(first);
        g.corners.apply((first.side + 1) % 3) == (side.side + 1) % 3
    };
    if same {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

impl StandardPosition {
    pub fn check(&self, s: &SurfaceComplex) -> Result<()> {
        let bad = |m: String| Error::StandardPosition(m);
        if self.vertex_coords.len() != s.vertex_count() || self.edge_winding.len() != s.edge_count()
        {
            return Err(bad("coordinate counts do not match the complex".into()));
        }
        for (i, x) in self.vertex_coords.iter().enumerate() {
            if x.is_negative() || *x >= BigRational::one() {
                return Err(bad(format!("vertex {i} coordinate outside [0, 1)")));
            }
            if self.vertex_coords[..i].contains(x) {
                return Err(bad(format!("vertex {i} shares its coordinate")));
            }
        }
        for e in 0..s.edge_count() {
            let d = &self.edge_winding[e];
            if d.is_zero() {
                return Err(bad(format!("edge {e} is not transverse (winding 0)")));
            }
            let (a, b) = s.edge_endpoints(e);
            let diff = d - (&self.vertex_coords[b] - &self.vertex_coords[a]);
            if !diff.is_integer() {
                return Err(bad(format!(
                    "edge {e} winding disagrees with its endpoints"
                )));
            }
        }
        for t in 0..s.triangle_count() {
            let mut sum = BigRational::zero();
            for side in 0..3u8 {
                let x = Side { tri: t, side };
                sum += side_sign(s, x) * &self.edge_winding[s.edge_of(x)];
            }
            if !sum.is_zero() {
                return Err(bad(format!("windings around triangle {t} do not close up")));
            }
        }
        Ok(())
    }
}

/// Integers `k` with `theta + k` strictly between `lo` and `hi`.
fn count_between(theta: &BigRational, lo: &BigRational, hi: &BigRational) -> i64 {
    let (lo, hi) = if lo < hi { (lo, hi) } else { (hi, lo) };
    // k > lo - theta and k < hi - theta
    let from = (lo - theta).floor() + BigRational::one();
    let to = (hi - theta).ceil() - BigRational::one();
    let n = to - from + BigRational::one();
    if n.is_negative() {
        0
    } else {
        use num::ToPrimitive;
        n.to_integer().to_i64().unwrap_or(i64::MAX)
    }
}

/// Largest edge degree over the non-singular meridians, one sample level in
/// each interval between consecutive vertex coordinates.
pub fn scan_standard_position(s: &SurfaceComplex, pos: &StandardPosition) -> Result<i64> {
    pos.check(s)?;
    let mut levels: Vec<BigRational> = pos.vertex_coords.clone();
    levels.sort();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut best = 0;
    for i in 0..levels.len() {
        let next = if i + 1 < levels.len() {
            levels[i + 1].clone()
        } else {
            &levels[0] + BigRational::one()
        };
        let theta = (&levels[i] + next) / &two;
        let mut degree = 0;
        for e in 0..s.edge_count() {
            let (a, _) = s.edge_endpoints(e);
            let start = &pos.vertex_coords[a];
            let end = start + &pos.edge_winding[e];
            degree += count_between(&theta, start, &end);
        }
        best = best.max(degree);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::complex::tests::three_edge_torus;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn square_position(a: i64, b: i64) -> StandardPosition {
        // edges of the square torus: right (side 0 of triangle 0), diagonal, bottom
        let t = three_edge_torus();
        let mut w = vec![r(0); 3];
        let right = t.edge_of(Side { tri: 0, side: 0 });
        let diag = t.edge_of(Side { tri: 0, side: 1 });
        let bottom = t.edge_of(Side { tri: 0, side: 2 });
        // reference directions follow each edge's first side in triangle 0
        w[bottom] = r(a);
        w[right] = r(b);
        w[diag] = -r(a + b);
        StandardPosition {
            vertex_coords: vec![r(0)],
            edge_winding: w,
        }
    }

    #[test]
    fn one_vertex_degree_is_total_winding() {
        let t = three_edge_torus();
        let pos = square_position(1, 1);
        pos.check(&t).unwrap();
        assert_eq!(scan_standard_position(&t, &pos).unwrap(), 4);
        let pos = square_position(3, 1);
        assert_eq!(scan_standard_position(&t, &pos).unwrap(), 8);
    }

    #[test]
    fn zero_winding_rejected() {
        let t = three_edge_torus();
        let pos = square_position(1, -1);
        assert!(scan_standard_position(&t, &pos).is_err());
    }

    #[test]
    fn count_between_levels() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(count_between(&half, &r(0), &r(1)), 1);
        assert_eq!(count_between(&half, &r(0), &r(3)), 3);
        assert_eq!(count_between(&half, &r(2), &r(-1)), 3);
    }
}
