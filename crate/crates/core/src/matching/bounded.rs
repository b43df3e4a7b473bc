//! Hilbert basis elements of bounded boundary weight, computed by splitting
//! the variables into closed discs (weight zero) and boundary discs.
//!
//! An element's boundary part satisfies on its own every equation that no
//! closed disc enters, and is a sum of minimal such parts; its closed part
//! is a minimal nonnegative solution of the remaining equations with the
//! boundary part moved to the right-hand side. Both pieces are small when
//! the weight bound is small, whereas completing over all variables at once
//! is not.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigRational, Zero};

use super::hilbert::{hilbert_basis, HilbertBasis, HilbertOptions};
use crate::angles::lp::{maximize, LpOutcome};
use crate::error::{Error, Result};

type Sparse = BTreeMap<usize, i64>;

struct Split<'a> {
    rows: &'a [Vec<i64>],
    weights: &'a [i64],
    closed: Vec<usize>,
    /// Rows in which only boundary variables appear.
    pure: Vec<usize>,
    mixed: Vec<usize>,
    /// For each pure row, boundary variables with positive and negative
    /// coefficient.
    movers: BTreeMap<usize, [Vec<usize>; 2]>,
    /// Largest ratio of a boundary variable's total pure-row coefficient
    /// size to its weight, rounded up.
    reach: i64,
}

fn dominated(small: &[i64], big: &[i64]) -> bool {
    small.iter().zip(big).all(|(a, b)| a <= b)
}

/// Hilbert basis elements `x` of `{x >= 0 : A x = 0}` with
/// `weights . x <= bound`, for nonnegative weights.
pub fn bounded_hilbert_basis(
    rows: &[Vec<i64>],
    n: usize,
    weights: &[i64],
    bound: i64,
    coord_cap: Option<i64>,
) -> Result<HilbertBasis> {
    if weights.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: weights.len(),
        });
    }
    if weights.iter().any(|&w| w < 0) {
        return Err(Error::InvalidArgument(
            "boundary weights must be nonnegative".into(),
        ));
    }
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
    }
    let closed: Vec<usize> = (0..n).filter(|&j| weights[j] == 0).collect();
    let (pure, mixed): (Vec<usize>, Vec<usize>) =
        (0..rows.len()).partition(|&i| closed.iter().all(|&j| rows[i][j] == 0));
    let mut movers = BTreeMap::new();
    for &i in &pure {
        let pos = (0..n).filter(|&j| rows[i][j] > 0).collect();
        let neg = (0..n).filter(|&j| rows[i][j] < 0).collect();
        movers.insert(i, [pos, neg]);
    }
    let reach = (0..n)
        .filter(|&j| weights[j] > 0)
        .map(|j| {
            let size: i64 = pure.iter().map(|&i| rows[i][j].abs()).sum();
            (size + weights[j] - 1) / weights[j]
        })
        .max()
        .unwrap_or(0);
    let split = Split {
        rows,
        weights,
        closed,
        pure,
        mixed,
        movers,
        reach,
    };

    let mut truncated = false;
    let mut elements: Vec<Vec<i64>> = Vec::new();

    // closed part
    let closed_rows: Vec<Vec<i64>> = split
        .mixed
        .iter()
        .map(|&i| split.closed.iter().map(|&j| rows[i][j]).collect())
        .collect();
    let hb = hilbert_basis(
        &closed_rows,
        split.closed.len(),
        &HilbertOptions {
            coord_cap,
            degree_bound: None,
        },
    )?;
    truncated |= hb.truncated;
    for e in &hb.elements {
        let mut x = vec![0i64; n];
        for (k, &j) in split.closed.iter().enumerate() {
            x[j] = e[k];
        }
        elements.push(x);
    }
    let closed_basis = elements.clone();

    // boundary parts
    let minimal = split.minimal_boundary_parts(bound)?;
    let parts = sums_within(&minimal, weights, bound);
    let lattice = Echelon::new(&closed_rows, split.closed.len());
    let mut found: Vec<Vec<i64>> = Vec::new();
    for d in parts {
        for c in split.completions(&d, lattice.as_ref(), coord_cap, &mut truncated)? {
            let mut x = vec![0i64; n];
            for (&j, &m) in &d {
                x[j] = m;
            }
            for (k, &j) in split.closed.iter().enumerate() {
                x[j] += c[k];
            }
            if let Some(cap) = coord_cap {
                if x.iter().any(|&v| v > cap) {
                    truncated = true;
                    continue;
                }
            }
            if !closed_basis.iter().any(|b| dominated(b, &x)) {
                found.push(x);
            }
        }
    }
    found.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
    found.dedup();
    let mut kept: Vec<Vec<i64>> = Vec::new();
    for x in found {
        if !kept.iter().any(|k| dominated(k, &x)) {
            kept.push(x);
        }
    }
    elements.extend(kept);
    elements.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
    Ok(HilbertBasis {
        elements,
        truncated,
    })
}

impl Split<'_> {
    /// Minimal nonzero boundary parts satisfying the pure rows, within the
    /// weight bound. Each is found from its lowest variable by repeatedly
    /// adding a variable that moves the first unbalanced row towards zero.
    fn minimal_boundary_parts(&self, bound: i64) -> Result<Vec<Sparse>> {
        let n = self.weights.len();
        let mut out: BTreeSet<Vec<(usize, i64)>> = BTreeSet::new();
        for j in 0..n {
            if self.weights[j] == 0 || self.weights[j] > bound {
                continue;
            }
            let mut d = Sparse::new();
            let mut residual: BTreeMap<usize, i64> = BTreeMap::new();
            self.add(j, 1, &mut d, &mut residual);
            self.search(j, self.weights[j], bound, &mut d, &mut residual, &mut out);
        }
        Ok(out.into_iter().map(|v| v.into_iter().collect()).collect())
    }

    fn add(&self, j: usize, sign: i64, d: &mut Sparse, residual: &mut BTreeMap<usize, i64>) {
        let e = d.entry(j).or_insert(0);
        *e += sign;
        if *e == 0 {
            d.remove(&j);
        }
        for &i in &self.pure {
            let c = self.rows[i][j];
            if c != 0 {
                let r = residual.entry(i).or_insert(0);
                *r += sign * c;
                if *r == 0 {
                    residual.remove(&i);
                }
            }
        }
    }

    fn search(
        &self,
        first: usize,
        used: i64,
        bound: i64,
        d: &mut Sparse,
        residual: &mut BTreeMap<usize, i64>,
        out: &mut BTreeSet<Vec<(usize, i64)>>,
    ) {
        if residual.is_empty() {
            out.insert(d.iter().map(|(&j, &m)| (j, m)).collect());
            return;
        }
        // a variable of weight w removes at most `reach * w` units of imbalance
        let imbalance: i64 = residual.values().map(|r| r.abs()).sum();
        if imbalance > self.reach * (bound - used) {
            return;
        }
        // the unbalanced row with fewest ways to fix it
        let (row, r) = residual
            .iter()
            .map(|(&i, &r)| (i, r))
            .min_by_key(|&(i, r)| (self.movers[&i][if r > 0 { 1 } else { 0 }].len(), i))
            .expect("nonempty");
        let candidates = &self.movers[&row][if r > 0 { 1 } else { 0 }];
        for &j in candidates {
            if j < first || used + self.weights[j] > bound {
                continue;
            }
            self.add(j, 1, d, residual);
            self.search(first, used + self.weights[j], bound, d, residual, out);
            self.add(j, -1, d, residual);
        }
    }

    /// Minimal closed parts `c >= 0` with `A_closed c = -A d` on the mixed
    /// rows: the elements with last coordinate one in the Hilbert basis of
    /// the system extended by the column `A d`. Cheap integer-lattice and
    /// rational-cone tests rule out most parts first.
    fn completions(
        &self,
        d: &Sparse,
        lattice: Option<&Echelon>,
        coord_cap: Option<i64>,
        truncated: &mut bool,
    ) -> Result<Vec<Vec<i64>>> {
        let m = self.closed.len();
        let target: Vec<i64> = self
            .mixed
            .iter()
            .map(|&i| -d.iter().map(|(&j, &x)| self.rows[i][j] * x).sum::<i64>())
            .collect();
        if lattice.is_some_and(|l| l.excludes(&target)) {
            return Ok(Vec::new());
        }
        let closed_rows: Vec<Vec<i64>> = self
            .mixed
            .iter()
            .map(|&i| self.closed.iter().map(|&j| self.rows[i][j]).collect())
            .collect();
        let a: Vec<Vec<BigRational>> = closed_rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let b: Vec<BigRational> = target
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        if maximize(&a, &b, &vec![BigRational::zero(); m]) == LpOutcome::Infeasible {
            return Ok(Vec::new());
        }
        let rows: Vec<Vec<i64>> = closed_rows
            .into_iter()
            .zip(&target)
            .map(|(mut r, &t)| {
                r.push(-t);
                r
            })
            .collect();
        let mut w = vec![0i64; m + 1];
        w[m] = 1;
        let hb = hilbert_basis(
            &rows,
            m + 1,
            &HilbertOptions {
                coord_cap,
                degree_bound: Some((w, 1)),
            },
        )?;
        *truncated |= hb.truncated;
        Ok(hb
            .elements
            .into_iter()
            .filter(|e| e[m] == 1)
            .map(|mut e| {
                e.pop();
                e
            })
            .collect())
    }
}

/// Column echelon form of an integer matrix, for testing whether a vector
/// is an integer combination of its columns.
struct Echelon {
    /// Pivot column entries per row; `None` for rows with no pivot.
    columns: Vec<Vec<i128>>,
    pivots: Vec<Option<usize>>,
}

impl Echelon {
    fn new(rows: &[Vec<i64>], k: usize) -> Option<Echelon> {
        let r = rows.len();
        let mut cols: Vec<Vec<i128>> = (0..k)
            .map(|j| rows.iter().map(|row| row[j] as i128).collect())
            .collect();
        let mut pivots = vec![None; r];
        let mut p = 0;
        for i in 0..r {
            if p == k {
                break;
            }
            // gcd-reduce row i over columns p.. into column p
            loop {
                let nz: Vec<usize> = (p..k).filter(|&j| cols[j][i] != 0).collect();
                if nz.len() <= 1 {
                    if let Some(&j) = nz.first() {
                        cols.swap(p, j);
                    }
                    break;
                }
                let small = *nz
                    .iter()
                    .min_by_key(|&&j| cols[j][i].abs())
                    .expect("nonempty");
                for &j in &nz {
                    if j != small {
                        let q = cols[j][i] / cols[small][i];
                        for t in 0..r {
                            let v = cols[j][t].checked_sub(q.checked_mul(cols[small][t])?)?;
                            cols[j][t] = v;
                        }
                    }
                }
            }
            if cols[p][i] != 0 {
                pivots[i] = Some(p);
                p += 1;
            }
        }
        cols.truncate(p);
        Some(Echelon {
            columns: cols,
            pivots,
        })
    }

    /// True when `target` is certainly not an integer combination of the
    /// columns.
    fn excludes(&self, target: &[i64]) -> bool {
        let mut t: Vec<i128> = target.iter().map(|&x| x as i128).collect();
        for i in 0..t.len() {
            match self.pivots[i] {
                Some(p) => {
                    let c = &self.columns[p];
                    if t[i] % c[i] != 0 {
                        return true;
                    }
                    let q = t[i] / c[i];
                    for (x, &y) in t.iter_mut().zip(c) {
                        match q.checked_mul(y).and_then(|z| x.checked_sub(z)) {
                            Some(v) => *x = v,
                            None => return false,
                        }
                    }
                }
                None => {
                    if t[i] != 0 {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// All nonzero sums of the given parts with total weight within the bound,
/// without repeats.
fn sums_within(minimal: &[Sparse], weights: &[i64], bound: i64) -> Vec<Sparse> {
    let weight = |d: &Sparse| d.iter().map(|(&j, &m)| weights[j] * m).sum::<i64>();
    let ws: Vec<i64> = minimal.iter().map(weight).collect();
    let mut out: BTreeSet<Vec<(usize, i64)>> = BTreeSet::new();
    fn go(
        k: usize,
        left: i64,
        cur: &mut Sparse,
        nonzero: bool,
        minimal: &[Sparse],
        ws: &[i64],
        out: &mut BTreeSet<Vec<(usize, i64)>>,
    ) {
        if k == minimal.len() {
            if nonzero {
                out.insert(cur.iter().map(|(&j, &m)| (j, m)).collect());
            }
            return;
        }
        go(k + 1, left, cur, nonzero, minimal, ws, out);
        let mut times = 0;
        while ws[k] * (times + 1) <= left {
            times += 1;
            for (&j, &m) in &minimal[k] {
                *cur.entry(j).or_insert(0) += m;
            }
            go(k + 1, left - ws[k] * times, cur, true, minimal, ws, out);
        }
        if times == 0 {
            return;
        }
        for (&j, &m) in &minimal[k] {
            let e = cur.get_mut(&j).expect("added");
            *e -= m * times;
            if *e == 0 {
                cur.remove(&j);
            }
        }
    }
    go(0, bound, &mut Sparse::new(), false, minimal, &ws, &mut out);
    out.into_iter().map(|v| v.into_iter().collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_full_completion_on_small_systems() {
        // x0 + x1 = x2 + 2 x3 with x3 weighted
        let rows = vec![vec![1, 1, -1, -2], vec![0, 1, 0, -1]];
        let w = vec![0, 0, 0, 1];
        for bound in 0..4 {
            let got = bounded_hilbert_basis(&rows, 4, &w, bound, None).unwrap();
            let mut want = hilbert_basis(
                &rows,
                4,
                &HilbertOptions {
                    coord_cap: None,
                    degree_bound: Some((w.clone(), bound)),
                },
            )
            .unwrap();
            want.elements
                .sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
            assert_eq!(got.elements, want.elements, "bound {bound}");
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(200))]
        #[test]
        fn agrees_with_full_completion_on_random_systems(
            n in 1usize..=5,
            m in 1usize..=3,
            coeffs in proptest::collection::vec(-3i64..=3, 15),
            ws in proptest::collection::vec(0i64..=2, 5),
            bound in 0i64..=4,
        ) {
            let rows: Vec<Vec<i64>> = (0..m).map(|i| coeffs[i * 5..i * 5 + n].to_vec()).collect();
            let w = ws[..n].to_vec();
            let got = bounded_hilbert_basis(&rows, n, &w, bound, Some(12)).unwrap();
            let want = hilbert_basis(
                &rows,
                n,
                &HilbertOptions { coord_cap: Some(12), degree_bound: Some((w.clone(), bound)) },
            )
            .unwrap();
            let mut want = want.elements;
            want.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
            proptest::prop_assert_eq!(got.elements, want);
        }
    }
}
