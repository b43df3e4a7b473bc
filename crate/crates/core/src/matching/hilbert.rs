//! Hilbert basis of `{x >= 0 integer : A x = 0}` by completion, one
//! equation at a time. Given generators of the monoid cut out by the earlier
//! equations, sums of generators on opposite sides of the next hyperplane
//! are added until every element is a sign-compatible sum; the generators
//! on the hyperplane then generate the smaller monoid.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct HilbertOptions {
    /// Withhold (and flag) vectors with any coordinate above this.
    pub coord_cap: Option<i64>,
    /// Drop vectors whose weighted degree exceeds the bound. Every
    /// intermediate vector on the way to a basis element is dominated by it,
    /// so all basis elements within the bound are still found.
    pub degree_bound: Option<(Vec<i64>, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertBasis {
    pub elements: Vec<Vec<i64>>,
    pub truncated: bool,
}

fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    let mut s: i64 = 0;
    for (x, y) in a.iter().zip(b) {
        s = x
            .checked_mul(*y)
            .and_then(|p| s.checked_add(p))
            .ok_or_else(|| Error::Overflow("hilbert basis inner product".into()))?;
    }
    Ok(s)
}

fn dominates(p: &[i64], q: &[i64]) -> bool {
    p.iter().zip(q).all(|(a, b)| a >= b)
}

pub fn hilbert_basis(rows: &[Vec<i64>], n: usize, opts: &HilbertOptions) -> Result<HilbertBasis> {
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
    }
    let mut truncated = false;
    let mut gens = Vec::new();
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        if admissible(&e, opts, &mut truncated)? {
            gens.push(e);
        }
    }
    for row in rows {
        gens = cut(gens, row, opts, &mut truncated)?;
    }
    let mut basis: Vec<Vec<i64>> = Vec::new();
    gens.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
    for g in gens {
        if !basis.iter().any(|b| dominates(&g, b)) {
            basis.push(g);
        }
    }
    Ok(HilbertBasis {
        elements: basis,
        truncated,
    })
}

/// Within the coordinate cap and the degree bound. Exceeding the cap is
/// recorded as truncation.
fn admissible(x: &[i64], opts: &HilbertOptions, truncated: &mut bool) -> Result<bool> {
    if let Some((w, bound)) = &opts.degree_bound {
        if dot(w, x)? > *bound {
            return Ok(false);
        }
    }
    if let Some(cap) = opts.coord_cap {
        if x.iter().any(|&c| c > cap) {
            *truncated = true;
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators of `M ∩ {f = 0}` from generators of `M`.
fn cut(
    gens: Vec<Vec<i64>>,
    f: &[i64],
    opts: &HilbertOptions,
    truncated: &mut bool,
) -> Result<Vec<Vec<i64>>> {
    let mut items: Vec<(Vec<i64>, i64)> = Vec::with_capacity(gens.len());
    for g in gens {
        let v = dot(f, &g)?;
        items.push((g, v));
    }
    let size = |x: &[i64]| x.iter().sum::<i64>();
    let mut queue: BinaryHeap<Reverse<(i64, usize, usize)>> = BinaryHeap::new();
    let push_pairs = |k: usize,
                      items: &[(Vec<i64>, i64)],
                      queue: &mut BinaryHeap<Reverse<(i64, usize, usize)>>| {
        let (x, fx) = &items[k];
        for (j, (y, fy)) in items.iter().enumerate() {
            if fx.signum() * fy.signum() < 0 {
                queue.push(Reverse((size(x) + size(y), k.min(j), k.max(j))));
            }
        }
    };
    for k in 0..items.len() {
        let (x, fx) = &items[k];
        for j in k + 1..items.len() {
            let (y, fy) = &items[j];
            if fx.signum() * fy.signum() < 0 {
                queue.push(Reverse((size(x) + size(y), k, j)));
            }
        }
    }
    while let Some(Reverse((_, i, j))) = queue.pop() {
        let mut w = items[i].0.clone();
        for (a, b) in w.iter_mut().zip(&items[j].0) {
            *a = a
                .checked_add(*b)
                .ok_or_else(|| Error::Overflow("hilbert basis coordinate".into()))?;
        }
        let fw = items[i].1 + items[j].1;
        if !admissible(&w, opts, truncated)? {
            continue;
        }
        let reducible = items.iter().any(|(y, fy)| {
            fy.signum() * fw.signum() >= 0 && fy.abs() <= fw.abs() && *y != w && dominates(&w, y)
        });
        if reducible {
            continue;
        }
        items.push((w, fw));
        push_pairs(items.len() - 1, &items, &mut queue);
    }
    Ok(items
        .into_iter()
        .filter(|(_, v)| *v == 0)
        .map(|(g, _)| g)
        .collect())
}

/// Nonnegative integer coefficients writing `v` over `basis`, if any.
pub fn decompose_into(v: &[i64], basis: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = v.len();
    // coordinates each basis element can still help with, from the back
    let mut reach = vec![vec![false; n]; basis.len() + 1];
    for i in (0..basis.len()).rev() {
        for c in 0..n {
            reach[i][c] = reach[i + 1][c] || basis[i][c] > 0;
        }
    }
    let mut coeffs = vec![0i64; basis.len()];
    let mut rest = v.to_vec();
    if solve(0, &mut rest, basis, &reach, &mut coeffs) {
        Some(coeffs)
    } else {
        None
    }
}

fn solve(
    i: usize,
    rest: &mut [i64],
    basis: &[Vec<i64>],
    reach: &[Vec<bool>],
    coeffs: &mut [i64],
) -> bool {
    if rest.iter().all(|&x| x == 0) {
        return true;
    }
    if i == basis.len() || rest.iter().enumerate().any(|(c, &x)| x > 0 && !reach[i][c]) {
        return false;
    }
    let b = &basis[i];
    let max = b
        .iter()
        .zip(rest.iter())
        .filter(|(bc, _)| **bc > 0)
        .map(|(bc, r)| r / bc)
        .min()
        .unwrap_or(0);
    for a in (0..=max).rev() {
        for (r, bc) in rest.iter_mut().zip(b) {
            *r -= a * bc;
        }
        coeffs[i] = a;
        if solve(i + 1, rest, basis, reach, coeffs) {
            return true;
        }
        for (r, bc) in rest.iter_mut().zip(b) {
            *r += a * bc;
        }
    }
    coeffs[i] = 0;
    false
}
