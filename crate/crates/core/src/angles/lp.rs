//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Solves `maximize c·x subject to A x = b, x >= 0`.

use num::{BigRational, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        x: Vec<BigRational>,
    },
}

struct Tableau {
    rows: Vec<Vec<BigRational>>, // constraint rows; last entry is the rhs
    obj: Vec<BigRational>,       // reduced costs; last entry is the objective value
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex iterations over columns `< limit`; false if unbounded.
    fn run(&mut self, limit: usize) -> bool {
        loop {
            let Some(col) = (0..limit).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let rhs = self.width();
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }

    fn set_objective(&mut self, c: &[BigRational]) {
        let w = self.width();
        let mut obj: Vec<BigRational> = (0..=w)
            .map(|j| {
                if j < c.len() {
                    -c[j].clone()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        for (row, &bcol) in self.rows.iter().zip(&self.basis) {
            if bcol < c.len() && !c[bcol].is_zero() {
                for (o, v) in obj.iter_mut().zip(row) {
                    *o += &c[bcol] * v;
                }
            }
        }
        self.obj = obj;
    }
}

pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        debug_assert_eq!(row.len(), n);
        let flip = b[i].is_negative();
        let mut r: Vec<BigRational> = Vec::with_capacity(width + 1);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            r.push(if k == i {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        obj: vec![BigRational::zero(); width + 1],
        basis: (n..n + m).collect(),
    };

    // phase one: maximize minus the sum of artificials
    let mut c1 = vec![BigRational::zero(); width];
    for v in c1.iter_mut().skip(n) {
        *v = BigRational::from_integer((-1).into());
    }
    t.set_objective(&c1);
    t.run(width);
    if t.obj[width].is_negative() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis, dropping redundant rows
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(col) => t.pivot(r, col),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    for row in t.rows.iter_mut() {
        let rhs = row[width].clone();
        row.truncate(n);
        row.push(rhs);
    }
    t.obj = vec![BigRational::zero(); n + 1];
    t.set_objective(c);
    if !t.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &bcol) in t.rows.iter().zip(&t.basis) {
        x[bcol] = row[n].clone();
    }
    LpOutcome::Optimal {
        value: t.obj[n].clone(),
        x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_optimum() {
        // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![
            vec![q(1, 1), q(2, 1), q(1, 1), q(0, 1)],
            vec![q(3, 1), q(1, 1), q(0, 1), q(1, 1)],
        ];
        let b = vec![q(4, 1), q(6, 1)];
        let c = vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1)];
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, q(14, 5));
                assert_eq!(x[0], q(8, 5));
                assert_eq!(x[1], q(6, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![q(1, 1), q(1, 1)]];
        assert_eq!(
            maximize(&a, &[q(-1, 1)], &[q(0, 1), q(0, 1)]),
            LpOutcome::Infeasible
        );
        let a = vec![vec![q(1, 1), q(-1, 1)]];
        assert_eq!(
            maximize(&a, &[q(0, 1)], &[q(1, 1), q(0, 1)]),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = vec![vec![q(1, 1), q(1, 1)], vec![q(2, 1), q(2, 1)]];
        let b = vec![q(1, 1), q(2, 1)];
        match maximize(&a, &b, &[q(1, 1), q(0, 1)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1, 1)),
            other => panic!("{other:?}"),
        }
    }
}
