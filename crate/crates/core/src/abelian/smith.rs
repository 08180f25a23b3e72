//! Smith normal form with unimodular transforms and their inverses.
//!
//! Pivot rule: smallest nonzero absolute value in the active block, ties broken
//! by lowest row and then lowest column. The rule is part of the contract since
//! generator bases downstream are read off the transforms.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Int, IntegerMatrix};

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// with each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut w = Work::new(m);
    w.run();
    w.finish()
}

struct Work {
    a: Vec<Vec<Int>>,
    u: Vec<Vec<Int>>,
    u_inv: Vec<Vec<Int>>,
    v: Vec<Vec<Int>>,
    v_inv: Vec<Vec<Int>>,
    m: usize,
    n: usize,
    rank: usize,
}

fn identity_rows(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut r = vec![Int::zero(); n];
            r[i] = Int::one();
            r
        })
        .collect()
}

/// `dst += q * src` over a pair of row slices.
fn axpy(dst: &mut [Int], src: &[Int], q: &Int) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += q * s;
        }
    }
}

fn row_pair(rows: &mut [Vec<Int>], dst: usize, src: usize) -> (&mut Vec<Int>, &Vec<Int>) {
    assert_ne!(dst, src);
    if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    }
}

impl Work {
    fn new(m: &IntegerMatrix) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        Work {
            a: m.to_rows(),
            u: identity_rows(rows),
            u_inv: identity_rows(rows),
            v: identity_rows(cols),
            v_inv: identity_rows(cols),
            m: rows,
            n: cols,
            rank: 0,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_dst += q * row_src
    fn add_row(&mut self, dst: usize, src: usize, q: &Int) {
        let (d, s) = row_pair(&mut self.a, dst, src);
        axpy(d, s, q);
        let (d, s) = row_pair(&mut self.u, dst, src);
        axpy(d, s, q);
        // U^{-1} picks up the inverse operation on the right: col_src -= q * col_dst.
        for row in &mut self.u_inv {
            if !row[dst].is_zero() {
                let t = q * &row[dst];
                row[src] -= t;
            }
        }
    }

    /// col_dst += q * col_src
    fn add_col(&mut self, dst: usize, src: usize, q: &Int) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            if !row[src].is_zero() {
                let t = q * &row[src];
                row[dst] += t;
            }
        }
        // V^{-1} picks up the inverse operation on the left: row_src -= q * row_dst.
        let neg = -q;
        let (d, s) = row_pair(&mut self.v_inv, src, dst);
        axpy(d, s, &neg);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -std::mem::take(x);
        }
        for row in &mut self.u_inv {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if ax.is_one() {
                    return Some((i, j));
                }
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let steps = self.m.min(self.n);
        for t in 0..steps {
            loop {
                let Some((pi, pj)) = self.find_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a[t][t].clone();

                let mut clean = true;
                for i in t + 1..self.m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[i][t] / &p);
                    if !q.is_zero() {
                        self.add_row(i, t, &q);
                    }
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[t][j] / &p);
                    if !q.is_zero() {
                        self.add_col(j, t, &q);
                    }
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                if !p.abs().is_one() {
                    let offender = (t + 1..self.m).find(|&i| self.a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&p)));
                    if let Some(i) = offender {
                        self.add_row(t, i, &Int::one());
                        continue;
                    }
                }
                break;
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            self.rank = t + 1;
        }
    }

    fn finish(self) -> SmithForm {
        let (m, n) = (self.m, self.n);
        SmithForm {
            d: IntegerMatrix::from_row_vecs(self.a, n),
            u: IntegerMatrix::from_row_vecs(self.u, m),
            u_inv: IntegerMatrix::from_row_vecs(self.u_inv, m),
            v: IntegerMatrix::from_row_vecs(self.v, n),
            v_inv: IntegerMatrix::from_row_vecs(self.v_inv, n),
            rank: self.rank,
        }
    }
}
