//! Smith normal form over ℤ.
//!
//! [`smith_normal_form`] is the dense textbook algorithm with full
//! unimodular transforms. [`invariant_factors`] skips the transforms and
//! first strips every unit pivot from the sparse matrix, which for boundary
//! matrices of regular complexes leaves a tiny (often empty) residual for
//! the dense routine.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::SparseIntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: SparseIntMatrix,
    pub d: SparseIntMatrix,
    pub v: SparseIntMatrix,
}

impl SnfResult {
    /// The first `min(rows, cols)` diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i)).collect()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(a: &SparseIntMatrix) -> SnfResult {
    let (rows, cols) = a.shape();
    let mut work = DenseSnf::new(a.to_dense(), cols, true);
    work.run();
    let identity = |n: usize| -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    SnfResult {
        u: SparseIntMatrix::from_dense(&work.u.unwrap_or_else(|| identity(rows)), rows),
        d: SparseIntMatrix::from_dense(&work.a, cols),
        v: SparseIntMatrix::from_dense(&work.v.unwrap_or_else(|| identity(cols)), cols),
    }
}

/// Nonzero invariant factors of `a` (each dividing the next). Their count is
/// the rank of `a`; those exceeding 1 are the torsion coefficients of its
/// cokernel.
pub fn invariant_factors(a: &SparseIntMatrix) -> Vec<BigInt> {
    let mut elim = UnitEliminator::new(a);
    let units = elim.eliminate_units();
    let (residual, cols) = elim.residual();
    let mut work = DenseSnf::new(residual, cols, false);
    work.run();
    let n = work.a.len().min(cols);
    let mut factors = vec![BigInt::one(); units];
    factors.extend(
        (0..n)
            .map(|i| work.a[i][i].clone())
            .take_while(|x| !x.is_zero()),
    );
    factors
}

struct DenseSnf {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl DenseSnf {
    fn new(a: Vec<Vec<BigInt>>, cols: usize, track: bool) -> Self {
        let rows = a.len();
        let eye = |n: usize| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
                .collect()
        };
        Self {
            u: track.then(|| eye(rows)),
            v: track.then(|| eye(cols)),
            a,
            rows,
            cols,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_i += q·row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
            let (src, dst) = if i < j {
                let (lo, hi) = m.split_at_mut(j);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[j], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d += q * s;
                }
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(u) = &mut self.u {
            go(u, i, j, q);
        }
    }

    /// col_i += q·col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
            for row in m {
                if !row[j].is_zero() {
                    let delta = q * &row[j];
                    row[i] += delta;
                }
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(v) = &mut self.v {
            go(v, i, j, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        for t in 0..self.rows.min(self.cols) {
            loop {
                let Some((p, q)) = self.min_entry(t) else {
                    return;
                };
                self.swap_rows(t, p);
                self.swap_cols(t, q);
                let pivot = self.a[t][t].clone();

                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let quot = self.a[i][t].div_floor(&pivot);
                    self.add_row(i, t, &-quot);
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let quot = self.a[t][j].div_floor(&pivot);
                    self.add_col(j, t, &-quot);
                    clean &= self.a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }

                let offender = (t + 1..self.rows)
                    .find(|&i| self.a[i][t + 1..].iter().any(|x| !(x % &pivot).is_zero()));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Sparse elimination of ±1 pivots. Each unit pivot splits off an invariant
/// factor of 1 via row operations on its column; the pivot row is then
/// cleared by column operations that touch nothing else, so it is dropped.
struct UnitEliminator {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl UnitEliminator {
    fn new(a: &SparseIntMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); a.rows()];
        let mut cols = vec![BTreeSet::new(); a.cols()];
        for (r, c, v) in a.entries() {
            rows[r].insert(c, v.clone());
            cols[c].insert(r);
        }
        Self {
            row_alive: vec![true; a.rows()],
            col_alive: vec![true; a.cols()],
            rows,
            cols,
        }
    }

    /// Markowitz-style choice: the unit entry minimizing fill-in.
    fn pick(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (c, rows) in self.cols.iter().enumerate() {
            if !self.col_alive[c] || rows.is_empty() {
                continue;
            }
            let col_cost = rows.len() - 1;
            for &r in rows {
                if self.rows[r][&c].abs().is_one() {
                    let cost = col_cost * (self.rows[r].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, r, c));
                        if cost == 0 {
                            return Some((r, c));
                        }
                    }
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn eliminate_units(&mut self) -> usize {
        let mut count = 0;
        while let Some((r, c)) = self.pick() {
            let pivot_row = std::mem::take(&mut self.rows[r]);
            let unit = pivot_row[&c].clone();
            let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let factor = &self.rows[i][&c] * &unit;
                for (&j, x) in &pivot_row {
                    let entry = self.rows[i].entry(j).or_insert_with(BigInt::zero);
                    *entry -= &factor * x;
                    if entry.is_zero() {
                        self.rows[i].remove(&j);
                        self.cols[j].remove(&i);
                    } else {
                        self.cols[j].insert(i);
                    }
                }
            }
            for &j in pivot_row.keys() {
                self.cols[j].remove(&r);
            }
            debug_assert!(self.cols[c].is_empty());
            self.row_alive[r] = false;
            self.col_alive[c] = false;
            count += 1;
        }
        count
    }

    fn residual(&self) -> (Vec<Vec<BigInt>>, usize) {
        let live_cols: Vec<usize> = (0..self.cols.len())
            .filter(|&c| self.col_alive[c] && !self.cols[c].is_empty())
            .collect();
        let position: BTreeMap<usize, usize> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dense = (0..self.rows.len())
            .filter(|&r| self.row_alive[r] && !self.rows[r].is_empty())
            .map(|r| {
                let mut row = vec![BigInt::zero(); live_cols.len()];
                for (c, x) in &self.rows[r] {
                    row[position[c]] = x.clone();
                }
                row
            })
            .collect();
        (dense, live_cols.len())
    }
}
