//! Rank over ℚ by fraction-free elimination.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{SparseColumn, SparseIntMatrix};

/// An echelon basis over ℚ that grows one vector at a time.
///
/// Every stored vector is a primitive integer vector whose leading (lowest)
/// index is unique among the basis, so a candidate is reduced by repeatedly
/// cancelling its leading entry against the basis vector with that pivot.
/// Cancellation is fraction-free: `v ← (b_p/g)·v − (v_p/g)·b` with
/// `g = gcd(b_p, v_p)`, followed by division by the content of `v`.
#[derive(Clone, Debug, Default)]
pub struct IncrementalRank {
    basis: HashMap<usize, SparseColumn>,
}

impl IncrementalRank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds `v` to the span. Returns `true` if it was independent of the
    /// vectors inserted so far.
    pub fn insert(&mut self, v: &[(usize, BigInt)]) -> bool {
        let reduced = self.reduce(v.to_vec());
        match reduced.first() {
            Some(&(pivot, _)) => {
                self.basis.insert(pivot, reduced);
                true
            }
            None => false,
        }
    }

    /// True if `v` is independent of the current basis.
    pub fn is_independent(&self, v: &[(usize, BigInt)]) -> bool {
        !self.reduce(v.to_vec()).is_empty()
    }

    fn reduce(&self, mut v: SparseColumn) -> SparseColumn {
        make_primitive(&mut v);
        while let Some((lead, lead_val)) = v.first().cloned() {
            let Some(b) = self.basis.get(&lead) else {
                break;
            };
            let b_lead = &b[0].1;
            let g = b_lead.gcd(&lead_val);
            let scale_v = b_lead / &g;
            let scale_b = &lead_val / &g;
            v = combine(&scale_v, &v, &scale_b, b);
            make_primitive(&mut v);
        }
        v
    }
}

/// `a·x − b·y` for sorted sparse vectors, dropping zeros.
fn combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> SparseColumn {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (idx, val) = match (x.get(i), y.get(j)) {
            (Some((xi, xv)), Some((yi, _))) if xi < yi => {
                i += 1;
                (*xi, a * xv)
            }
            (Some((xi, _)), Some((yi, yv))) if yi < xi => {
                j += 1;
                (*yi, -(b * yv))
            }
            (Some((xi, xv)), Some((_, yv))) => {
                i += 1;
                j += 1;
                (*xi, a * xv - b * yv)
            }
            (Some((xi, xv)), None) => {
                i += 1;
                (*xi, a * xv)
            }
            (None, Some((yi, yv))) => {
                j += 1;
                (*yi, -(b * yv))
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    out
}

fn make_primitive(v: &mut SparseColumn) {
    let mut content = BigInt::zero();
    for (_, x) in v.iter() {
        content = content.gcd(x);
        if content.is_one() {
            return;
        }
    }
    if content > BigInt::one() {
        for (_, x) in v.iter_mut() {
            *x /= &content;
        }
    }
}

/// Rank over ℚ of a sparse matrix, column by column.
pub fn rank(a: &SparseIntMatrix) -> usize {
    let mut acc = IncrementalRank::new();
    let bound = a.rows().min(a.cols());
    for col in a.columns() {
        acc.insert(col);
        if acc.rank() == bound {
            break;
        }
    }
    acc.rank()
}

/// Rank over ℚ by dense Bareiss elimination. Every intermediate entry is a
/// minor of the input, so all divisions are exact.
pub fn bareiss_rank(a: &SparseIntMatrix) -> usize {
    let mut m = a.to_dense();
    let (rows, cols) = a.shape();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        let (upper, lower) = m.split_at_mut(r + 1);
        let pivot_row = &upper[r];
        for row in lower {
            let factor = std::mem::take(&mut row[c]);
            for (x, p) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                let val = &pivot * &*x - &factor * p;
                debug_assert!((&val % &prev).is_zero());
                *x = val / &prev;
            }
        }
        prev = pivot.abs();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> SparseIntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let d: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        SparseIntMatrix::from_dense(&d, cols)
    }

    #[test]
    fn ranks_agree_on_small_cases() {
        let cases = [
            (dense(&[&[1, 2], &[2, 4]]), 1),
            (dense(&[&[2, 0], &[0, 3]]), 2),
            (dense(&[&[0, 0, 0], &[0, 0, 0]]), 0),
            (dense(&[&[1, 1, 0], &[-1, 0, 1], &[0, -1, -1]]), 2),
            (dense(&[&[6, 4, 2], &[3, 2, 1], &[9, 6, 4]]), 2),
        ];
        for (m, expected) in cases {
            assert_eq!(rank(&m), expected, "{m:?}");
            assert_eq!(bareiss_rank(&m), expected, "{m:?}");
        }
    }

    #[test]
    fn incremental_detects_dependence() {
        let mut acc = IncrementalRank::new();
        let v = |xs: &[(usize, i64)]| -> SparseColumn {
            xs.iter().map(|&(i, x)| (i, BigInt::from(x))).collect()
        };
        assert!(acc.insert(&v(&[(0, 2), (1, 4)])));
        assert!(acc.insert(&v(&[(1, 3), (2, 1)])));
        assert!(!acc.is_independent(&v(&[(0, 1), (1, 5), (2, 1)])));
        assert!(!acc.insert(&v(&[(0, -4), (1, -5), (2, 1)])));
        assert!(acc.insert(&v(&[(2, 7)])));
        assert_eq!(acc.rank(), 3);
        assert!(!acc.insert(&[]));
    }
}
