//! Sparse matrices over the integers.
//!
//! Storage is column-major: each column is a list of `(row, value)` pairs
//! sorted by row, with no stored zeros. Boundary matrices of cell complexes
//! are accessed almost exclusively by column (the boundary of one cell), so
//! this is the natural layout.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A sparse column vector: `(row, value)` pairs, sorted by row, no zeros.
pub type SparseColumn = Vec<(usize, BigInt)>;

#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseColumn>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        Self {
            rows: n,
            cols: n,
            columns,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions
    /// are summed and resulting zeros dropped.
    ///
    /// Panics if an index is out of bounds.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut columns: Vec<SparseColumn> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r}, {c}) outside {rows}x{cols}"
            );
            columns[c].push((r, v));
        }
        for col in &mut columns {
            *col = normalize_column(std::mem::take(col));
        }
        Self {
            rows,
            cols,
            columns,
        }
    }

    /// Builds a matrix from already-sorted columns. Entries are normalized
    /// (sorted, merged, zeros dropped).
    pub fn from_columns(rows: usize, columns: Vec<SparseColumn>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| {
                let c = normalize_column(c);
                if let Some(&(r, _)) = c.last() {
                    assert!(r < rows, "row {r} outside {rows} rows");
                }
                c
            })
            .collect();
        Self {
            rows,
            cols,
            columns,
        }
    }

    pub fn from_dense(dense: &[Vec<BigInt>], cols: usize) -> Self {
        let rows = dense.len();
        let triplets = dense.iter().enumerate().flat_map(|(r, row)| {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(c, v)| (r, c, v.clone()))
        });
        Self::from_triplets(rows, cols, triplets)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseColumn] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .binary_search_by_key(&r, |(row, _)| *row)
            .map(|i| self.columns[c][i].1.clone())
            .unwrap_or_default()
    }

    /// Iterates over stored entries as `(row, col, value)`, column by column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    /// Restricts to the given columns, in the given order.
    pub fn select_columns(&self, which: &[usize]) -> Self {
        Self {
            rows: self.rows,
            cols: which.len(),
            columns: which.iter().map(|&c| self.columns[c].clone()).collect(),
        }
    }

    /// Restricts to the given rows, renumbering them `0..which.len()` in the
    /// given order.
    pub fn select_rows(&self, which: &[usize]) -> Self {
        let mut new_index = vec![usize::MAX; self.rows];
        for (i, &r) in which.iter().enumerate() {
            new_index[r] = i;
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .filter(|(r, _)| new_index[*r] != usize::MAX)
                    .map(|(r, v)| (new_index[*r], v.clone()))
                    .collect()
            })
            .collect();
        Self::from_columns(which.len(), columns)
    }

    /// Matrix product `self * rhs`.
    ///
    /// Panics on a shape mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let columns = rhs
            .columns
            .iter()
            .map(|rcol| {
                let mut acc: SparseColumn = Vec::new();
                for (k, b) in rcol {
                    for (i, a) in &self.columns[*k] {
                        acc.push((*i, a * b));
                    }
                }
                acc
            })
            .collect();
        Self::from_columns(self.rows, columns)
    }

    /// True if every stored entry is nonzero and in bounds, with rows sorted
    /// strictly within each column.
    pub(crate) fn storage_is_canonical(&self) -> bool {
        self.columns.len() == self.cols
            && self.columns.iter().all(|col| {
                col.iter().all(|(r, v)| *r < self.rows && !v.is_zero())
                    && col.windows(2).all(|w| w[0].0 < w[1].0)
            })
    }

    /// Constructs a matrix without normalizing. Used to build deliberately
    /// malformed inputs for validation.
    #[doc(hidden)]
    pub fn from_raw_columns(rows: usize, cols: usize, columns: Vec<SparseColumn>) -> Self {
        Self {
            rows,
            cols,
            columns,
        }
    }
}

fn normalize_column(mut col: SparseColumn) -> SparseColumn {
    col.sort_by_key(|(r, _)| *r);
    let mut out: SparseColumn = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseIntMatrix {}x{} [", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let row: Vec<String> = row.iter().map(ToString::to_string).collect();
                writeln!(f, "  {}", row.join(" "))?;
            }
        } else {
            writeln!(f, "  {} nonzeros", self.nnz())?;
        }
        write!(f, "]")
    }
}
