//! Finite regular CW complexes as integer chain complexes.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{SparseColumn, SparseIntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    pub label: String,
}

impl Cell {
    pub fn new(id: impl Into<String>, dim: usize, label: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            dim,
            label: label.into(),
        }
    }

    /// A cell whose id is its label, as produced by the shape builders.
    pub fn labelled(dim: usize, label: impl Into<String>) -> Self {
        let label = label.into();
        Self {
            id: label.clone(),
            dim,
            label,
        }
    }
}

/// A cell together with its boundary, given as `(cell id, coefficient)`
/// pairs referencing cells one dimension lower.
#[derive(Clone, Debug)]
pub struct CellSpec {
    pub cell: Cell,
    pub boundary: Vec<(String, BigInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, dim: usize) -> usize {
        self.0.get(dim).copied().unwrap_or(0)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A graded collection of cells with boundary matrices.
///
/// `boundary(i)` maps `i`-chains to `(i-1)`-chains: rows are indexed by the
/// `(i-1)`-cells and columns by the `i`-cells, both in label order. Values are
/// never mutated after construction; [`skeleton`](Self::skeleton) and
/// [`facet_subcomplex`](Self::facet_subcomplex) return new complexes.
#[derive(Clone)]
pub struct ChainComplex {
    top_dim: usize,
    cells: Vec<Vec<Cell>>,
    boundary: Vec<SparseIntMatrix>,
    index: HashMap<String, (usize, usize)>,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        self.top_dim == other.top_dim
            && self.cells == other.cells
            && self.boundary == other.boundary
    }
}

impl Eq for ChainComplex {}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainComplex")
            .field("top_dim", &self.top_dim)
            .field("f_vector", &self.f_vector().0)
            .finish()
    }
}

impl ChainComplex {
    /// Assembles a complex from per-dimension cell lists and boundary
    /// matrices (`boundary[i - 1]` is ∂_i) without checking anything.
    /// Use [`validate`](Self::validate) to audit the result.
    pub fn from_parts(cells: Vec<Vec<Cell>>, boundary: Vec<SparseIntMatrix>) -> Self {
        assert!(
            !cells.is_empty(),
            "a complex needs at least a 0-dimension slot"
        );
        let top_dim = cells.len() - 1;
        let index = build_index(&cells);
        Self {
            top_dim,
            cells,
            boundary,
            index,
        }
    }

    /// Builds a complex from cells with id-based boundaries. Cells are sorted
    /// by label (ties by id) within each dimension.
    pub fn from_cells(top_dim: usize, specs: Vec<CellSpec>) -> Result<Self> {
        let mut by_dim: Vec<Vec<CellSpec>> = vec![Vec::new(); top_dim + 1];
        let mut seen = HashSet::new();
        for spec in specs {
            let c = &spec.cell;
            if c.dim > top_dim {
                return Err(Error::MalformedCell {
                    id: c.id.clone(),
                    reason: format!("dimension {} exceeds top_dim {top_dim}", c.dim),
                });
            }
            if !seen.insert(c.id.clone()) {
                return Err(Error::DuplicateCell(c.id.clone()));
            }
            if c.dim == 0 && !spec.boundary.is_empty() {
                return Err(Error::MalformedCell {
                    id: c.id.clone(),
                    reason: "0-cells must have an empty boundary".into(),
                });
            }
            by_dim[c.dim].push(spec);
        }
        for specs in &mut by_dim {
            specs.sort_by(|a, b| (&a.cell.label, &a.cell.id).cmp(&(&b.cell.label, &b.cell.id)));
        }

        let positions: Vec<HashMap<&str, usize>> = by_dim
            .iter()
            .map(|specs| {
                specs
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.cell.id.as_str(), i))
                    .collect()
            })
            .collect();

        let mut boundary = Vec::with_capacity(top_dim);
        for dim in 1..=top_dim {
            let lower = &positions[dim - 1];
            let mut columns: Vec<SparseColumn> = Vec::with_capacity(by_dim[dim].len());
            for spec in &by_dim[dim] {
                let mut col = Vec::with_capacity(spec.boundary.len());
                for (face, coef) in &spec.boundary {
                    let row = *lower.get(face.as_str()).ok_or_else(|| {
                        if seen.contains(face) {
                            Error::MalformedCell {
                                id: spec.cell.id.clone(),
                                reason: format!(
                                    "boundary cell `{face}` is not of dimension {}",
                                    dim - 1
                                ),
                            }
                        } else {
                            Error::MalformedCell {
                                id: spec.cell.id.clone(),
                                reason: format!("boundary references unknown cell `{face}`"),
                            }
                        }
                    })?;
                    col.push((row, coef.clone()));
                }
                columns.push(col);
            }
            boundary.push(SparseIntMatrix::from_columns(lower.len(), columns));
        }

        let cells = by_dim
            .into_iter()
            .map(|specs| specs.into_iter().map(|s| s.cell).collect())
            .collect();
        Ok(Self::from_parts(cells, boundary))
    }

    pub fn top_dim(&self) -> usize {
        self.top_dim
    }

    /// Cells of dimension `dim` in label order; empty above `top_dim`.
    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn all_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().flatten()
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// ∂_i for `1 <= i <= top_dim`.
    pub fn boundary(&self, i: usize) -> Option<&SparseIntMatrix> {
        if i == 0 {
            return None;
        }
        self.boundary.get(i - 1)
    }

    /// ∂_i of the augmented complex: for `i == 0` this is the augmentation
    /// map (a single row of ones), above `top_dim` an empty matrix.
    pub fn augmented_boundary(&self, i: usize) -> SparseIntMatrix {
        match i {
            0 => {
                let columns = (0..self.num_cells(0))
                    .map(|_| vec![(0, BigInt::one())])
                    .collect();
                SparseIntMatrix::from_columns(1, columns)
            }
            i if i <= self.top_dim => self.boundary[i - 1].clone(),
            i => SparseIntMatrix::zeros(self.num_cells(i - 1), 0),
        }
    }

    /// Looks a cell up by id, returning `(dim, position)`.
    pub fn find(&self, id: &str) -> Option<(usize, usize)> {
        self.index.get(id).copied()
    }

    /// Looks a cell up by id, falling back to its label.
    pub fn resolve(&self, token: &str) -> Option<(usize, usize)> {
        self.find(token).or_else(|| {
            self.cells
                .iter()
                .enumerate()
                .find_map(|(d, cells)| cells.iter().position(|c| c.label == token).map(|p| (d, p)))
        })
    }

    pub fn cell(&self, dim: usize, pos: usize) -> &Cell {
        &self.cells[dim][pos]
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.cells.iter().map(Vec::len).collect())
    }

    /// Alternating sum of the face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i % 2 == 0 {
                    c.len() as i64
                } else {
                    -(c.len() as i64)
                }
            })
            .sum()
    }

    /// All cells of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> Result<Self> {
        if k > self.top_dim {
            return Err(Error::DimensionOutOfRange {
                got: k,
                max: self.top_dim,
            });
        }
        Ok(Self::from_parts(
            self.cells[..=k].to_vec(),
            self.boundary[..k].to_vec(),
        ))
    }

    /// The full `(d-1)`-skeleton plus exactly the named top cells. With no
    /// facets this is the `(d-1)`-skeleton itself.
    pub fn facet_subcomplex<S: AsRef<str>>(&self, facet_ids: &[S]) -> Result<Self> {
        let positions = self.top_positions(facet_ids)?;
        let d = self.top_dim;
        if positions.is_empty() && d > 0 {
            return self.skeleton(d - 1);
        }
        let mut cells = self.cells[..d].to_vec();
        cells.push(
            positions
                .iter()
                .map(|&p| self.cells[d][p].clone())
                .collect(),
        );
        let mut boundary = self.boundary[..d.saturating_sub(1)].to_vec();
        if d > 0 {
            boundary.push(self.boundary[d - 1].select_columns(&positions));
        }
        Ok(Self::from_parts(cells, boundary))
    }

    /// Positions of the named top-dimensional cells, deduplicated and in
    /// complex order.
    pub fn top_positions<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        let mut positions = Vec::with_capacity(ids.len());
        for id in ids {
            let id = id.as_ref();
            let (dim, pos) = self
                .resolve(id)
                .ok_or_else(|| Error::UnknownCell(id.into()))?;
            if dim != self.top_dim {
                return Err(Error::NotTopCell {
                    id: id.into(),
                    dim,
                    top: self.top_dim,
                });
            }
            positions.push(pos);
        }
        positions.sort_unstable();
        positions.dedup();
        Ok(positions)
    }

    /// Audits every structural invariant, including ∂∘∂ = 0.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        if self.boundary.len() != self.top_dim {
            violations.push(Violation::BoundaryCount {
                expected: self.top_dim,
                found: self.boundary.len(),
            });
        }

        let mut ids = HashSet::new();
        for (dim, cells) in self.cells.iter().enumerate() {
            for cell in cells {
                if cell.dim != dim {
                    violations.push(Violation::MisplacedCell {
                        id: cell.id.clone(),
                        dim: cell.dim,
                        slot: dim,
                    });
                }
                if !ids.insert(cell.id.as_str()) {
                    violations.push(Violation::DuplicateId(cell.id.clone()));
                }
            }
            let ordered = cells
                .windows(2)
                .all(|w| (&w[0].label, &w[0].id) < (&w[1].label, &w[1].id));
            if !ordered {
                violations.push(Violation::Unordered { dim });
            }
        }

        let mut shapes_ok = vec![false; self.boundary.len() + 1];
        for (i, m) in self.boundary.iter().enumerate() {
            let degree = i + 1;
            let expected = (self.num_cells(degree - 1), self.num_cells(degree));
            if m.shape() != expected {
                violations.push(Violation::Shape {
                    degree,
                    expected,
                    found: m.shape(),
                });
            } else if !m.storage_is_canonical() {
                violations.push(Violation::NonCanonicalStorage { degree });
            } else {
                shapes_ok[degree] = true;
            }
        }

        for degree in 2..=self.boundary.len() {
            if shapes_ok[degree] && shapes_ok[degree - 1] {
                let composite = self.boundary[degree - 2].mul(&self.boundary[degree - 1]);
                if !composite.is_zero() {
                    violations.push(Violation::BoundaryOfBoundary {
                        degree,
                        nonzeros: composite.nnz(),
                    });
                }
            }
        }

        ValidationReport { violations }
    }
}

fn build_index(cells: &[Vec<Cell>]) -> HashMap<String, (usize, usize)> {
    let mut index = HashMap::new();
    for (d, cs) in cells.iter().enumerate() {
        for (p, c) in cs.iter().enumerate() {
            index.entry(c.id.clone()).or_insert((d, p));
        }
    }
    index
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    BoundaryCount {
        expected: usize,
        found: usize,
    },
    MisplacedCell {
        id: String,
        dim: usize,
        slot: usize,
    },
    DuplicateId(String),
    Unordered {
        dim: usize,
    },
    Shape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    NonCanonicalStorage {
        degree: usize,
    },
    BoundaryOfBoundary {
        degree: usize,
        nonzeros: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundaryCount { expected, found } => {
                write!(f, "expected {expected} boundary matrices, found {found}")
            }
            Violation::MisplacedCell { id, dim, slot } => {
                write!(
                    f,
                    "cell `{id}` of dimension {dim} stored among {slot}-cells"
                )
            }
            Violation::DuplicateId(id) => write!(f, "duplicate cell id `{id}`"),
            Violation::Unordered { dim } => write!(f, "{dim}-cells are not in label order"),
            Violation::Shape {
                degree,
                expected,
                found,
            } => write!(
                f,
                "∂_{degree} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::NonCanonicalStorage { degree } => {
                write!(
                    f,
                    "∂_{degree} stores zeros, unsorted or out-of-range entries"
                )
            }
            Violation::BoundaryOfBoundary { degree, nonzeros } => write!(
                f,
                "∂_{}∘∂_{degree} ≠ 0 ({nonzeros} nonzero entries)",
                degree - 1
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}
