//! Hypercubes, cross-polytopes and piles of cubes, with their face encodings.
//!
//! Orientation convention for cubical cells: the free axes of a cell, read
//! left to right, are numbered `1..=k`; the boundary of the cell is
//!
//! ```text
//! ∂σ = Σ_j (−1)^(j−1) · (σ with free axis j set to its upper end
//!                        − σ with free axis j set to its lower end)
//! ```
//!
//! Cross-polytope faces are simplices on their nonzero positions, oriented by
//! position order, with `∂ = Σ_j (−1)^j · (drop the j-th vertex)` counting
//! from zero.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::complex::{Cell, ChainComplex};
use crate::error::{Error, Result};
use crate::matrix::{SparseColumn, SparseIntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubeSymbol {
    Zero,
    One,
    Star,
}

/// A face of the `n`-cube as a word over `{0, 1, *}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeFace(pub Vec<CubeSymbol>);

impl CubeFace {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Number of `*` symbols.
    pub fn dim(&self) -> usize {
        self.0.iter().filter(|s| **s == CubeSymbol::Star).count()
    }

    /// Face order: `self ≤ other` iff they agree wherever `other` is not `*`.
    pub fn is_face_of(&self, other: &CubeFace) -> bool {
        self.n() == other.n()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| a == b || *b == CubeSymbol::Star)
    }

    pub fn is_top(&self) -> bool {
        self.0.iter().all(|s| *s == CubeSymbol::Star)
    }
}

impl fmt::Display for CubeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                CubeSymbol::Zero => "0",
                CubeSymbol::One => "1",
                CubeSymbol::Star => "*",
            })?;
        }
        Ok(())
    }
}

impl FromStr for CubeFace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                '0' => Ok(CubeSymbol::Zero),
                '1' => Ok(CubeSymbol::One),
                '*' => Ok(CubeSymbol::Star),
                _ => Err(Error::InvalidFace(s.into())),
            })
            .collect::<Result<Vec<_>>>()?;
        if symbols.is_empty() {
            return Err(Error::InvalidFace(s.into()));
        }
        Ok(CubeFace(symbols))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossSymbol {
    Plus,
    Minus,
    Zero,
}

/// A face of the cross-polytope boundary as a word over `{+, -, 0}`: the
/// simplex spanned by `±e_i` at each nonzero position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossFace(pub Vec<CrossSymbol>);

impl CrossFace {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// One less than the number of nonzero symbols.
    pub fn dim(&self) -> usize {
        self.support() - 1
    }

    fn support(&self) -> usize {
        self.0.iter().filter(|s| **s != CrossSymbol::Zero).count()
    }

    /// `self ⊆ other` as simplices.
    pub fn is_face_of(&self, other: &CrossFace) -> bool {
        self.n() == other.n()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| *a == CrossSymbol::Zero || a == b)
    }
}

impl fmt::Display for CrossFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                CrossSymbol::Plus => "+",
                CrossSymbol::Minus => "-",
                CrossSymbol::Zero => "0",
            })?;
        }
        Ok(())
    }
}

impl FromStr for CrossFace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                '+' => Ok(CrossSymbol::Plus),
                '-' | '−' => Ok(CrossSymbol::Minus),
                '0' => Ok(CrossSymbol::Zero),
                _ => Err(Error::InvalidFace(s.into())),
            })
            .collect::<Result<Vec<_>>>()?;
        let face = CrossFace(symbols);
        if face.support() == 0 {
            return Err(Error::InvalidFace(s.into()));
        }
        Ok(face)
    }
}

/// Per-axis entry of a pile-of-cubes cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PileEntry {
    /// The grid point `v`.
    Vertex(u32),
    /// The unit interval `[v, v + 1]`.
    Interval(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PileCell(pub Vec<PileEntry>);

impl PileCell {
    pub fn dim(&self) -> usize {
        self.0
            .iter()
            .filter(|e| matches!(e, PileEntry::Interval(_)))
            .count()
    }
}

impl fmt::Display for PileCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match e {
                PileEntry::Vertex(v) => write!(f, "v{v}")?,
                PileEntry::Interval(v) => write!(f, "i{v}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for PileCell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFace(s.into());
        let entries = s
            .split(',')
            .map(|tok| {
                let (kind, num) = tok.split_at_checked(1).ok_or_else(bad)?;
                let v: u32 = num.parse().map_err(|_| bad())?;
                match kind {
                    "v" => Ok(PileEntry::Vertex(v)),
                    "i" => Ok(PileEntry::Interval(v)),
                    _ => Err(bad()),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PileCell(entries))
    }
}

/// The solid `n`-cube, top cell `*…*` included.
pub fn hypercube(n: usize) -> Result<ChainComplex> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "hypercube dimension must be at least 1".into(),
        ));
    }
    Ok(cubical_grid(&vec![1; n], |cell| {
        let word = cell
            .0
            .iter()
            .map(|e| match e {
                PileEntry::Vertex(0) => CubeSymbol::Zero,
                PileEntry::Vertex(_) => CubeSymbol::One,
                PileEntry::Interval(_) => CubeSymbol::Star,
            })
            .collect();
        CubeFace(word).to_string()
    }))
}

/// The box `[0,N_1]×…×[0,N_n]` subdivided into unit cubes.
pub fn pile_of_cubes(sizes: &[usize]) -> Result<ChainComplex> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidParameter(format!(
            "pile sizes must be a nonempty list of positive integers, got {sizes:?}"
        )));
    }
    Ok(cubical_grid(sizes, ToString::to_string))
}

/// The boundary sphere of the `n`-cube (its `(n-1)`-skeleton).
pub fn cube_boundary(n: usize) -> Result<ChainComplex> {
    hypercube(n)?.skeleton(n - 1)
}

fn cubical_grid(sizes: &[usize], label: impl Fn(&PileCell) -> String) -> ChainComplex {
    let n = sizes.len();
    let mut by_dim: Vec<Vec<(String, PileCell)>> = vec![Vec::new(); n + 1];
    // every axis independently takes one of 2N+1 states
    let states: Vec<u32> = sizes.iter().map(|&s| 2 * s as u32 + 1).collect();
    let mut counter = vec![0u32; n];
    loop {
        let cell = PileCell(
            counter
                .iter()
                .map(|&s| {
                    if s % 2 == 0 {
                        PileEntry::Vertex(s / 2)
                    } else {
                        PileEntry::Interval(s / 2)
                    }
                })
                .collect(),
        );
        by_dim[cell.dim()].push((label(&cell), cell));

        let mut axis = 0;
        while axis < n {
            counter[axis] += 1;
            if counter[axis] < states[axis] {
                break;
            }
            counter[axis] = 0;
            axis += 1;
        }
        if axis == n {
            break;
        }
    }
    for cells in &mut by_dim {
        cells.sort_by(|a, b| a.0.cmp(&b.0));
    }

    let positions: Vec<HashMap<&PileCell, usize>> = by_dim
        .iter()
        .map(|cells| cells.iter().enumerate().map(|(i, (_, c))| (c, i)).collect())
        .collect();

    let mut boundary = Vec::with_capacity(n);
    for dim in 1..=n {
        let lower = &positions[dim - 1];
        let columns: Vec<SparseColumn> = by_dim[dim]
            .iter()
            .map(|(_, cell)| {
                let mut col = Vec::with_capacity(2 * dim);
                let free = cell.0.iter().enumerate().filter_map(|(axis, e)| match e {
                    PileEntry::Interval(v) => Some((axis, *v)),
                    PileEntry::Vertex(_) => None,
                });
                for (j, (axis, v)) in free.enumerate() {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let mut face = cell.clone();
                    face.0[axis] = PileEntry::Vertex(v + 1);
                    col.push((lower[&face], BigInt::from(sign)));
                    face.0[axis] = PileEntry::Vertex(v);
                    col.push((lower[&face], BigInt::from(-sign)));
                }
                col
            })
            .collect();
        boundary.push(SparseIntMatrix::from_columns(lower.len(), columns));
    }

    let cells = by_dim
        .into_iter()
        .enumerate()
        .map(|(d, cells)| {
            cells
                .into_iter()
                .map(|(l, _)| Cell::labelled(d, l))
                .collect()
        })
        .collect();
    ChainComplex::from_parts(cells, boundary)
}

/// Boundary complex of the `n`-dimensional cross-polytope, a simplicial
/// `(n-1)`-sphere with `2^(j+1)·C(n, j+1)` faces of dimension `j`.
pub fn cross_polytope(n: usize) -> Result<ChainComplex> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "cross-polytope dimension must be at least 1".into(),
        ));
    }
    let mut by_dim: Vec<Vec<(String, CrossFace)>> = vec![Vec::new(); n];
    let total = 3usize.pow(n as u32);
    for code in 1..total {
        let mut rest = code;
        let word = (0..n)
            .map(|_| {
                let s = match rest % 3 {
                    0 => CrossSymbol::Zero,
                    1 => CrossSymbol::Plus,
                    _ => CrossSymbol::Minus,
                };
                rest /= 3;
                s
            })
            .collect();
        let face = CrossFace(word);
        by_dim[face.dim()].push((face.to_string(), face));
    }
    for faces in &mut by_dim {
        faces.sort_by(|a, b| a.0.cmp(&b.0));
    }
    let positions: Vec<HashMap<&CrossFace, usize>> = by_dim
        .iter()
        .map(|faces| faces.iter().enumerate().map(|(i, (_, f))| (f, i)).collect())
        .collect();

    let mut boundary = Vec::with_capacity(n - 1);
    for dim in 1..n {
        let lower = &positions[dim - 1];
        let columns = by_dim[dim]
            .iter()
            .map(|(_, face)| {
                let support = face
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| **s != CrossSymbol::Zero)
                    .map(|(i, _)| i);
                support
                    .enumerate()
                    .map(|(j, pos)| {
                        let mut sub = face.clone();
                        sub.0[pos] = CrossSymbol::Zero;
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        (lower[&sub], BigInt::from(sign))
                    })
                    .collect()
            })
            .collect();
        boundary.push(SparseIntMatrix::from_columns(lower.len(), columns));
    }

    let cells = by_dim
        .into_iter()
        .enumerate()
        .map(|(d, faces)| {
            faces
                .into_iter()
                .map(|(l, _)| Cell::labelled(d, l))
                .collect()
        })
        .collect();
    Ok(ChainComplex::from_parts(cells, boundary))
}

/// Inclusion-reversing bijection from proper cube faces to cross-polytope
/// faces: `* ↦ 0`, `1 ↦ +`, `0 ↦ −`. A `k`-face maps to an `(n-1-k)`-face.
pub fn dual_cell(face: &CubeFace) -> Result<CrossFace> {
    if face.is_top() {
        return Err(Error::TopCellHasNoDual);
    }
    Ok(CrossFace(
        face.0
            .iter()
            .map(|s| match s {
                CubeSymbol::Star => CrossSymbol::Zero,
                CubeSymbol::One => CrossSymbol::Plus,
                CubeSymbol::Zero => CrossSymbol::Minus,
            })
            .collect(),
    ))
}

/// Inverse of [`dual_cell`].
pub fn dual_cell_inverse(face: &CrossFace) -> CubeFace {
    CubeFace(
        face.0
            .iter()
            .map(|s| match s {
                CrossSymbol::Zero => CubeSymbol::Star,
                CrossSymbol::Plus => CubeSymbol::One,
                CrossSymbol::Minus => CubeSymbol::Zero,
            })
            .collect(),
    )
}

/// Number of `ℓ`-cells of a pile, `Σ_{|I|=ℓ} Π_{i∈I} N_i Π_{i∉I} (N_i+1)`.
pub fn pile_face_count(sizes: &[usize], dim: usize) -> num_bigint::BigUint {
    // coefficient extraction from Π (N_i·x + N_i + 1)
    let mut poly = vec![num_bigint::BigUint::from(1u32)];
    for &s in sizes {
        let mut next = vec![num_bigint::BigUint::default(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d] += c * (s + 1);
            next[d + 1] += c * s;
        }
        poly = next;
    }
    poly.get(dim).cloned().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(s: &str) -> CubeFace {
        s.parse().unwrap()
    }

    #[test]
    fn interval_boundary() {
        let c = hypercube(1).unwrap();
        let labels: Vec<&str> = c.all_cells().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["0", "1", "*"]);
        let d = c.boundary(1).unwrap();
        assert_eq!(d.get(0, 0), BigInt::from(-1));
        assert_eq!(d.get(1, 0), BigInt::from(1));
    }

    #[test]
    fn small_f_vectors() {
        assert_eq!(hypercube(3).unwrap().f_vector().0, [8, 12, 6, 1]);
        assert_eq!(cross_polytope(3).unwrap().f_vector().0, [6, 12, 8]);
        assert_eq!(cross_polytope(1).unwrap().f_vector().0, [2]);
        assert_eq!(pile_of_cubes(&[2, 2]).unwrap().f_vector().0, [9, 12, 4]);
        assert_eq!(pile_of_cubes(&[2, 1]).unwrap().f_vector().0, [6, 7, 2]);
    }

    #[test]
    fn builders_validate() {
        for n in 1..=5 {
            assert!(hypercube(n).unwrap().validate().is_valid(), "cube {n}");
            assert!(
                cross_polytope(n).unwrap().validate().is_valid(),
                "cross {n}"
            );
        }
        assert!(pile_of_cubes(&[3, 1, 2]).unwrap().validate().is_valid());
        assert!(pile_of_cubes(&[12]).unwrap().validate().is_valid());
    }

    #[test]
    fn degenerate_parameters() {
        assert!(hypercube(0).is_err());
        assert!(cross_polytope(0).is_err());
        assert!(pile_of_cubes(&[]).is_err());
        assert!(pile_of_cubes(&[2, 0]).is_err());
    }

    #[test]
    fn dual_cell_examples() {
        let f = cube("0*1");
        let g = dual_cell(&f).unwrap();
        assert_eq!(g.to_string(), "-0+");
        assert_eq!((f.dim(), g.dim()), (1, 1));
        assert_eq!(dual_cell_inverse(&g), f);
        assert!(matches!(
            dual_cell(&cube("**")),
            Err(Error::TopCellHasNoDual)
        ));

        let big = cube("0**");
        assert!(f.is_face_of(&big));
        let (df, dbig) = (dual_cell(&f).unwrap(), dual_cell(&big).unwrap());
        assert_eq!(dbig.to_string(), "-00");
        assert!(dbig.is_face_of(&df));
        assert!(!df.is_face_of(&dbig));
    }

    #[test]
    fn face_parsing() {
        assert!("01*".parse::<CubeFace>().is_ok());
        assert!("012".parse::<CubeFace>().is_err());
        assert!("000".parse::<CrossFace>().is_err());
        assert_eq!("−0+".parse::<CrossFace>().unwrap().to_string(), "-0+");
        let p: PileCell = "v2,i1".parse().unwrap();
        assert_eq!(p.0, [PileEntry::Vertex(2), PileEntry::Interval(1)]);
        assert_eq!(p.to_string(), "v2,i1");
        assert!("x1".parse::<PileCell>().is_err());
    }

    #[test]
    fn grid_count_formula() {
        let sizes = [3, 1, 2];
        let f = pile_of_cubes(&sizes).unwrap().f_vector();
        for d in 0..=3 {
            assert_eq!(pile_face_count(&sizes, d), f.get(d).into());
        }
    }
}
