//! Higher-dimensional spanning trees.
//!
//! A set `T` of top cells of a `d`-complex `Σ` with reduced `β_{d-1}(Σ) = 0`
//! is a spanning tree when the subcomplex `Σ_{d-1} ∪ T` has
//!
//! 1. `H_d = 0` (acyclic),
//! 2. finite `H_{d-1}` (connected up to torsion),
//! 3. exactly `f_d(Σ) − β_d(Σ)` facets.
//!
//! Homology here is reduced, which is what makes `d = 1` the usual graph
//! notion and `d = 0` (a single vertex) meaningful. Acyclicity is decided
//! over ℚ: `H_d(T)` is the kernel of an integer matrix and thus free, so it
//! vanishes iff the chosen columns of `∂_d` are independent.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::builders::{
    cross_polytope, cube_boundary, dual_cell, dual_cell_inverse, CrossFace, CubeFace,
};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::homology::boundary_rank;
use crate::json;
use crate::linalg::{invariant_factors, IncrementalRank};

/// Order in which [`build_tree`] offers facets to the greedy selection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "order", content = "seed", rename_all = "snake_case")]
pub enum TreeOrder {
    #[default]
    Lexicographic,
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbientCheck {
    pub passed: bool,
    /// Reduced `β_{d-1}(Σ)`.
    pub betti_below: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicCheck {
    pub passed: bool,
    /// Rank of `H_d(T)`.
    pub top_betti: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectedCheck {
    pub passed: bool,
    /// Rank of `H_{d-1}(T)`.
    pub betti: usize,
    #[serde(serialize_with = "json::ints")]
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountCheck {
    pub passed: bool,
    pub tree_facets: usize,
    pub ambient_facets: usize,
    pub ambient_top_betti: usize,
}

/// Evidence for every condition of the tree definition. All checks are
/// evaluated even after one fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeCertificate {
    pub dim: usize,
    pub ambient_f_vector: Vec<usize>,
    pub facets: Vec<String>,
    pub ambient: AmbientCheck,
    pub spanning: bool,
    pub acyclic: AcyclicCheck,
    pub connected: ConnectedCheck,
    pub count: CountCheck,
    pub valid: bool,
}

/// `f_{d-1}` of the augmented complex (the empty face counts in degree −1)
/// minus the rank of the outgoing map: the dimension of the `(d-1)`-cycles.
fn cycles_below(c: &ChainComplex) -> usize {
    match c.top_dim() {
        0 => 1,
        d => c.num_cells(d - 1) - boundary_rank(c, d - 1, true),
    }
}

pub fn check_tree<S: AsRef<str>>(sigma: &ChainComplex, facets: &[S]) -> Result<TreeCertificate> {
    let d = sigma.top_dim();
    let positions = sigma.top_positions(facets)?;
    let top = sigma.augmented_boundary(d);

    let mut full = IncrementalRank::new();
    for col in top.columns() {
        full.insert(col);
    }
    let cycles = cycles_below(sigma);
    let betti_below = cycles - full.rank();
    let ambient_top_betti = sigma.num_cells(d) - full.rank();

    let restricted = top.select_columns(&positions);
    let factors = invariant_factors(&restricted);
    let tree_rank = factors.len();

    let acyclic = AcyclicCheck {
        passed: tree_rank == positions.len(),
        top_betti: positions.len() - tree_rank,
    };
    let connected_betti = cycles - tree_rank;
    let connected = ConnectedCheck {
        passed: connected_betti == 0,
        betti: connected_betti,
        torsion: factors.into_iter().filter(|x| !x.is_one()).collect(),
    };
    let count = CountCheck {
        passed: positions.len() + ambient_top_betti == sigma.num_cells(d),
        tree_facets: positions.len(),
        ambient_facets: sigma.num_cells(d),
        ambient_top_betti,
    };
    let ambient = AmbientCheck {
        passed: betti_below == 0,
        betti_below,
    };
    // T is assembled as Σ_{d-1} plus facets, so it spans by construction.
    let spanning = true;
    let valid = ambient.passed && spanning && acyclic.passed && connected.passed && count.passed;

    Ok(TreeCertificate {
        dim: d,
        ambient_f_vector: sigma.f_vector().0,
        facets: positions
            .iter()
            .map(|&p| sigma.cell(d, p).id.clone())
            .collect(),
        ambient,
        spanning,
        acyclic,
        connected,
        count,
        valid,
    })
}

/// Greedy spanning tree: offers top cells in the given order and keeps each
/// one whose boundary column is independent over ℚ of those kept so far.
/// Returns cell ids in complex order.
pub fn build_tree(sigma: &ChainComplex, order: TreeOrder) -> Result<Vec<String>> {
    let d = sigma.top_dim();
    let top = sigma.augmented_boundary(d);
    let mut candidates: Vec<usize> = (0..top.cols()).collect();
    if let TreeOrder::Random(seed) = order {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    let target = cycles_below(sigma);
    let mut acc = IncrementalRank::new();
    let mut chosen = Vec::with_capacity(target);
    for p in candidates {
        if acc.rank() == target {
            break;
        }
        if acc.insert(top.column(p)) {
            chosen.push(p);
        }
    }
    if acc.rank() < target {
        return Err(Error::AmbientNotAcyclic {
            dim: d as isize - 1,
            betti: target - acc.rank(),
        });
    }
    chosen.sort_unstable();
    Ok(chosen
        .into_iter()
        .map(|p| sigma.cell(d, p).id.clone())
        .collect())
}

/// A tree on one side of the cube / cross-polytope duality, with the
/// certificate of the dual tree.
#[derive(Clone, Debug, Serialize)]
pub struct DualTree<F> {
    pub faces: Vec<F>,
    pub certificate: TreeCertificate,
}

/// Complement-dual of an `i`-tree of the cube boundary: the duals of the
/// `i`-faces not in the tree form an `(n-1-i)`-tree of the cross-polytope.
pub fn dual_tree(n: usize, i: usize, cube_tree: &[CubeFace]) -> Result<DualTree<CrossFace>> {
    let (cube_side, cross_side) = dual_pair(n, i)?;
    let labels: Vec<String> = cube_tree.iter().map(ToString::to_string).collect();
    let input = check_tree(&cube_side, &labels)?;
    if !input.valid {
        return Err(Error::NotATree(format!(
            "{} faces do not form a {i}-tree of the {n}-cube boundary",
            labels.len()
        )));
    }
    let chosen: HashSet<&str> = input.facets.iter().map(String::as_str).collect();
    let faces: Vec<CrossFace> = cube_side
        .cells(i)
        .iter()
        .filter(|c| !chosen.contains(c.id.as_str()))
        .map(|c| dual_cell(&c.label.parse()?))
        .collect::<Result<_>>()?;
    let out: Vec<String> = faces.iter().map(ToString::to_string).collect();
    let certificate = check_tree(&cross_side, &out)?;
    Ok(DualTree { faces, certificate })
}

/// The inverse direction: a `j`-tree of the cross-polytope boundary to the
/// complementary `(n-1-j)`-tree of the cube boundary.
pub fn dual_tree_inverse(
    n: usize,
    j: usize,
    cross_tree: &[CrossFace],
) -> Result<DualTree<CubeFace>> {
    if n == 0 || j >= n {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= j < n, got n={n}, j={j}"
        )));
    }
    let (cube_side, cross_side) = dual_pair(n, n - 1 - j)?;
    let labels: Vec<String> = cross_tree.iter().map(ToString::to_string).collect();
    let input = check_tree(&cross_side, &labels)?;
    if !input.valid {
        return Err(Error::NotATree(format!(
            "{} faces do not form a {j}-tree of the {n}-cross-polytope boundary",
            labels.len()
        )));
    }
    let chosen: HashSet<&str> = input.facets.iter().map(String::as_str).collect();
    let faces: Vec<CubeFace> = cross_side
        .cells(j)
        .iter()
        .filter(|c| !chosen.contains(c.id.as_str()))
        .map(|c| c.label.parse().map(|f: CrossFace| dual_cell_inverse(&f)))
        .collect::<Result<_>>()?;
    let out: Vec<String> = faces.iter().map(ToString::to_string).collect();
    let certificate = check_tree(&cube_side, &out)?;
    Ok(DualTree { faces, certificate })
}

/// `(Cube boundary i-skeleton, Cross boundary (n-1-i)-skeleton)`.
fn dual_pair(n: usize, i: usize) -> Result<(ChainComplex, ChainComplex)> {
    if n == 0 || i >= n {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= i < n, got n={n}, i={i}"
        )));
    }
    Ok((
        cube_boundary(n)?.skeleton(i)?,
        cross_polytope(n)?.skeleton(n - 1 - i)?,
    ))
}
