//! Integer cellular homology.
//!
//! Betti numbers come from ranks over ℚ; torsion from the invariant factors
//! of the incoming boundary map. Reduced homology replaces ∂_0 = 0 by the
//! augmentation C_0 → ℤ, so a connected complex has reduced β_0 = 0.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::json;
use crate::linalg::{invariant_factors, rank};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub dim: usize,
    pub betti: usize,
    #[serde(serialize_with = "json::ints")]
    pub torsion: Vec<BigInt>,
}

impl HomologyResult {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.betti == 0
    }
}

/// Rank over ℚ of ∂_i (augmented when `reduced`), zero outside the complex.
pub(crate) fn boundary_rank(c: &ChainComplex, i: usize, reduced: bool) -> usize {
    match i {
        0 if reduced => usize::from(c.num_cells(0) > 0),
        0 => 0,
        i if i > c.top_dim() => 0,
        i => rank(c.boundary(i).expect("degree within range")),
    }
}

/// Rank of H_i over ℚ, skipping torsion.
pub fn betti_number(c: &ChainComplex, i: usize, reduced: bool) -> Result<usize> {
    check_dim(c, i)?;
    Ok(c.num_cells(i) - boundary_rank(c, i, reduced) - boundary_rank(c, i + 1, reduced))
}

pub fn homology(c: &ChainComplex, i: usize, reduced: bool) -> Result<HomologyResult> {
    check_dim(c, i)?;
    let incoming = if i < c.top_dim() {
        invariant_factors(c.boundary(i + 1).expect("degree within range"))
    } else {
        Vec::new()
    };
    let outgoing = boundary_rank(c, i, reduced);
    let betti = c.num_cells(i) - outgoing - incoming.len();
    let torsion = incoming.into_iter().filter(|x| !x.is_one()).collect();
    Ok(HomologyResult {
        dim: i,
        betti,
        torsion,
    })
}

/// Homology in every dimension `0..=top_dim`.
pub fn betti_vector(c: &ChainComplex, reduced: bool) -> Vec<HomologyResult> {
    (0..=c.top_dim())
        .map(|i| homology(c, i, reduced).expect("dimension in range"))
        .collect()
}

fn check_dim(c: &ChainComplex, i: usize) -> Result<()> {
    if i > c.top_dim() {
        return Err(Error::DimensionOutOfRange {
            got: i,
            max: c.top_dim(),
        });
    }
    Ok(())
}
