//! Exact integer computations on cubical and cross-polytope chain complexes.
//!
//! The crate builds the `n`-cube, the `n`-dimensional cross-polytope and
//! piles of cubes as cellular chain complexes with integer boundary maps,
//! computes their homology by Smith normal form, finds and certifies
//! cellular spanning trees, and checks a family of counting identities
//! around the no-`k`-equal space of `ℝ^n`.
//!
//! Everything is exact. Ranks are taken over `ℚ` with fraction-free
//! elimination and torsion comes from invariant factors over `ℤ`.
//!
//! ```
//! use kequal::{build_tree, hypercube, TreeOrder};
//!
//! let cube = hypercube(4).unwrap();
//! let tree = build_tree(&cube.skeleton(3).unwrap(), TreeOrder::Lexicographic).unwrap();
//! assert_eq!(tree.len(), 7);
//! ```

pub mod builders;
pub mod comb;
pub mod complex;
pub mod error;
pub mod formulas;
pub mod homology;
pub mod io;
mod json;
pub mod linalg;
pub mod matrix;
pub mod trees;
pub mod verify;

pub use builders::{
    cross_polytope, cube_boundary, dual_cell, dual_cell_inverse, hypercube, pile_face_count,
    pile_of_cubes, CrossFace, CrossSymbol, CubeFace, CubeSymbol, PileCell, PileEntry,
};
pub use comb::{
    comb_to_pile, detect_k_dependence, random_generic_comb, verify_comb_theorem, CombConfig,
    CombReport, DependencePair, DependenceWitness,
};
pub use complex::{Cell, CellSpec, ChainComplex, FVector, ValidationReport, Violation};
pub use error::{Error, Result};
pub use formulas::{
    bw_betti, equinumerous_quantities, pile_chi_identity, resolution_added_cell_dim,
    tree_size_closed_form, EquinumerousReport, PileChiIdentity, ResolutionDim,
};
pub use homology::{betti_number, betti_vector, homology, HomologyResult};
pub use io::{complex_from_file, complex_from_json, complex_to_file, complex_to_json};
pub use linalg::{
    bareiss_rank, invariant_factors, rank, smith_normal_form, IncrementalRank, SnfResult,
};
pub use matrix::SparseIntMatrix;
pub use trees::{
    build_tree, check_tree, dual_tree, dual_tree_inverse, DualTree, TreeCertificate, TreeOrder,
};
pub use verify::{sweep, verify_theorem1, Status, Theorem1Report, VerifyOptions};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/builders.md")]
    mod builders {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/identities.md")]
    mod identities {}
    #[doc = include_str!("../../../book/src/combs.md")]
    mod combs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
