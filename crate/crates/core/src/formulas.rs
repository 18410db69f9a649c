//! Closed forms and the integer identities linking them to computed
//! quantities.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::builders::{cross_polytope, hypercube, pile_of_cubes};
use crate::error::{Error, Result};
use crate::homology::betti_number;
use crate::json;
use crate::trees::{build_tree, TreeOrder};

fn choose(n: usize, k: usize) -> BigUint {
    binomial(BigUint::from(n), BigUint::from(k))
}

/// `Σ_{i=k}^{n} C(n,i)·C(i-1,k-1)`.
fn binomial_sum(n: usize, k: usize) -> BigUint {
    (k..=n).map(|i| choose(n, i) * choose(i - 1, k - 1)).sum()
}

/// Rank of `H^{k-2}` of the no-`k`-equal space of `n` reals, `k ≥ 3`.
pub fn bw_betti(n: usize, k: usize) -> Result<BigUint> {
    if k < 3 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 3 <= k <= n, got n={n}, k={k}"
        )));
    }
    Ok(binomial_sum(n, k))
}

/// Number of facets of a `k`-dimensional spanning tree of the `k`-skeleton of
/// the `n`-cube.
pub fn tree_size_closed_form(n: usize, k: usize) -> Result<BigUint> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    Ok(binomial_sum(n, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquinumerousReport {
    pub n: usize,
    pub k: usize,
    /// Tree size of the cube's `k`-skeleton.
    pub q1: usize,
    /// Tree size of the cross-polytope's `(n-k)`-skeleton.
    pub q2: usize,
    /// `(k-1)`-faces of the cube outside a `(k-1)`-tree.
    pub q3: usize,
    /// `(n-k-1)`-faces of the cross-polytope outside an `(n-k-1)`-tree.
    pub q4: usize,
    /// `C(n,k-1)·2^(n-k+1) − f_{k-1}(T(Cube_{n,k-1}))`.
    #[serde(serialize_with = "json::uint")]
    pub cube_relation: BigUint,
    pub cube_relation_holds: bool,
    pub all_equal: bool,
}

/// Computes the four tree quantities on actual complexes.
pub fn equinumerous_quantities(n: usize, k: usize) -> Result<EquinumerousReport> {
    if k < 1 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k < n, got n={n}, k={k}"
        )));
    }
    let cube = hypercube(n)?;
    let cross = cross_polytope(n)?;
    let tree_size = |c: &crate::ChainComplex, d: usize| -> Result<usize> {
        Ok(build_tree(&c.skeleton(d)?, TreeOrder::Lexicographic)?.len())
    };

    let q1 = tree_size(&cube, k)?;
    let q2 = tree_size(&cross, n - k)?;
    let lower_cube_tree = tree_size(&cube, k - 1)?;
    let q3 = cube.num_cells(k - 1) - lower_cube_tree;
    let q4 = cross.num_cells(n - k - 1) - tree_size(&cross, n - k - 1)?;

    let cube_relation = choose(n, k - 1) * (BigUint::one() << (n - k + 1)) - lower_cube_tree;
    let cube_relation_holds = cube_relation == BigUint::from(q1);
    Ok(EquinumerousReport {
        n,
        k,
        q1,
        q2,
        q3,
        q4,
        cube_relation,
        cube_relation_holds,
        all_equal: q1 == q2 && q2 == q3 && q3 == q4,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PileChiIdentity {
    pub sizes: Vec<usize>,
    pub k: usize,
    /// Euler characteristic of the pile's `(k-1)`-skeleton.
    #[serde(serialize_with = "json::int")]
    pub lhs: BigInt,
    /// `Π(N_j+1) · Σ_{ℓ<k} (−1)^ℓ e_ℓ(N_1/(N_1+1), …)`, exactly.
    #[serde(serialize_with = "json::int")]
    pub rhs: BigInt,
    /// `β` solved from `rhs = 1 + (−1)^(k-1)·β`.
    #[serde(serialize_with = "json::int")]
    pub beta: BigInt,
    /// Reduced `β_{k-1}` of the `(k-1)`-skeleton, by homology.
    pub homology_beta: usize,
    /// For `k ≥ 3`, the implied rank of `H_{k-2}` of the comb complement.
    #[serde(serialize_with = "json::opt_int")]
    pub complement_betti: Option<BigInt>,
    pub holds: bool,
}

/// Evaluates both sides of the pile Euler-characteristic identity.
pub fn pile_chi_identity(sizes: &[usize], k: usize) -> Result<PileChiIdentity> {
    let n = sizes.len();
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let pile = pile_of_cubes(sizes)?;
    let skeleton = pile.skeleton(k - 1)?;
    let lhs = BigInt::from(skeleton.euler_characteristic());

    let ratios: Vec<BigRational> = sizes
        .iter()
        .map(|&s| BigRational::new(s.into(), (s + 1).into()))
        .collect();
    let elementary = elementary_symmetric(&ratios, k - 1);
    let alternating: BigRational = elementary
        .iter()
        .enumerate()
        .map(|(l, e)| if l % 2 == 0 { e.clone() } else { -e.clone() })
        .sum();
    let prefactor: BigInt = sizes.iter().map(|&s| BigInt::from(s + 1)).product();
    let value = BigRational::from_integer(prefactor) * alternating;
    if !value.is_integer() {
        return Err(Error::NonIntegral(value.to_string()));
    }
    let rhs = value.to_integer();

    let sign = if k % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let beta: BigInt = (&rhs - BigInt::one()) * &sign;
    let homology_beta = betti_number(&skeleton, k - 1, true)?;
    let holds = lhs == rhs && !beta.is_negative() && beta == BigInt::from(homology_beta);
    Ok(PileChiIdentity {
        sizes: sizes.to_vec(),
        k,
        lhs,
        rhs,
        complement_betti: (k >= 3).then(|| beta.clone()),
        beta,
        homology_beta,
        holds,
    })
}

/// `e_0, …, e_max` of the given values.
fn elementary_symmetric(xs: &[BigRational], max: usize) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); max + 1];
    e[0] = BigRational::one();
    for x in xs {
        for l in (1..=max).rev() {
            let term = &e[l - 1] * x;
            e[l] += term;
        }
    }
    e
}

/// Dimension count for the cells glued in when resolving `l`-fold
/// intersections of `k`-diagonals in `ℝ^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionDim {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    /// `n − l(k−1) + (l−1)`.
    pub dim: i64,
    /// `⌊n/k⌋`, the largest possible preimage count.
    pub multiplicity_bound: usize,
    /// `l` exceeds the multiplicity bound, so no such cells exist.
    pub vacuous: bool,
    /// `n − k − 2`.
    pub stated_bound: i64,
    pub meets_stated_bound: bool,
    /// `n − k − 1`: cells up to this dimension cannot change `H_{n-k}`.
    pub homology_bound: i64,
    pub meets_homology_bound: bool,
    /// The same count inside the hyperplane `Σx_i = 0`, one lower.
    pub hyperplane_dim: i64,
    pub hyperplane_meets_homology_bound: bool,
}

pub fn resolution_added_cell_dim(n: usize, k: usize, l: usize) -> Result<ResolutionDim> {
    if l < 2 || k < 3 || n < k {
        return Err(Error::InvalidParameter(format!(
            "need l >= 2, k >= 3, n >= k; got n={n}, k={k}, l={l}"
        )));
    }
    let (ni, ki, li) = (n as i64, k as i64, l as i64);
    let dim = ni - li * (ki - 1) + (li - 1);
    let stated_bound = ni - ki - 2;
    let homology_bound = ni - ki - 1;
    let multiplicity_bound = n / k;
    Ok(ResolutionDim {
        n,
        k,
        l,
        dim,
        multiplicity_bound,
        vacuous: l > multiplicity_bound,
        stated_bound,
        meets_stated_bound: dim <= stated_bound,
        homology_bound,
        meets_homology_bound: dim <= homology_bound,
        hyperplane_dim: dim - 1,
        hyperplane_meets_homology_bound: dim - 1 <= homology_bound,
    })
}
