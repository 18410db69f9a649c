//! Comb `k`-equal arrangements: the finite offset sets `A_1, …, A_n`, their
//! genericity, and the pile of cubes they determine.
//!
//! Only the cardinalities `|A_j|` reach the topology; the values matter
//! solely through the genericity hypothesis (no `k`-dependence).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::builders::pile_of_cubes;
use crate::error::{Error, Result};
use crate::formulas::pile_chi_identity;
use crate::homology::betti_number;
use crate::json;
use crate::trees::{build_tree, TreeOrder};

/// Offset sets for a comb arrangement, each kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombConfig {
    sets: Vec<Vec<BigRational>>,
    k: usize,
}

impl CombConfig {
    pub fn new(sets: Vec<Vec<BigRational>>, k: usize) -> Result<Self> {
        if k < 2 || sets.len() < k {
            return Err(Error::InvalidParameter(format!(
                "need 2 <= k <= n, got n={}, k={k}",
                sets.len()
            )));
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for (j, mut set) in sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "offset set {} is empty",
                    j + 1
                )));
            }
            set.sort();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "offset set {} has repeated values",
                    j + 1
                )));
            }
            sorted.push(set);
        }
        Ok(Self { sets: sorted, k })
    }

    /// Parses `"0,1;0,1/2;3"`: axes separated by `;`, values by `,`. Values
    /// are integers, fractions `p/q` or decimals.
    pub fn parse(spec: &str, k: usize) -> Result<Self> {
        let sets = spec
            .split(';')
            .map(|axis| {
                axis.split(',')
                    .map(|tok| parse_rational(tok.trim()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sets, k)
    }

    pub fn sets(&self) -> &[Vec<BigRational>] {
        &self.sets
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    /// The same offsets with a different `k`.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(self.sets.clone(), k)
    }
}

impl fmt::Display for CombConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axes: Vec<String> = self
            .sets
            .iter()
            .map(|s| {
                s.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        f.write_str(&axes.join(";"))
    }
}

fn parse_rational(tok: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("`{tok}` is not a rational number"));
    if let Some((int, frac)) = tok.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let numer: BigInt = digits.parse().map_err(|_| bad())?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = BigRational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    tok.parse().map_err(|_| bad())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependencePair {
    /// Zero-based axis index.
    pub axis: usize,
    #[serde(serialize_with = "json::rational")]
    pub x: BigRational,
    #[serde(serialize_with = "json::rational")]
    pub x_prime: BigRational,
}

/// `k` pairs on distinct axes sharing the nonzero difference `x − x′`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependenceWitness {
    #[serde(serialize_with = "json::rational")]
    pub difference: BigRational,
    pub pairs: Vec<DependencePair>,
}

impl DependenceWitness {
    /// Re-checks the witness against the configuration it came from.
    pub fn validates(&self, cfg: &CombConfig) -> bool {
        let mut axes: Vec<usize> = self.pairs.iter().map(|p| p.axis).collect();
        axes.sort_unstable();
        axes.dedup();
        !self.difference.is_zero()
            && self.pairs.len() == cfg.k()
            && axes.len() == self.pairs.len()
            && self.pairs.iter().all(|p| {
                p.axis < cfg.n()
                    && cfg.sets[p.axis].contains(&p.x)
                    && cfg.sets[p.axis].contains(&p.x_prime)
                    && &p.x - &p.x_prime == self.difference
            })
    }
}

/// Finds a nonzero difference realized within at least `k` distinct sets.
///
/// Pairs are unordered, so each is oriented to make its difference positive;
/// the smallest qualifying difference is reported.
pub fn detect_k_dependence(cfg: &CombConfig) -> Option<DependenceWitness> {
    let mut by_difference: BTreeMap<BigRational, Vec<DependencePair>> = BTreeMap::new();
    for (axis, set) in cfg.sets.iter().enumerate() {
        let mut local: BTreeMap<BigRational, DependencePair> = BTreeMap::new();
        for (i, lo) in set.iter().enumerate() {
            for hi in &set[i + 1..] {
                local.entry(hi - lo).or_insert_with(|| DependencePair {
                    axis,
                    x: hi.clone(),
                    x_prime: lo.clone(),
                });
            }
        }
        for (d, pair) in local {
            by_difference.entry(d).or_default().push(pair);
        }
    }
    by_difference
        .into_iter()
        .find(|(_, pairs)| pairs.len() >= cfg.k())
        .map(|(difference, mut pairs)| {
            pairs.truncate(cfg.k());
            DependenceWitness { difference, pairs }
        })
}

const MAX_ATTEMPTS: usize = 1000;

/// Draws offset sets of the given sizes until none has a `k`-dependence.
/// Deterministic in `seed`.
pub fn random_generic_comb(sizes: &[usize], k: usize, seed: u64) -> Result<CombConfig> {
    if sizes.contains(&0) {
        return Err(Error::InvalidParameter(
            "offset set sizes must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let sets = sizes
            .iter()
            .map(|&size| {
                let mut set: Vec<BigRational> = Vec::with_capacity(size);
                while set.len() < size {
                    let numer = rng.gen_range(-1_000_000i64..=1_000_000);
                    let denom = rng.gen_range(1i64..=997);
                    let x = BigRational::new(numer.into(), denom.into());
                    if !set.contains(&x) {
                        set.push(x);
                    }
                }
                set
            })
            .collect();
        let cfg = CombConfig::new(sets, k)?;
        if detect_k_dependence(&cfg).is_none() {
            return Ok(cfg);
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// Pile dimensions `N_j = |A_j|`.
pub fn comb_to_pile(cfg: &CombConfig) -> Vec<usize> {
    cfg.sets.iter().map(Vec::len).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombReport {
    pub sets: String,
    pub sizes: Vec<usize>,
    pub k: usize,
    /// Facets of a spanning tree of the pile's `k`-skeleton.
    pub tree_size: usize,
    /// Reduced `β_{k-1}` of the pile's `(k-1)`-skeleton.
    pub skeleton_betti: usize,
    /// `β` from the closed-form Euler characteristic.
    #[serde(serialize_with = "json::int")]
    pub corollary_beta: BigInt,
    /// The common value, asserted to be the rank of `H_{k-2}` of the comb
    /// complement; absent when the three routes disagree.
    pub value: Option<usize>,
    pub all_equal: bool,
}

/// Computes the comb Betti number three ways on the associated pile.
pub fn verify_comb_theorem(cfg: &CombConfig) -> Result<CombReport> {
    let k = cfg.k();
    if k < 3 {
        return Err(Error::InvalidParameter(format!("need k >= 3, got {k}")));
    }
    if let Some(w) = detect_k_dependence(cfg) {
        return Err(Error::Dependent(Box::new(w)));
    }
    let sizes = comb_to_pile(cfg);
    let pile = pile_of_cubes(&sizes)?;
    let tree_size = build_tree(&pile.skeleton(k)?, TreeOrder::Lexicographic)?.len();
    let skeleton_betti = betti_number(&pile.skeleton(k - 1)?, k - 1, true)?;
    let corollary_beta = pile_chi_identity(&sizes, k)?.beta;

    let all_equal = tree_size == skeleton_betti && corollary_beta == BigInt::from(tree_size);
    Ok(CombReport {
        sets: cfg.to_string(),
        sizes,
        k,
        tree_size,
        skeleton_betti,
        value: all_equal.then_some(tree_size),
        corollary_beta,
        all_equal,
    })
}

impl CombReport {
    pub fn is_consistent(&self) -> bool {
        self.all_equal && !self.corollary_beta.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(spec: &str, k: usize) -> CombConfig {
        CombConfig::parse(spec, k).unwrap()
    }

    #[test]
    fn detects_shared_difference() {
        let c = cfg("0,1;0,1;5", 2);
        let w = detect_k_dependence(&c).unwrap();
        assert_eq!(w.difference, BigRational::from_integer(1.into()));
        assert_eq!(w.pairs.iter().map(|p| p.axis).collect::<Vec<_>>(), [0, 1]);
        assert!(w.validates(&c));
    }

    #[test]
    fn distinct_differences_are_generic() {
        assert!(detect_k_dependence(&cfg("0,1;0,2;0,4", 2)).is_none());
        assert!(detect_k_dependence(&cfg("0;3;7;1", 3)).is_none());
    }

    #[test]
    fn pile_sizes_are_cardinalities() {
        assert_eq!(comb_to_pile(&cfg("0;0;0", 3)), [1, 1, 1]);
        assert_eq!(comb_to_pile(&cfg("0,1;0,2;0,4", 3)), [2, 2, 2]);
        assert_eq!(comb_to_pile(&cfg("0;1,2;0,3,7", 3)), [1, 2, 3]);
    }

    #[test]
    fn parsing() {
        let c = cfg("0.5, 1/3; -2", 2);
        assert_eq!(c.to_string(), "1/3,1/2;-2");
        assert!(CombConfig::parse("1,1;2", 2).is_err());
        assert!(CombConfig::parse("1;;2", 2).is_err());
        assert!(CombConfig::parse("x;2", 2).is_err());
        assert!(CombConfig::parse("1;2", 3).is_err());
    }

    #[test]
    fn random_configs_are_generic_and_seeded() {
        let a = random_generic_comb(&[3, 3, 3], 3, 11).unwrap();
        let b = random_generic_comb(&[3, 3, 3], 3, 11).unwrap();
        assert_eq!(a, b);
        assert!(detect_k_dependence(&a).is_none());
        assert_eq!(comb_to_pile(&a), [3, 3, 3]);
        let c = random_generic_comb(&[1, 1, 1, 1], 3, 0).unwrap();
        assert_eq!(comb_to_pile(&c), [1, 1, 1, 1]);
    }

    #[test]
    fn singleton_comb_reproduces_cube_value() {
        let r = verify_comb_theorem(&cfg("0;0;0;0", 3)).unwrap();
        assert_eq!(r.value, Some(7));
    }

    #[test]
    fn dependent_config_is_rejected_with_witness() {
        let c = cfg("0,1;0,1;0,1", 3);
        match verify_comb_theorem(&c) {
            Err(Error::Dependent(w)) => assert!(w.validates(&c)),
            other => panic!("expected dependence, got {other:?}"),
        }
    }
}
