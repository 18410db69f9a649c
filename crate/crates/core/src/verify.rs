//! End-to-end checks of the cube identity: one spanning-tree size, computed
//! five independent ways, for each `(n, k)`.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::builders::{cross_polytope, hypercube};
use crate::error::{Error, Result};
use crate::formulas::{bw_betti, tree_size_closed_form};
use crate::homology::betti_number;
use crate::json;
use crate::trees::{build_tree, TreeOrder};

pub const DEFAULT_MAX_CELLS: usize = 200_000;
pub const DEFAULT_MAX_TIME: Duration = Duration::from_secs(600);

/// Environment variable holding the sweep worker count.
pub const WORKERS_ENV: &str = "KEQUAL_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest complex (total cell count) a single check may build.
    pub max_cells: usize,
    /// Wall-clock budget per `(n, k)`, checked between quantities.
    pub max_time: Duration,
    /// Record elapsed time in reports. Off by default so that output is
    /// reproducible byte for byte.
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_cells: DEFAULT_MAX_CELLS,
            max_time: DEFAULT_MAX_TIME,
            timings: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "mismatch")]
    Mismatch,
    #[serde(rename = "skipped: cap")]
    SkippedCap,
}

/// Column order is the CSV header: `n,k,status,q_tree,q_formula,q_skel,
/// q_dual,q_bw,all_equal,elapsed_ms`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub n: usize,
    pub k: usize,
    pub status: Status,
    /// Greedy spanning tree size on the cube's `k`-skeleton.
    pub q_tree: Option<usize>,
    #[serde(serialize_with = "json::opt_uint")]
    pub q_formula: Option<BigUint>,
    /// Reduced `β_{k-1}` of the cube's `(k-1)`-skeleton.
    pub q_skel: Option<usize>,
    /// Reduced `β_{n-k-1}` of the cross-polytope's `(n-k-1)`-skeleton; not
    /// defined for `k = n`.
    pub q_dual: Option<usize>,
    #[serde(serialize_with = "json::opt_uint")]
    pub q_bw: Option<BigUint>,
    pub all_equal: bool,
    pub elapsed_ms: Option<u64>,
}

pub const THEOREM1_CSV_HEADER: &str =
    "n,k,status,q_tree,q_formula,q_skel,q_dual,q_bw,all_equal,elapsed_ms";

impl Theorem1Report {
    fn present(&self) -> Vec<BigUint> {
        let computed = [self.q_tree, self.q_skel, self.q_dual];
        computed
            .iter()
            .flatten()
            .map(|&x| BigUint::from(x))
            .chain(self.q_formula.iter().cloned())
            .chain(self.q_bw.iter().cloned())
            .collect()
    }

    /// The common value when every quantity is present and equal.
    pub fn value(&self) -> Option<BigUint> {
        (self.status == Status::Ok)
            .then(|| self.q_formula.clone())
            .flatten()
    }
}

/// Computes the five quantities for one `(n, k)` with `3 <= k <= n`.
pub fn verify_theorem1(n: usize, k: usize, opts: &VerifyOptions) -> Result<Theorem1Report> {
    if k < 3 || k > n {
        return Err(Error::InvalidParameter(format!(
            "need 3 <= k <= n, got n={n}, k={k}"
        )));
    }
    let start = Instant::now();
    let mut report = Theorem1Report {
        n,
        k,
        status: Status::Ok,
        q_tree: None,
        q_formula: Some(tree_size_closed_form(n, k)?),
        q_skel: None,
        q_dual: None,
        q_bw: Some(bw_betti(n, k)?),
        all_equal: false,
        elapsed_ms: None,
    };

    let cells = 3usize.checked_pow(n as u32);
    let within_cap = cells.is_some_and(|c| c <= opts.max_cells);
    let mut capped = !within_cap;
    if within_cap {
        let out_of_time = || start.elapsed() > opts.max_time;
        let cube = hypercube(n)?;
        report.q_tree = Some(build_tree(&cube.skeleton(k)?, TreeOrder::Lexicographic)?.len());
        if !out_of_time() {
            report.q_skel = Some(betti_number(&cube.skeleton(k - 1)?, k - 1, true)?);
        }
        if k < n && !out_of_time() {
            let cross = cross_polytope(n)?.skeleton(n - k - 1)?;
            report.q_dual = Some(betti_number(&cross, n - k - 1, true)?);
        }
        capped = report.q_skel.is_none() || (k < n && report.q_dual.is_none());
    }

    let present = report.present();
    report.all_equal = present.windows(2).all(|w| w[0] == w[1]);
    report.status = match (capped, report.all_equal) {
        (true, _) => Status::SkippedCap,
        (false, true) => Status::Ok,
        (false, false) => Status::Mismatch,
    };
    if opts.timings {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// Worker count from [`WORKERS_ENV`], defaulting to the available
/// parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from))
}

/// One report per `k_min.max(3) <= k <= n <= n_max`, ordered by `(n, k)`.
pub fn sweep(
    n_max: usize,
    k_min: usize,
    opts: &VerifyOptions,
    workers: usize,
) -> Result<Vec<Theorem1Report>> {
    if n_max < 3 {
        return Err(Error::InvalidParameter(format!(
            "need n_max >= 3, got {n_max}"
        )));
    }
    let cells: Vec<(usize, usize)> = (3..=n_max)
        .flat_map(|n| (k_min.max(3)..=n).map(move |k| (n, k)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    pool.install(|| {
        cells
            .par_iter()
            .map(|&(n, k)| verify_theorem1(n, k, opts))
            .collect()
    })
}
