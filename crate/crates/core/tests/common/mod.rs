#![allow(dead_code)]

use std::path::PathBuf;

use kequal::{complex_from_file, cross_polytope, hypercube, pile_of_cubes, ChainComplex};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn rp2() -> ChainComplex {
    complex_from_file(fixture("rp2.json")).expect("rp2 fixture loads")
}

/// Non-decreasing size tuples of length `1..=max_len` with `Π(N_j+1) <= cap`.
pub fn pile_shapes(max_len: usize, cap: usize) -> Vec<Vec<usize>> {
    fn extend(
        prefix: &mut Vec<usize>,
        prod: usize,
        max_len: usize,
        cap: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        let start = prefix.last().copied().unwrap_or(1);
        for s in start.. {
            if prod * (s + 1) > cap {
                break;
            }
            prefix.push(s);
            extend(prefix, prod * (s + 1), max_len, cap, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_len, cap, &mut out);
    out
}

/// Every complex the suites sweep: skeleta of cubes, cross-polytope
/// boundaries and small piles (all with vanishing reduced homology just
/// below the top), plus the projective plane.
pub fn corpus() -> Vec<(String, ChainComplex)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        let cube = hypercube(n).unwrap();
        for k in 0..=n {
            out.push((format!("cube{n}/{k}"), cube.skeleton(k).unwrap()));
        }
        let cross = cross_polytope(n).unwrap();
        for k in 0..n {
            out.push((format!("cross{n}/{k}"), cross.skeleton(k).unwrap()));
        }
    }
    for sizes in [vec![2, 2], vec![1, 2, 3], vec![3, 4], vec![2, 2, 2]] {
        let pile = pile_of_cubes(&sizes).unwrap();
        for k in 0..=sizes.len() {
            out.push((format!("pile{sizes:?}/{k}"), pile.skeleton(k).unwrap()));
        }
    }
    out.push(("rp2".into(), rp2()));
    out
}

/// Reduced Euler characteristic from cell counts alone.
pub fn reduced_euler(c: &ChainComplex) -> i64 {
    c.euler_characteristic() - 1
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
