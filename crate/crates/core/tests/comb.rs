mod common;

use kequal::{
    comb_to_pile, detect_k_dependence, pile_chi_identity, random_generic_comb, verify_comb_theorem,
    CombConfig, Error,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn config(sets: &[Vec<i64>], k: usize) -> CombConfig {
    CombConfig::new(
        sets.iter()
            .map(|s| s.iter().map(|&x| rat(x)).collect())
            .collect(),
        k,
    )
    .unwrap()
}

/// Tries every `k`-subset of axes and every choice of one ordered pair per
/// axis.
fn brute_force_dependent(sets: &[Vec<i64>], k: usize) -> bool {
    let n = sets.len();
    let diffs: Vec<Vec<i64>> = sets
        .iter()
        .map(|s| {
            s.iter()
                .flat_map(|a| s.iter().map(move |b| a - b))
                .filter(|&d| d != 0)
                .collect()
        })
        .collect();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .any(|mask| {
            let axes: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            diffs[axes[0]]
                .iter()
                .any(|d| axes[1..].iter().all(|&a| diffs[a].contains(d)))
        })
}

fn small_sets() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::btree_set(-6i64..=6, 1..=3), 2..=5)
        .prop_map(|v| v.into_iter().map(|s| s.into_iter().collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn detector_agrees_with_brute_force(sets in small_sets(), k in 2usize..=3) {
        prop_assume!(k <= sets.len());
        let cfg = config(&sets, k);
        let found = detect_k_dependence(&cfg);
        prop_assert_eq!(found.is_some(), brute_force_dependent(&sets, k));
        if let Some(w) = found {
            prop_assert!(w.validates(&cfg));
        }
    }

    #[test]
    fn translating_an_axis_changes_nothing(sets in small_sets(), shift in -50i64..=50, axis in 0usize..5) {
        prop_assume!(sets.len() >= 3);
        let axis = axis % sets.len();
        let mut moved = sets.clone();
        for x in &mut moved[axis] {
            *x += shift;
        }
        let a = detect_k_dependence(&config(&sets, 3)).map(|w| w.difference);
        let b = detect_k_dependence(&config(&moved, 3)).map(|w| w.difference);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn relabelling_axes_keeps_the_value(seed in 0u64..1000) {
        let cfg = random_generic_comb(&[1, 2, 3], 3, seed).unwrap();
        let mut sets = cfg.sets().to_vec();
        sets.rotate_left(1);
        let rotated = CombConfig::new(sets, 3).unwrap();
        prop_assert_eq!(
            verify_comb_theorem(&cfg).unwrap().value,
            verify_comb_theorem(&rotated).unwrap().value
        );
    }
}

#[test]
fn generic_combs_agree_three_ways() {
    let shapes: Vec<Vec<usize>> = common::pile_shapes(5, 200)
        .into_iter()
        .filter(|s| s.len() >= 3)
        .collect();
    for (seed, sizes) in shapes.iter().enumerate() {
        let cfg = random_generic_comb(sizes, 3, seed as u64).unwrap();
        assert_eq!(&comb_to_pile(&cfg), sizes);
        let r = verify_comb_theorem(&cfg).unwrap();
        assert!(r.is_consistent(), "{r:?}");
        let oracle = pile_chi_identity(sizes, 3).unwrap().rhs - 1;
        assert_eq!(BigInt::from(r.value.unwrap()), oracle);
    }
}

#[test]
fn singleton_offsets_reduce_to_the_cube() {
    for n in 3..=6 {
        let cfg = CombConfig::parse(&vec!["0"; n].join(";"), 3).unwrap();
        let r = verify_comb_theorem(&cfg).unwrap();
        let expected = kequal::bw_betti(n, 3).unwrap();
        assert_eq!(BigInt::from(r.value.unwrap()), BigInt::from(expected));
    }
}

#[test]
fn dependent_configurations_are_rejected() {
    let cfg = CombConfig::parse("0,1;5,6;2,3,9", 3).unwrap();
    match verify_comb_theorem(&cfg) {
        Err(Error::Dependent(w)) => {
            assert!(w.validates(&cfg));
            assert_eq!(w.difference, rat(1));
        }
        other => panic!("expected a dependence, got {other:?}"),
    }
    assert!(verify_comb_theorem(&CombConfig::parse("0;1", 2).unwrap()).is_err());
}

#[test]
fn fractional_offsets() {
    let cfg = CombConfig::parse("0,1/2;0,1/3;0,0.25", 3).unwrap();
    assert!(detect_k_dependence(&cfg).is_none());
    let r = verify_comb_theorem(&cfg).unwrap();
    assert_eq!(r.sizes, [2, 2, 2]);
    let cfg = CombConfig::parse("0,1/2;0,0.5;1,1.5", 3).unwrap();
    assert!(detect_k_dependence(&cfg).is_some());
}

#[test]
fn sampling_is_seeded() {
    let a = random_generic_comb(&[2, 2, 2, 2], 3, 9).unwrap();
    assert_eq!(a, random_generic_comb(&[2, 2, 2, 2], 3, 9).unwrap());
    assert_ne!(a, random_generic_comb(&[2, 2, 2, 2], 3, 10).unwrap());
    assert!(random_generic_comb(&[2, 0, 2], 3, 0).is_err());
}
