mod common;

use std::collections::HashMap;

use common::binom;
use kequal::{
    betti_number, betti_vector, cross_polytope, cube_boundary, dual_cell, dual_cell_inverse,
    hypercube, pile_face_count, pile_of_cubes, CrossFace, CubeFace, PileCell,
};
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn cube_f_vector_matches_binomial_count() {
    for n in 1..=7u64 {
        let f = hypercube(n as usize).unwrap().f_vector().0;
        let expected: Vec<usize> = (0..=n).map(|i| (binom(n, i) << (n - i)) as usize).collect();
        assert_eq!(f, expected, "n = {n}");
    }
}

#[test]
fn cross_f_vector_matches_binomial_count() {
    for n in 1..=7u64 {
        let f = cross_polytope(n as usize).unwrap().f_vector().0;
        let expected: Vec<usize> = (0..n)
            .map(|i| (binom(n, i + 1) << (i + 1)) as usize)
            .collect();
        assert_eq!(f, expected, "n = {n}");
    }
}

#[test]
fn pile_f_vector_matches_product_count() {
    for sizes in common::pile_shapes(4, 120) {
        let pile = pile_of_cubes(&sizes).unwrap();
        let f = pile.f_vector().0;
        // Brute force: count cells by walking every label.
        let mut counts = vec![0usize; sizes.len() + 1];
        for cell in pile.all_cells() {
            let parsed: PileCell = cell.label.parse().unwrap();
            counts[parsed.dim()] += 1;
        }
        assert_eq!(f, counts);
        for (d, &count) in f.iter().enumerate() {
            assert_eq!(pile_face_count(&sizes, d), BigUint::from(count));
        }
    }
}

#[test]
fn unit_pile_is_the_cube() {
    for n in 1..=5 {
        let pile = pile_of_cubes(&vec![1; n]).unwrap();
        let cube = hypercube(n).unwrap();
        for d in 1..=n {
            assert_eq!(pile.boundary(d), cube.boundary(d));
        }
    }
}

#[test]
fn labels_round_trip() {
    let cube = hypercube(4).unwrap();
    for cell in cube.all_cells() {
        let f: CubeFace = cell.label.parse().unwrap();
        assert_eq!(f.to_string(), cell.label);
        assert_eq!(f.dim(), cell.dim);
    }
    let cross = cross_polytope(4).unwrap();
    for cell in cross.all_cells() {
        let f: CrossFace = cell.label.parse().unwrap();
        assert_eq!(f.to_string(), cell.label);
        assert_eq!(f.dim(), cell.dim);
    }
    assert!("0*2".parse::<CubeFace>().is_err());
    assert!("+x".parse::<CrossFace>().is_err());
    assert!("v2,i9".parse::<PileCell>().is_ok());
    assert!("v2,x1".parse::<PileCell>().is_err());
}

/// `F ⊂ G` in the cube iff `dual(G) ⊂ dual(F)` in the cross-polytope, and the
/// boundary matrices agree up to transposition and sign.
#[test]
fn incidence_transposition() {
    for n in 1..=5 {
        let cube = cube_boundary(n).unwrap();
        let cross = cross_polytope(n).unwrap();
        let cross_pos: HashMap<&str, (usize, usize)> = (0..n)
            .flat_map(|d| {
                cross
                    .cells(d)
                    .iter()
                    .enumerate()
                    .map(move |(p, c)| (c.label.as_str(), (d, p)))
            })
            .collect();
        for i in 1..n {
            let d_cube = cube.boundary(i).unwrap();
            let j = n - i;
            let d_cross = cross.boundary(j).unwrap();
            for (gp, g) in cube.cells(i).iter().enumerate() {
                let gd = dual_cell(&g.label.parse().unwrap()).unwrap().to_string();
                let (gdim, gpos) = cross_pos[gd.as_str()];
                assert_eq!(gdim, n - 1 - i);
                for (fp, f) in cube.cells(i - 1).iter().enumerate() {
                    let face: CubeFace = f.label.parse().unwrap();
                    let fd = dual_cell(&face).unwrap().to_string();
                    let (fdim, fpos) = cross_pos[fd.as_str()];
                    assert_eq!(fdim, n - i);
                    let a = d_cube.get(fp, gp);
                    let b = d_cross.get(gpos, fpos);
                    assert_eq!(
                        a.magnitude(),
                        b.magnitude(),
                        "n={n} {} < {}",
                        f.label,
                        g.label
                    );
                    let incident = face.is_face_of(&g.label.parse().unwrap());
                    assert_eq!(a != 0.into(), incident);
                }
            }
        }
    }
}

#[test]
fn dual_map_is_a_bijection_on_proper_faces() {
    for n in 1..=5 {
        let cube = cube_boundary(n).unwrap();
        let cross = cross_polytope(n).unwrap();
        let mut images: Vec<String> = cube
            .all_cells()
            .map(|c| dual_cell(&c.label.parse().unwrap()).unwrap().to_string())
            .collect();
        images.sort();
        let mut targets: Vec<String> = cross.all_cells().map(|c| c.label.clone()).collect();
        targets.sort();
        assert_eq!(images, targets);
        for c in cube.all_cells() {
            let f: CubeFace = c.label.parse().unwrap();
            assert_eq!(dual_cell_inverse(&dual_cell(&f).unwrap()), f);
        }
    }
    let top: CubeFace = "***".parse().unwrap();
    assert!(dual_cell(&top).is_err());
}

/// Combinatorial Alexander duality between complementary skeleta.
#[test]
fn alexander_duality_of_skeleta() {
    for n in 2..=6 {
        let cube = hypercube(n).unwrap();
        let cross = cross_polytope(n).unwrap();
        for k in 1..n {
            let left = betti_number(&cube.skeleton(k - 1).unwrap(), k - 1, true).unwrap();
            let right = betti_number(&cross.skeleton(n - k - 1).unwrap(), n - k - 1, true).unwrap();
            assert_eq!(left, right, "n={n}, k={k}");
        }
    }
}

/// Skeleta of shellable complexes carry reduced homology only at the top.
#[test]
fn skeleta_are_wedges_of_top_spheres() {
    for n in 1..=5 {
        let complexes = [hypercube(n).unwrap(), cross_polytope(n).unwrap()];
        for c in complexes {
            for k in 0..=c.top_dim() {
                let s = c.skeleton(k).unwrap();
                let h = betti_vector(&s, true);
                for below in &h[..k] {
                    assert!(below.is_zero(), "n={n}, k={k}: {below:?}");
                }
                let top = h[k].betti as i64;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(common::reduced_euler(&s), sign * top);
                assert!(h[k].torsion.is_empty());
            }
        }
    }
}

proptest! {
    #[test]
    fn cube_face_order_agrees_with_subcube_containment(word in "[01*]{1,6}") {
        let f: CubeFace = word.parse().unwrap();
        let top: CubeFace = "*".repeat(f.n()).parse().unwrap();
        prop_assert!(f.is_face_of(&top));
        prop_assert!(f.is_face_of(&f));
        if f.dim() < f.n() {
            let d = dual_cell(&f).unwrap();
            prop_assert_eq!(d.dim() + f.dim(), f.n() - 1);
        }
    }
}
