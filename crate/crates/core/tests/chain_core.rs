mod common;

use std::collections::BTreeSet;

use kequal::{
    betti_vector, complex_from_json, complex_to_file, complex_to_json, cross_polytope, hypercube,
    pile_of_cubes, Cell, CellSpec, ChainComplex, Error, SparseIntMatrix, Violation,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn vertices(mask: u32) -> Vec<u32> {
    (0..32).filter(|v| mask >> v & 1 == 1).collect()
}

fn name(mask: u32) -> String {
    vertices(mask).iter().map(|v| v.to_string()).collect()
}

/// Simplicial closure of the given facets, oriented by vertex order.
fn simplicial(facets: &[u32]) -> ChainComplex {
    let mut faces = BTreeSet::new();
    for &f in facets {
        let mut sub = f;
        while sub != 0 {
            faces.insert(sub);
            sub = (sub - 1) & f;
        }
    }
    let top = faces
        .iter()
        .map(|m| m.count_ones() as usize - 1)
        .max()
        .unwrap();
    let specs = faces
        .iter()
        .map(|&m| {
            let vs = vertices(m);
            let boundary = if vs.len() == 1 {
                Vec::new()
            } else {
                vs.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        (
                            name(m & !(1 << v)),
                            BigInt::from(if j % 2 == 0 { 1 } else { -1 }),
                        )
                    })
                    .collect()
            };
            CellSpec {
                cell: Cell::new(name(m), vs.len() - 1, name(m)),
                boundary,
            }
        })
        .collect();
    ChainComplex::from_cells(top, specs).unwrap()
}

#[test]
fn builders_satisfy_boundary_of_boundary() {
    for n in 1..=6 {
        assert!(hypercube(n).unwrap().validate().is_valid(), "cube {n}");
        assert!(
            cross_polytope(n).unwrap().validate().is_valid(),
            "cross {n}"
        );
    }
    for sizes in common::pile_shapes(3, 60) {
        assert!(
            pile_of_cubes(&sizes).unwrap().validate().is_valid(),
            "{sizes:?}"
        );
    }
    assert!(common::rp2().validate().is_valid());
}

#[test]
fn broken_boundary_is_reported() {
    // ∂_1 of a triangle, then ∂_2 with one sign flipped.
    let c = hypercube(2).unwrap();
    let cells: Vec<Vec<Cell>> = (0..=2).map(|d| c.cells(d).to_vec()).collect();
    let d1 = c.boundary(1).unwrap().clone();
    let d2 = c.boundary(2).unwrap();
    let mut entries: Vec<(usize, usize, BigInt)> = d2
        .entries()
        .map(|(r, col, v)| (r, col, v.clone()))
        .collect();
    entries[0].2 = -entries[0].2.clone();
    let d2 = SparseIntMatrix::from_triplets(d2.rows(), d2.cols(), entries);
    let bad = ChainComplex::from_parts(cells, vec![d1, d2]);
    let report = bad.validate();
    assert!(!report.is_valid());
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, Violation::BoundaryOfBoundary { degree: 2, .. })));
}

#[test]
fn json_round_trip_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let complexes = [
        hypercube(3).unwrap(),
        cross_polytope(4).unwrap(),
        pile_of_cubes(&[2, 1, 3]).unwrap(),
        common::rp2(),
    ];
    for c in complexes {
        let text = complex_to_json(&c);
        let back = complex_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(complex_to_json(&back), text);
        let path = dir.path().join("c.json");
        complex_to_file(&c, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    }
}

#[test]
fn fixture_file_is_canonical() {
    let raw = std::fs::read_to_string(common::fixture("rp2.json")).unwrap();
    let c = complex_from_json(&raw).unwrap();
    assert_eq!(c.f_vector().0, [6, 15, 10]);
    assert_eq!(complex_from_json(&complex_to_json(&c)).unwrap(), c);
}

#[test]
fn malformed_json_reports_position() {
    match complex_from_json("{\n  \"top_dim\": 1,\n  \"cells\": [ oops ]\n}") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected a parse error, got {other:?}"),
    }
    let dangling = r#"{"top_dim": 1, "cells": [
        {"id": "a", "dim": 0, "label": "a", "boundary": []},
        {"id": "e", "dim": 1, "label": "e", "boundary": [["a", -1], ["b", 1]]}]}"#;
    match complex_from_json(dangling) {
        Err(Error::Schema { field, .. }) => assert_eq!(field, "cells[1].boundary[1]"),
        other => panic!("expected a schema error, got {other:?}"),
    }
    let extra = r#"{"top_dim": 0, "cells": [], "colour": 3}"#;
    assert!(matches!(complex_from_json(extra), Err(Error::Parse { .. })));
}

#[test]
fn big_coefficients_survive_as_strings() {
    let text = r#"{"top_dim": 1, "cells": [
        {"id": "a", "dim": 0, "label": "a", "boundary": []},
        {"id": "e", "dim": 1, "label": "e", "boundary": [["a", "123456789012345678901234567890"]]}]}"#;
    let c = complex_from_json(text).unwrap();
    let big: BigInt = "123456789012345678901234567890".parse().unwrap();
    assert_eq!(c.boundary(1).unwrap().get(0, 0), big);
    assert!(complex_to_json(&c).contains("\"123456789012345678901234567890\""));
}

#[test]
fn skeleton_and_facet_subcomplex() {
    let c = hypercube(3).unwrap();
    let s = c.skeleton(1).unwrap();
    assert_eq!(s.f_vector().0, [8, 12]);
    assert!(c.skeleton(4).is_err());
    let sq = cube_faces(&c, &["**0", "**1"]);
    assert_eq!(sq.f_vector().0, [8, 12, 2]);
    assert!(c.facet_subcomplex(&["0**"]).is_err());
}

fn cube_faces(c: &ChainComplex, labels: &[&str]) -> ChainComplex {
    c.skeleton(2).unwrap().facet_subcomplex(labels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn random_simplicial_complexes(facets in prop::collection::vec(1u32..64, 1..7)) {
        let c = simplicial(&facets);
        prop_assert!(c.validate().is_valid());
        // Euler–Poincaré: counted cells against ranks of homology.
        let alternating: i64 = betti_vector(&c, false)
            .iter()
            .map(|h| if h.dim % 2 == 0 { h.betti as i64 } else { -(h.betti as i64) })
            .sum();
        prop_assert_eq!(alternating, c.euler_characteristic());
        prop_assert_eq!(complex_from_json(&complex_to_json(&c)).unwrap(), c);
    }
}
