//! JSON interchange format for complexes.
//!
//! ```json
//! { "top_dim": 1,
//!   "cells": [ { "id": "a", "dim": 0, "label": "a", "boundary": [] },
//!              { "id": "e", "dim": 1, "label": "e", "boundary": [["a", -1], ["b", 1]] } ] }
//! ```
//!
//! Coefficients beyond 2^53 in magnitude are written as decimal strings.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{Cell, CellSpec, ChainComplex};
use crate::error::{Error, Result};
use crate::json;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    top_dim: usize,
    cells: Vec<CellRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellRecord {
    id: String,
    dim: usize,
    label: String,
    boundary: Vec<Term>,
}

struct Term(String, BigInt);

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coef<'a>(&'a BigInt);
        impl Serialize for Coef<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                json::write_int(self.0, s)
            }
        }
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.0)?;
        t.serialize_element(&Coef(&self.1))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Coef(#[serde(deserialize_with = "json::read_int")] BigInt);
        let (id, Coef(c)) = <(String, Coef)>::deserialize(d)?;
        Ok(Term(id, c))
    }
}

pub fn complex_to_json(c: &ChainComplex) -> String {
    let mut records = Vec::with_capacity(c.total_cells());
    for dim in 0..=c.top_dim() {
        for (pos, cell) in c.cells(dim).iter().enumerate() {
            let boundary = match c.boundary(dim) {
                Some(m) => m
                    .column(pos)
                    .iter()
                    .map(|(r, v)| Term(c.cell(dim - 1, *r).id.clone(), v.clone()))
                    .collect(),
                None => Vec::new(),
            };
            records.push(CellRecord {
                id: cell.id.clone(),
                dim,
                label: cell.label.clone(),
                boundary,
            });
        }
    }
    let file = ComplexFile {
        top_dim: c.top_dim(),
        cells: records,
    };
    let mut out = serde_json::to_string_pretty(&file).expect("complex serializes");
    out.push('\n');
    out
}

pub fn complex_from_json(text: &str) -> Result<ChainComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let dims: HashMap<&str, usize> = file.cells.iter().map(|c| (c.id.as_str(), c.dim)).collect();
    for (i, rec) in file.cells.iter().enumerate() {
        for (j, Term(face, _)) in rec.boundary.iter().enumerate() {
            let problem = match dims.get(face.as_str()) {
                None => Some(format!("references unknown cell `{face}`")),
                Some(&d) if d + 1 != rec.dim => Some(format!(
                    "cell `{face}` has dimension {d}, expected {}",
                    rec.dim.saturating_sub(1)
                )),
                _ => None,
            };
            if let Some(message) = problem {
                return Err(Error::Schema {
                    field: format!("cells[{i}].boundary[{j}]"),
                    message,
                });
            }
        }
    }

    let specs = file
        .cells
        .into_iter()
        .map(|r| CellSpec {
            cell: Cell::new(r.id, r.dim, r.label),
            boundary: r.boundary.into_iter().map(|Term(id, c)| (id, c)).collect(),
        })
        .collect();
    ChainComplex::from_cells(file.top_dim, specs)
}

pub fn complex_to_file(c: &ChainComplex, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, complex_to_json(c))?;
    Ok(())
}

pub fn complex_from_file(path: impl AsRef<Path>) -> Result<ChainComplex> {
    complex_from_json(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::hypercube;

    #[test]
    fn round_trip_hypercube() {
        let c = hypercube(2).unwrap();
        let text = complex_to_json(&c);
        let back = complex_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(complex_to_json(&back), text);
    }

    #[test]
    fn unknown_boundary_reference_is_a_parse_error() {
        let text = r#"{"top_dim": 1, "cells": [
            {"id": "a", "dim": 0, "label": "a", "boundary": []},
            {"id": "e", "dim": 1, "label": "e", "boundary": [["a", 1], ["b", -1]]}
        ]}"#;
        let err = complex_from_json(text).unwrap_err();
        assert!(matches!(err, Error::Schema { .. }));
        assert!(err.to_string().contains("cells[1].boundary[1]"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = complex_from_json("{\"top_dim\": 1,\n \"cells\": [ }").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn big_coefficients_use_strings() {
        let text = r#"{"top_dim": 1, "cells": [
            {"id": "a", "dim": 0, "label": "a", "boundary": []},
            {"id": "e", "dim": 1, "label": "e", "boundary": [["a", "123456789012345678901234567890"]]}
        ]}"#;
        let c = complex_from_json(text).unwrap();
        let v: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(c.boundary(1).unwrap().get(0, 0), v);
        assert!(complex_to_json(&c).contains("\"123456789012345678901234567890\""));
    }
}
