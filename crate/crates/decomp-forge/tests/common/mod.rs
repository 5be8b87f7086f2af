//! Shared oracles for the integration tests. Every fixture is rebuilt here
//! from its closed form with plain loops, independent of the relational
//! operators under test.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use decomp_forge::relation::{Attribute, Domain, Relation, TupleId, Val};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn strs(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn bit(b: bool) -> Val {
    Val::Sym(b as u8)
}

fn bits_of(m: u32, n: u32) -> Vec<bool> {
    (0..n).map(|k| m & (1 << (n - 1 - k)) != 0).collect()
}

fn binary_schema(inputs: &[&str], output: &str) -> Vec<Attribute> {
    let mut schema: Vec<Attribute> = inputs
        .iter()
        .map(|n| Attribute::input(Domain::binary(n)))
        .collect();
    schema.push(Attribute::output(Domain::binary(output)));
    schema
}

/// Build the complete truth table of an n-input boolean function with
/// minterm ids.
pub fn table_of(inputs: &[&str], f: impl Fn(&[bool]) -> bool) -> Relation {
    let n = inputs.len() as u32;
    let schema = binary_schema(inputs, "F");
    let rows = (0..1u32 << n)
        .map(|m| {
            let x = bits_of(m, n);
            let mut row: Vec<Val> = x.iter().map(|&b| bit(b)).collect();
            row.push(bit(f(&x)));
            (m as TupleId, row)
        })
        .collect();
    Relation::with_ids(schema, rows).unwrap()
}

/// Same, for incompletely specified functions (None = `-`).
pub fn partial_table_of(inputs: &[&str], f: impl Fn(&[bool]) -> Option<bool>) -> Relation {
    let n = inputs.len() as u32;
    let schema = binary_schema(inputs, "F");
    let rows = (0..1u32 << n)
        .map(|m| {
            let x = bits_of(m, n);
            let mut row: Vec<Val> = x.iter().map(|&b| bit(b)).collect();
            row.push(match f(&x) {
                Some(b) => bit(b),
                None => Val::DontCare,
            });
            (m as TupleId, row)
        })
        .collect();
    Relation::with_ids(schema, rows).unwrap()
}

// --- Example 1: W = x1'x4' + x1x4, F = W x2'x3' + W'x2x3 -------------------

pub fn example1_w(x1: bool, x4: bool) -> bool {
    (!x1 && !x4) || (x1 && x4)
}

pub fn example1_h(w: bool, x2: bool, x3: bool) -> bool {
    (w && !x2 && !x3) || (!w && x2 && x3)
}

pub fn example1_table() -> Relation {
    table_of(&["x1", "x2", "x3", "x4"], |x| {
        example1_h(example1_w(x[0], x[3]), x[1], x[2])
    })
}

// --- Airline table ---------------------------------------------------------

pub fn airline() -> Relation {
    let schema = vec![
        Attribute::input(Domain::new("F", &["106", "204"]).unwrap()),
        Attribute::input(Domain::new("D", &["Mon.", "Thur.", "Wed.", "Fri."]).unwrap()),
        Attribute::input(Domain::new("P", &["747", "1011", "737", "767"]).unwrap()),
    ];
    let raw = [
        (1, ["106", "Mon.", "747"]),
        (2, ["106", "Thur.", "747"]),
        (3, ["106", "Mon.", "1011"]),
        (4, ["106", "Thur.", "1011"]),
        (5, ["204", "Wed.", "737"]),
        (6, ["204", "Fri.", "737"]),
        (7, ["204", "Wed.", "767"]),
        (8, ["204", "Fri.", "767"]),
    ];
    let rows = raw
        .iter()
        .map(|(id, r)| {
            let vals = schema
                .iter()
                .zip(r.iter())
                .map(|(a, v)| Val::Sym(a.domain.index_of(v).unwrap()))
                .collect();
            (*id as TupleId, vals)
        })
        .collect();
    Relation::with_ids(schema, rows).unwrap()
}

// --- Example 5: W1 = x1'x4x5 + x4'x5', W2 = x2 + x3', F = XNOR(W1, W2) -----

pub fn example5_g1(x1: bool, x4: bool, x5: bool) -> bool {
    (!x1 && x4 && x5) || (!x4 && !x5)
}

pub fn example5_g2(x2: bool, x3: bool) -> bool {
    x2 || !x3
}

pub fn example5_table() -> Relation {
    table_of(&["x1", "x2", "x3", "x4", "x5"], |x| {
        example5_g1(x[0], x[3], x[4]) == example5_g2(x[1], x[2])
    })
}

// --- Example 6: W = x2'x5' + x4, F = W x1'x3' + W'x1 + x1x3 ----------------

pub fn example6_w(x2: bool, x4: bool, x5: bool) -> bool {
    (!x2 && !x5) || x4
}

pub fn example6_h(w: bool, x1: bool, x3: bool) -> bool {
    (w && !x1 && !x3) || (!w && x1) || (x1 && x3)
}

pub fn example6_table() -> Relation {
    table_of(&["x1", "x2", "x3", "x4", "x5"], |x| {
        example6_h(example6_w(x[1], x[3], x[4]), x[0], x[2])
    })
}

/// The 24 rows of this example as printed in the source listing (the rows
/// for x1 = 1, x2 = 1 are not printed). Row 12's output is transcribed
/// as printed even though the listing's own charts force 0 there.
pub fn example6_printed_rows() -> Vec<(u32, [u8; 5], u8)> {
    let f24: [u8; 24] = [
        1, 0, 1, 1, 0, 0, 0, 0, // rows 0..7
        0, 0, 1, 1, 1, 0, 0, 0, // rows 8..15 (row 12 printed as 1)
        0, 1, 0, 0, 1, 1, 1, 1, // rows 16..23
    ];
    (0..24u32)
        .map(|m| {
            let x = bits_of(m, 5);
            (
                m,
                [x[0] as u8, x[1] as u8, x[2] as u8, x[3] as u8, x[4] as u8],
                f24[m as usize],
            )
        })
        .collect()
}

// --- Example 7: W = x1'x2' + x1'x4 + x2x4, h = Wx3'x5' + Wx3x5 + W'x3'x5 ---

pub fn example7_g(x1: bool, x2: bool, x4: bool) -> bool {
    (!x1 && !x2) || (!x1 && x4) || (x2 && x4)
}

pub fn example7_h(w: bool, x3: bool, x5: bool) -> bool {
    (w && !x3 && !x5) || (w && x3 && x5) || (!w && !x3 && x5)
}

/// Specified entries of the incompletely specified chart: the whole 010
/// column and the (Q11, P011) cell are unspecified, and column 000 keeps
/// only its (Q10) cell. Everything else follows the published g and h.
pub fn example7_entry(x: &[bool]) -> Option<bool> {
    let (x1, x2, x3, x4, x5) = (x[0], x[1], x[2], x[3], x[4]);
    match (x1, x2, x4) {
        (false, true, false) => None,
        (false, false, false) => {
            if x3 && !x5 {
                Some(false)
            } else {
                None
            }
        }
        (false, true, true) if x3 && x5 => None,
        _ => Some(example7_h(example7_g(x1, x2, x4), x3, x5)),
    }
}

pub fn example7_table() -> Relation {
    partial_table_of(&["x1", "x2", "x3", "x4", "x5"], example7_entry)
}

// --- Helpers over emitted tables -------------------------------------------

/// Read a table as a finite function: input value names -> output value name.
pub fn fn_of_table(rel: &Relation, inputs: &[&str], output: &str) -> BTreeMap<Vec<String>, String> {
    let in_idx: Vec<usize> = inputs
        .iter()
        .map(|n| rel.attr_index(n).unwrap())
        .collect();
    let out_idx = rel.attr_index(output).unwrap();
    let mut map = BTreeMap::new();
    for t in rel.tuples() {
        let key: Vec<String> = in_idx
            .iter()
            .map(|&i| rel.value_name(i, t.values[i]).to_string())
            .collect();
        let val = rel.value_name(out_idx, t.values[out_idx]).to_string();
        if let Some(prev) = map.insert(key.clone(), val.clone()) {
            assert_eq!(prev, val, "table is not functional at {key:?}");
        }
    }
    map
}
