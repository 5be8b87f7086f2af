//! Fixtures shared by the unit tests: the airline table and the running
//! decomposition examples, rebuilt from their closed forms.

use crate::relation::{Attribute, Domain, Relation, TupleId, Val};

pub fn strs(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The eight-row flight/departure/pilot table, with the row numbering used
/// throughout the worked examples (1-based).
pub fn airline() -> Relation {
    let schema = vec![
        Attribute::input(Domain::new("F", &["106", "204"]).unwrap()),
        Attribute::input(Domain::new("D", &["Mon.", "Thur.", "Wed.", "Fri."]).unwrap()),
        Attribute::input(Domain::new("P", &["747", "1011", "737", "767"]).unwrap()),
    ];
    let rows = [
        (1, ["106", "Mon.", "747"]),
        (2, ["106", "Thur.", "747"]),
        (3, ["106", "Mon.", "1011"]),
        (4, ["106", "Thur.", "1011"]),
        (5, ["204", "Wed.", "737"]),
        (6, ["204", "Fri.", "737"]),
        (7, ["204", "Wed.", "767"]),
        (8, ["204", "Fri.", "767"]),
    ];
    let parsed = rows
        .iter()
        .map(|(id, row)| {
            let vals = schema
                .iter()
                .zip(row.iter())
                .map(|(a, v)| Val::Sym(a.domain.index_of(v).unwrap()))
                .collect();
            (*id as TupleId, vals)
        })
        .collect();
    Relation::with_ids(schema, parsed).unwrap()
}

fn bit(b: bool) -> Val {
    Val::Sym(b as u8)
}

/// Bridge value of the first running example: W = 1 iff x1 == x4.
pub fn example1_w(x1: bool, x4: bool) -> bool {
    x1 == x4
}

/// Output of the first running example: F = W x2' x3' + W' x2 x3.
pub fn example1_f(x1: bool, x2: bool, x3: bool, x4: bool) -> bool {
    let w = example1_w(x1, x4);
    (w && !x2 && !x3) || (!w && x2 && x3)
}

/// The 16-minterm table T_f over x1..x4.
pub fn example1_table() -> Relation {
    let schema = vec![
        Attribute::input(Domain::binary("x1")),
        Attribute::input(Domain::binary("x2")),
        Attribute::input(Domain::binary("x3")),
        Attribute::input(Domain::binary("x4")),
        Attribute::output(Domain::binary("F")),
    ];
    let mut rows = Vec::new();
    for m in 0..16u32 {
        let x1 = m & 8 != 0;
        let x2 = m & 4 != 0;
        let x3 = m & 2 != 0;
        let x4 = m & 1 != 0;
        rows.push((
            m,
            vec![bit(x1), bit(x2), bit(x3), bit(x4), bit(example1_f(x1, x2, x3, x4))],
        ));
    }
    Relation::with_ids(schema, rows).unwrap()
}

/// T_wf: the same sixteen minterms with W assigned, in the column order
/// x1 x4 W x2 x3 F. Ids still follow the x1x2x3x4 minterm numbering.
pub fn example1_twf() -> Relation {
    let schema = vec![
        Attribute::input(Domain::binary("x1")),
        Attribute::input(Domain::binary("x4")),
        Attribute::bridge(Domain::binary("W")),
        Attribute::input(Domain::binary("x2")),
        Attribute::input(Domain::binary("x3")),
        Attribute::output(Domain::binary("F")),
    ];
    let mut rows = Vec::new();
    for m in 0..16u32 {
        let x1 = m & 8 != 0;
        let x2 = m & 4 != 0;
        let x3 = m & 2 != 0;
        let x4 = m & 1 != 0;
        rows.push((
            m,
            vec![
                bit(x1),
                bit(x4),
                bit(example1_w(x1, x4)),
                bit(x2),
                bit(x3),
                bit(example1_f(x1, x2, x3, x4)),
            ],
        ));
    }
    Relation::with_ids(schema, rows).unwrap()
}

/// Five-input table of the multiple-decomposition example:
/// F = XNOR(g1, g2) with g1 = x1'x4x5 + x4'x5' and g2 = x2 + x3'.
pub fn example5_table() -> Relation {
    let schema = vec![
        Attribute::input(Domain::binary("x1")),
        Attribute::input(Domain::binary("x2")),
        Attribute::input(Domain::binary("x3")),
        Attribute::input(Domain::binary("x4")),
        Attribute::input(Domain::binary("x5")),
        Attribute::output(Domain::binary("F")),
    ];
    let mut rows = Vec::new();
    for m in 0..32u32 {
        let x = |k: u32| m & (16 >> k) != 0;
        let (x1, x2, x3, x4, x5) = (x(0), x(1), x(2), x(3), x(4));
        let g1 = (!x1 && x4 && x5) || (!x4 && !x5);
        let g2 = x2 || !x3;
        rows.push((
            m,
            vec![bit(x1), bit(x2), bit(x3), bit(x4), bit(x5), bit(g1 == g2)],
        ));
    }
    Relation::with_ids(schema, rows).unwrap()
}

/// Five-input table of the non-disjoint example:
/// W = x2'x5' + x4, F = W x1'x3' + W' x1 + x1 x3.
pub fn example6_table() -> Relation {
    let schema = vec![
        Attribute::input(Domain::binary("x1")),
        Attribute::input(Domain::binary("x2")),
        Attribute::input(Domain::binary("x3")),
        Attribute::input(Domain::binary("x4")),
        Attribute::input(Domain::binary("x5")),
        Attribute::output(Domain::binary("F")),
    ];
    let mut rows = Vec::new();
    for m in 0..32u32 {
        let x = |k: u32| m & (16 >> k) != 0;
        let (x1, x2, x3, x4, x5) = (x(0), x(1), x(2), x(3), x(4));
        let w = (!x2 && !x5) || x4;
        let f = (w && !x1 && !x3) || (!w && x1) || (x1 && x3);
        rows.push((m, vec![bit(x1), bit(x2), bit(x3), bit(x4), bit(x5), bit(f)]));
    }
    Relation::with_ids(schema, rows).unwrap()
}

/// Incompletely specified five-input table with bound set {x1, x2, x4} and
/// free set {x3, x5}. Specified cells follow W = x1'x2' + x1'x4 + x2x4 and
/// h = W x3'x5' + W x3x5 + W' x3'x5; the unspecified cells are the whole
/// (x1,x2,x4) = 010 column, the single cell (x3x5 = 11, 011), and all of
/// column 000 except the (x3x5 = 10) cell.
pub fn example7_table() -> Relation {
    let schema = vec![
        Attribute::input(Domain::binary("x1")),
        Attribute::input(Domain::binary("x2")),
        Attribute::input(Domain::binary("x3")),
        Attribute::input(Domain::binary("x4")),
        Attribute::input(Domain::binary("x5")),
        Attribute::output(Domain::binary("F")),
    ];
    let mut rows = Vec::new();
    for m in 0..32u32 {
        let x = |k: u32| m & (16 >> k) != 0;
        let (x1, x2, x3, x4, x5) = (x(0), x(1), x(2), x(3), x(4));
        let f = example7_entry(x1, x2, x3, x4, x5);
        let fv = match f {
            None => Val::DontCare,
            Some(b) => bit(b),
        };
        rows.push((m, vec![bit(x1), bit(x2), bit(x3), bit(x4), bit(x5), fv]));
    }
    Relation::with_ids(schema, rows).unwrap()
}

/// Nine specified rows of the three-valued example, sampling
/// F = min(x1, x2, x3) at points that never touch x3 = med. Extension fills
/// the remaining 18 rows of the 27-row input space with `-`.
pub fn example8_partial() -> Relation {
    let tern = |n: &str| Domain::new(n, &["lo", "med", "hi"]).unwrap();
    let schema = vec![
        Attribute::input(tern("x1")),
        Attribute::input(tern("x2")),
        Attribute::input(tern("x3")),
        Attribute::output(tern("F")),
    ];
    let rows: &[Vec<&str>] = &[
        vec!["lo", "lo", "lo", "lo"],
        vec!["med", "med", "hi", "med"],
        vec!["med", "hi", "hi", "med"],
        vec!["hi", "lo", "lo", "lo"],
        vec!["hi", "lo", "hi", "lo"],
        vec!["hi", "med", "lo", "lo"],
        vec!["hi", "med", "hi", "med"],
        vec!["hi", "hi", "lo", "lo"],
        vec!["hi", "hi", "hi", "hi"],
    ];
    Relation::from_named(schema, rows).unwrap()
}

/// Specified value of the incompletely specified example, or None for `-`.
pub fn example7_entry(x1: bool, x2: bool, x3: bool, x4: bool, x5: bool) -> Option<bool> {
    let col = (x1, x2, x4);
    match col {
        (false, true, false) => None,                      // column 010: all don't-care
        (false, false, false) => {
            // column 000: only the (x3, x5) = (1, 0) cell is specified
            if x3 && !x5 {
                Some(false)
            } else {
                None
            }
        }
        (false, true, true) if x3 && x5 => None,           // cell (Q11, P011)
        _ => {
            let w = (!x1 && !x2) || (!x1 && x4) || (x2 && x4);
            Some(if w { x3 == x5 } else { !x3 && x5 })
        }
    }
}
