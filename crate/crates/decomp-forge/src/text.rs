//! The truth-table text format.
//!
//! ```text
//! # comment
//! var x1                  # binary shorthand for { 0 1 }
//! var x2 { 0 1 }
//! output F { 0 1 }
//! 0 0 1
//! 0 1 0
//! ...
//! ```
//!
//! A file with an `output` declaration is a truth table: its input space must
//! be complete (or extended with `-` rows on request), input vectors must be
//! unique, and tuple ids are the mixed-radix minterm numbers. A file with
//! only `var` declarations is a general relation with ids in row order.

use std::path::Path;

use crate::error::{Error, Result};
use crate::relation::{parse_value, Attribute, Domain, Relation, Role, Val};

/// Parse the text format. `extend_missing` fills absent input rows of a
/// truth table with `-` outputs instead of failing.
pub fn parse_relation(text: &str, extend_missing: bool) -> Result<Relation> {
    let mut schema: Vec<Attribute> = Vec::new();
    let mut rows: Vec<Vec<Val>> = Vec::new();
    let mut output_count = 0usize;

    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let lineno = lineno + 1;
        match tokens[0] {
            kw @ ("var" | "output") => {
                if !rows.is_empty() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "attribute declared after data rows".into(),
                    });
                }
                let domain = parse_declaration(&tokens, lineno)?;
                let attr = if kw == "output" {
                    output_count += 1;
                    if output_count > 1 {
                        return Err(Error::OutputCount(output_count));
                    }
                    Attribute::output(domain)
                } else {
                    Attribute::input(domain)
                };
                if schema.iter().any(|a| a.name() == attr.name()) {
                    return Err(Error::DuplicateAttribute(attr.name().to_string()));
                }
                schema.push(attr);
            }
            _ => {
                if schema.is_empty() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "data row before any attribute declaration".into(),
                    });
                }
                if tokens.len() != schema.len() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!(
                            "row has {} values, schema has {} attributes",
                            tokens.len(),
                            schema.len()
                        ),
                    });
                }
                let row: Vec<Val> = schema
                    .iter()
                    .zip(&tokens)
                    .map(|(a, t)| parse_value(a, t))
                    .collect::<Result<_>>()
                    .map_err(|e| Error::Parse {
                        line: lineno,
                        msg: e.to_string(),
                    })?;
                rows.push(row);
            }
        }
    }
    if schema.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no attribute declarations".into(),
        });
    }

    let relation = Relation::new(schema, rows)?;
    if output_count == 0 {
        return Ok(relation);
    }
    relation.check_unique_inputs()?;
    if extend_missing {
        relation.extend_missing()
    } else {
        relation.require_complete()?;
        relation.renumber_minterms()
    }
}

fn parse_declaration(tokens: &[&str], lineno: usize) -> Result<Domain> {
    let bad = |msg: &str| Error::Parse {
        line: lineno,
        msg: msg.to_string(),
    };
    let name = tokens.get(1).ok_or_else(|| bad("missing attribute name"))?;
    if name.contains(['{', '}']) {
        return Err(bad("missing space before `{`"));
    }
    match tokens.len() {
        2 => Ok(Domain::binary(name)),
        _ => {
            if tokens[2] != "{" || tokens.last() != Some(&"}") {
                return Err(bad("expected `{ v1 v2 ... }`"));
            }
            let values: Vec<&str> = tokens[3..tokens.len() - 1].to_vec();
            Domain::new(name, &values)
        }
    }
}

pub fn parse_file(path: &Path, extend_missing: bool) -> Result<Relation> {
    let text = std::fs::read_to_string(path)?;
    parse_relation(&text, extend_missing)
}

/// Serialize in the same format: declarations in schema order (binary
/// domains use the shorthand), then rows sorted by their value vectors in
/// declared domain order, so the output is independent of tuple ids. Bridge
/// attributes are written as `var`.
pub fn serialize_relation(relation: &Relation) -> String {
    let mut out = String::new();
    for attr in relation.schema() {
        let kw = match attr.role {
            Role::Output => "output",
            Role::Input | Role::Bridge => "var",
        };
        if attr.domain.is_binary() {
            out.push_str(&format!("{kw} {}\n", attr.name()));
        } else {
            out.push_str(&format!(
                "{kw} {} {{ {} }}\n",
                attr.name(),
                attr.domain.values().join(" ")
            ));
        }
    }
    let mut rows: Vec<&[Val]> = relation.tuples().iter().map(|t| &t.values[..]).collect();
    rows.sort();
    for row in rows {
        let cells: Vec<&str> = row
            .iter()
            .enumerate()
            .map(|(i, &v)| relation.value_name(i, v))
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
# two inputs, one output
var a
var b { 0 1 }
output f
0 0 1
0 1 0
1 0 -
1 1 1
";

    #[test]
    fn parse_and_serialize_round_trip() {
        let r = parse_relation(EXAMPLE, false).unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r.ids(), vec![0, 1, 2, 3]);
        let text = serialize_relation(&r);
        let again = parse_relation(&text, false).unwrap();
        assert!(r.same_content(&again));
        assert_eq!(text, serialize_relation(&again));
    }

    #[test]
    fn binary_shorthand_matches_braced_declaration() {
        let a = parse_relation("var x\noutput f\n0 1\n1 0\n", false).unwrap();
        let b = parse_relation("var x { 0 1 }\noutput f { 0 1 }\n0 1\n1 0\n", false).unwrap();
        assert!(a.same_content(&b));
    }

    #[test]
    fn general_relation_without_output() {
        let r = parse_relation("var F { 106 204 }\nvar D { Mon Wed }\n106 Mon\n204 Wed\n", false)
            .unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.output_indices().is_empty());
        // No completeness requirement applies.
    }

    #[test]
    fn missing_rows_require_the_extension_flag() {
        let text = "var a\nvar b\noutput f\n0 0 1\n";
        assert!(matches!(
            parse_relation(text, false),
            Err(Error::MissingInputRows(3))
        ));
        let extended = parse_relation(text, true).unwrap();
        assert_eq!(extended.len(), 4);
        assert_eq!(extended.ids(), vec![0, 1, 2, 3]);
        assert!(extended.has_dontcare());
    }

    #[test]
    fn conflicting_duplicate_rows_are_rejected() {
        let text = "var a\noutput f\n0 1\n0 0\n1 1\n";
        assert!(matches!(
            parse_relation(text, false),
            Err(Error::ConflictingDuplicate(_, _))
        ));
        let dup = "var a\noutput f\n0 1\n0 1\n1 1\n";
        assert!(matches!(parse_relation(dup, false), Err(Error::DuplicateRow(_))));
    }

    #[test]
    fn value_outside_domain_is_a_parse_error() {
        let text = "var a\noutput f\n0 2\n1 0\n";
        match parse_relation(text, false) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("not in the domain"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn dontcare_in_input_column_is_rejected() {
        let text = "var a\noutput f\n- 1\n";
        assert!(parse_relation(text, false).is_err());
    }

    #[test]
    fn second_output_is_rejected() {
        let text = "var a\noutput f\noutput g\n0 1 1\n1 0 0\n";
        assert!(matches!(parse_relation(text, false), Err(Error::OutputCount(2))));
    }

    #[test]
    fn minterm_ids_follow_declared_domain_order() {
        let text = "\
var x { lo med hi }
output f { lo med hi }
hi lo
lo med
med hi
";
        let r = parse_relation(text, false).unwrap();
        // Rows are renumbered by input value order: lo=0, med=1, hi=2.
        let first = r.tuple(0).unwrap();
        assert_eq!(r.value_name(0, first.values[0]), "lo");
        assert_eq!(r.value_name(1, first.values[1]), "med");
    }
}
