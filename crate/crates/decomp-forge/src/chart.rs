//! Decomposition charts: free-set blocks as rows, bound-set blocks as
//! columns, output values as entries.
//!
//! The two entry markers are distinct on purpose: a null entry (rendered `φ`)
//! means no tuple exists at that cell, which only happens in non-disjoint
//! charts where a row and a column disagree on the shared attributes; `-`
//! means a tuple exists but its output is unspecified. Conflating the two
//! would corrupt the non-disjoint algorithm.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::partition::{BlockLabel, Partition};
use crate::relation::{Domain, Relation, Role, TupleId, Val};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Entry {
    Null,
    DontCare,
    Value(Val),
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub entry: Entry,
    pub tuples: Vec<TupleId>,
}

#[derive(Debug, Clone)]
pub struct RowInfo {
    pub label: BlockLabel,
    pub tuples: Vec<TupleId>,
}

/// A chart column: one or more constituent bound-set block labels (more than
/// one after merging) and one cell per row.
#[derive(Debug, Clone)]
pub struct Column {
    pub labels: Vec<BlockLabel>,
    pub cells: Vec<Cell>,
}

impl Column {
    pub fn tuples(&self) -> Vec<TupleId> {
        let mut ids: Vec<TupleId> = self.cells.iter().flat_map(|c| c.tuples.clone()).collect();
        ids.sort_unstable();
        ids
    }

    /// Name in the chart header, mirroring the merged-label notation.
    pub fn name(&self) -> String {
        let texts: Vec<&str> = self.labels.iter().map(|l| l.text.as_str()).collect();
        if texts.len() == 1 {
            format!("P_{}", texts[0])
        } else if texts.iter().any(|t| t.contains(',')) {
            format!("P_{{{}}}", texts.join(" v "))
        } else {
            format!("P_{}", texts.join("v"))
        }
    }
}

/// Row/column indices belonging to each block of the shared-attribute
/// partition; cross-group cells are null.
#[derive(Debug, Clone)]
pub struct SubGroup {
    pub c_keys: Vec<Val>,
    pub c_text: String,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Chart {
    y_attrs: Vec<String>,
    z_attrs: Vec<String>,
    c_attrs: Vec<String>,
    f_attr: String,
    f_domain: Domain,
    c_domains: Vec<Domain>,
    c_in_y: Vec<usize>,
    c_in_z: Vec<usize>,
    rows: Vec<RowInfo>,
    columns: Vec<Column>,
    dropped: Vec<Column>,
    universe: Vec<TupleId>,
}

impl Chart {
    /// Build the chart of `relation` for bound set `y` and free set `z`.
    /// The relation must be a complete truth table with a single output;
    /// `y` and `z` must cover the inputs and may overlap.
    pub fn build(relation: &Relation, y: &[String], z: &[String]) -> Result<Chart> {
        let outputs = relation.output_indices();
        if outputs.len() != 1 {
            return Err(Error::OutputCount(outputs.len()));
        }
        let f_idx = outputs[0];
        let f_attr = relation.schema()[f_idx].name().to_string();
        let f_domain = relation.schema()[f_idx].domain.clone();

        let yi = relation.attr_indices(y)?;
        let zi = relation.attr_indices(z)?;
        for &i in yi.iter().chain(&zi) {
            if relation.schema()[i].role != Role::Input {
                return Err(Error::CoverViolation(format!(
                    "`{}` is not an input attribute",
                    relation.schema()[i].name()
                )));
            }
        }
        let mut covered: Vec<usize> = yi.iter().chain(&zi).copied().collect();
        covered.sort_unstable();
        covered.dedup();
        if covered != relation.input_indices() {
            return Err(Error::CoverViolation(
                "bound and free sets must cover the input attributes".into(),
            ));
        }
        relation.check_unique_inputs()?;
        relation.require_complete()?;

        let name_of = |i: &usize| relation.schema()[*i].name().to_string();
        let y_attrs: Vec<String> = yi.iter().map(name_of).collect();
        let z_attrs: Vec<String> = zi.iter().map(name_of).collect();
        let ci: Vec<usize> = yi.iter().filter(|i| zi.contains(i)).copied().collect();
        let c_attrs: Vec<String> = ci.iter().map(name_of).collect();
        let c_in_y: Vec<usize> = ci.iter().map(|i| yi.iter().position(|j| j == i).unwrap()).collect();
        let c_in_z: Vec<usize> = ci.iter().map(|i| zi.iter().position(|j| j == i).unwrap()).collect();
        let c_domains: Vec<Domain> = ci
            .iter()
            .map(|&i| relation.schema()[i].domain.clone())
            .collect();

        let py = Partition::induced(relation, &y_attrs)?;
        let pz = Partition::induced(relation, &z_attrs)?;
        let empty_label = || BlockLabel {
            keys: vec![],
            text: String::new(),
        };
        let mut rows: Vec<RowInfo> = pz
            .blocks()
            .iter()
            .map(|b| RowInfo {
                label: b.label.clone().unwrap_or_else(empty_label),
                tuples: b.members.clone(),
            })
            .collect();
        rows.sort_by(|a, b| a.label.keys.cmp(&b.label.keys));

        let mut columns = Vec::with_capacity(py.num_blocks());
        for block in py.blocks() {
            let label = block.label.clone().unwrap_or_else(empty_label);
            let mut cells = Vec::with_capacity(rows.len());
            for row in &rows {
                let ids = intersect_sorted(&block.members, &row.tuples);
                let entry = match ids.len() {
                    0 => {
                        let row_c: Vec<Val> = c_in_z.iter().map(|&p| row.label.keys[p]).collect();
                        let col_c: Vec<Val> = c_in_y.iter().map(|&p| label.keys[p]).collect();
                        if c_attrs.is_empty() || row_c == col_c {
                            return Err(Error::InternalCheck(
                                "empty cell inside a sub-chart of a complete table".into(),
                            ));
                        }
                        Entry::Null
                    }
                    1 => {
                        let t = relation.tuple(ids[0]).expect("tuple present");
                        match t.values[f_idx] {
                            Val::DontCare => Entry::DontCare,
                            v => Entry::Value(v),
                        }
                    }
                    n => {
                        return Err(Error::InternalCheck(format!(
                            "cell holds {n} tuples; inputs are not unique"
                        )))
                    }
                };
                cells.push(Cell { entry, tuples: ids });
            }
            columns.push(Column {
                labels: vec![label],
                cells,
            });
        }
        columns.sort_by(|a, b| a.labels[0].keys.cmp(&b.labels[0].keys));

        Ok(Chart {
            y_attrs,
            z_attrs,
            c_attrs,
            f_attr,
            f_domain,
            c_domains,
            c_in_y,
            c_in_z,
            rows,
            columns,
            dropped: vec![],
            universe: relation.ids(),
        })
    }

    pub fn y_attrs(&self) -> &[String] {
        &self.y_attrs
    }

    pub fn z_attrs(&self) -> &[String] {
        &self.z_attrs
    }

    pub fn c_attrs(&self) -> &[String] {
        &self.c_attrs
    }

    pub fn f_attr(&self) -> &str {
        &self.f_attr
    }

    pub fn f_domain(&self) -> &Domain {
        &self.f_domain
    }

    pub fn rows(&self) -> &[RowInfo] {
        &self.rows
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn dropped(&self) -> &[Column] {
        &self.dropped
    }

    pub fn universe(&self) -> &[TupleId] {
        &self.universe
    }

    pub fn row_name(&self, r: usize) -> String {
        let text = &self.rows[r].label.text;
        if text.is_empty() {
            "Q".to_string()
        } else {
            format!("Q_{text}")
        }
    }

    /// Column index by the label text of one of its constituents.
    pub fn column_with_label(&self, text: &str) -> Option<usize> {
        self.columns
            .iter()
            .position(|c| c.labels.iter().any(|l| l.text == text))
    }

    /// Column equivalence: identical null patterns and identical output
    /// values row by row. Undefined in the presence of `-` entries.
    pub fn columns_equivalent(&self, i: usize, j: usize) -> Result<bool> {
        for (a, b) in self.columns[i].cells.iter().zip(&self.columns[j].cells) {
            match (a.entry, b.entry) {
                (Entry::Null, Entry::Null) => {}
                (Entry::Null, _) | (_, Entry::Null) => return Ok(false),
                (Entry::DontCare, _) | (_, Entry::DontCare) => {
                    return Err(Error::EquivalenceOnDontCare)
                }
                (Entry::Value(u), Entry::Value(v)) => {
                    if u != v {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Column compatibility: identical null patterns, and on every row the
    /// entries agree or at least one is `-`. Reflexive and symmetric but not
    /// transitive.
    pub fn columns_compatible(&self, i: usize, j: usize) -> bool {
        self.columns[i]
            .cells
            .iter()
            .zip(&self.columns[j].cells)
            .all(|(a, b)| match (a.entry, b.entry) {
                (Entry::Null, Entry::Null) => true,
                (Entry::Null, _) | (_, Entry::Null) => false,
                (Entry::DontCare, _) | (_, Entry::DontCare) => true,
                (Entry::Value(u), Entry::Value(v)) => u == v,
            })
    }

    /// Merge one set of columns into a single column; all other columns are
    /// unchanged. Fails if two constituents carry different concrete values
    /// in the same row.
    pub fn merge_columns(&self, cols: &[usize]) -> Result<Chart> {
        self.merge_groups(&[cols.to_vec()])
    }

    /// Merge several disjoint column groups at once.
    pub fn merge_groups(&self, groups: &[Vec<usize>]) -> Result<Chart> {
        let mut used = vec![false; self.columns.len()];
        let mut merged: Vec<Column> = Vec::new();
        for group in groups {
            if group.is_empty() {
                continue;
            }
            for &c in group {
                if used[c] {
                    return Err(Error::NotMergeable(group.clone()));
                }
                used[c] = true;
            }
            merged.push(self.merge_group(group)?);
        }
        let mut columns: Vec<Column> = self
            .columns
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(_, c)| c.clone())
            .collect();
        columns.extend(merged);
        columns.sort_by(|a, b| a.labels[0].keys.cmp(&b.labels[0].keys));
        let mut out = self.clone();
        out.columns = columns;
        Ok(out)
    }

    fn merge_group(&self, group: &[usize]) -> Result<Column> {
        let mut labels: Vec<BlockLabel> = group
            .iter()
            .flat_map(|&c| self.columns[c].labels.clone())
            .collect();
        labels.sort();
        labels.dedup();
        let mut cells = Vec::with_capacity(self.rows.len());
        for r in 0..self.rows.len() {
            let mut value: Option<(Val, usize)> = None;
            let mut any_dontcare = false;
            let mut tuples = Vec::new();
            for &c in group {
                let cell = &self.columns[c].cells[r];
                tuples.extend(cell.tuples.iter().copied());
                match cell.entry {
                    Entry::Null => {}
                    Entry::DontCare => any_dontcare = true,
                    Entry::Value(v) => match value {
                        None => value = Some((v, c)),
                        Some((u, first)) if u != v => {
                            return Err(Error::MergeConflict(
                                self.columns[first].name(),
                                self.columns[c].name(),
                                self.row_name(r),
                            ));
                        }
                        Some(_) => {}
                    },
                }
            }
            tuples.sort_unstable();
            let entry = match value {
                Some((v, _)) => Entry::Value(v),
                None if any_dontcare => Entry::DontCare,
                None => Entry::Null,
            };
            cells.push(Cell { entry, tuples });
        }
        Ok(Column { labels, cells })
    }

    /// Exhaustively merge equivalent columns. Equivalence is transitive on
    /// fully specified charts, so grouping columns by their cell signature
    /// merges everything in one pass, independent of order.
    pub fn merge_all_equivalent(&self) -> Result<Chart> {
        let mut groups: BTreeMap<Vec<Entry>, Vec<usize>> = BTreeMap::new();
        for (i, col) in self.columns.iter().enumerate() {
            if col.cells.iter().any(|c| c.entry == Entry::DontCare) {
                return Err(Error::EquivalenceOnDontCare);
            }
            let signature: Vec<Entry> = col.cells.iter().map(|c| c.entry).collect();
            groups.entry(signature).or_default().push(i);
        }
        self.merge_groups(&groups.into_values().collect::<Vec<_>>())
    }

    /// Remove columns whose every non-null entry is `-`. The removed columns
    /// stay recorded so their tuples can later be assigned to an arbitrary
    /// bridge block.
    pub fn drop_dontcare_columns(&self) -> Chart {
        let mut out = self.clone();
        out.columns = Vec::new();
        for col in &self.columns {
            let informative = col.cells.iter().any(|c| matches!(c.entry, Entry::Value(_)));
            if informative {
                out.columns.push(col.clone());
            } else {
                out.dropped.push(col.clone());
            }
        }
        out
    }

    /// Diagonal-form index: rows and columns grouped by their value on the
    /// shared attributes. With no shared attributes there is one group.
    /// Fails on columns merged across groups.
    pub fn subchart_groups(&self) -> Result<Vec<SubGroup>> {
        if self.c_attrs.is_empty() {
            return Ok(vec![SubGroup {
                c_keys: vec![],
                c_text: String::new(),
                rows: (0..self.rows.len()).collect(),
                cols: (0..self.columns.len()).collect(),
            }]);
        }
        let mut groups: BTreeMap<Vec<Val>, SubGroup> = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            let keys: Vec<Val> = self.c_in_z.iter().map(|&p| row.label.keys[p]).collect();
            groups
                .entry(keys.clone())
                .or_insert_with(|| self.new_group(keys))
                .rows
                .push(r);
        }
        for (c, col) in self.columns.iter().enumerate() {
            let mut keys: Option<Vec<Val>> = None;
            for label in &col.labels {
                let k: Vec<Val> = self.c_in_y.iter().map(|&p| label.keys[p]).collect();
                match &keys {
                    None => keys = Some(k),
                    Some(prev) if *prev != k => {
                        return Err(Error::InternalCheck(format!(
                            "column {} spans several sub-charts",
                            col.name()
                        )))
                    }
                    Some(_) => {}
                }
            }
            let keys = keys.expect("column has a label");
            groups
                .entry(keys.clone())
                .or_insert_with(|| self.new_group(keys))
                .cols
                .push(c);
        }
        Ok(groups.into_values().collect())
    }

    fn new_group(&self, keys: Vec<Val>) -> SubGroup {
        let names: Vec<&str> = self
            .c_domains
            .iter()
            .zip(&keys)
            .map(|(d, &v)| match v {
                Val::Sym(i) => d.values()[i as usize].as_str(),
                Val::DontCare => "-",
            })
            .collect();
        SubGroup {
            c_text: BlockLabel::render(&names),
            c_keys: keys,
            rows: vec![],
            cols: vec![],
        }
    }

    /// Diagonal-form invariant: a cell is null exactly when its row and
    /// column lie in different sub-chart groups.
    pub fn check_diagonal(&self) -> Result<()> {
        let groups = self.subchart_groups()?;
        for (c, col) in self.columns.iter().enumerate() {
            let cg = groups.iter().position(|g| g.cols.contains(&c)).unwrap();
            for (r, cell) in col.cells.iter().enumerate() {
                let rg = groups.iter().position(|g| g.rows.contains(&r)).unwrap();
                let should_be_null = rg != cg;
                if should_be_null != matches!(cell.entry, Entry::Null) {
                    return Err(Error::InternalCheck(format!(
                        "cell ({}, {}) breaks the diagonal structure",
                        self.row_name(r),
                        col.name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every universe tuple must sit in exactly one cell of the live or
    /// dropped columns.
    pub fn check_accounting(&self) -> Result<()> {
        let mut seen: Vec<TupleId> = self
            .columns
            .iter()
            .chain(&self.dropped)
            .flat_map(|c| c.tuples())
            .collect();
        seen.sort_unstable();
        if seen != self.universe {
            return Err(Error::InternalCheck(
                "chart cells do not account for every tuple exactly once".into(),
            ));
        }
        Ok(())
    }

    /// Map from tuple id to its row index.
    pub fn row_of_tuple(&self) -> BTreeMap<TupleId, usize> {
        let mut map = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for &id in &row.tuples {
                map.insert(id, r);
            }
        }
        map
    }

    pub fn render_entry(&self, e: Entry) -> String {
        match e {
            Entry::Null => "φ".to_string(),
            Entry::DontCare => "-".to_string(),
            Entry::Value(Val::Sym(i)) => self.f_domain.values()[i as usize].clone(),
            Entry::Value(Val::DontCare) => "-".to_string(),
        }
    }

    /// Fixed-width text rendering in the usual chart layout.
    pub fn render(&self, title: &str) -> String {
        let row_names: Vec<String> = (0..self.rows.len()).map(|r| self.row_name(r)).collect();
        let name_w = row_names.iter().map(|n| n.len()).max().unwrap_or(1);
        let col_names: Vec<String> = self.columns.iter().map(|c| c.name()).collect();
        let col_w: Vec<usize> = self
            .columns
            .iter()
            .zip(&col_names)
            .map(|(col, name)| {
                col.cells
                    .iter()
                    .map(|c| self.render_entry(c.entry).chars().count())
                    .chain([name.chars().count()])
                    .max()
                    .unwrap()
            })
            .collect();
        let mut out = String::new();
        let _ = writeln!(out, "{title}:");
        let mut header = format!("  {:name_w$}", "");
        for (name, w) in col_names.iter().zip(&col_w) {
            let _ = write!(header, "  {name:>w$}");
        }
        out.push_str(header.trim_end());
        out.push('\n');
        for (r, rn) in row_names.iter().enumerate() {
            let mut line = format!("  {rn:name_w$}");
            for (col, w) in self.columns.iter().zip(&col_w) {
                let e = self.render_entry(col.cells[r].entry);
                let _ = write!(line, "  {e:>w$}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn intersect_sorted(a: &[TupleId], b: &[TupleId]) -> Vec<TupleId> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{example1_table, example6_table, example7_table, strs};

    fn example1_chart() -> Chart {
        Chart::build(&example1_table(), &strs(&["x1", "x4"]), &strs(&["x2", "x3"])).unwrap()
    }

    fn example7_chart() -> Chart {
        Chart::build(
            &example7_table(),
            &strs(&["x1", "x2", "x4"]),
            &strs(&["x3", "x5"]),
        )
        .unwrap()
    }

    #[test]
    fn example1_chart_layout() {
        let ch = example1_chart();
        assert_eq!(ch.rows().len(), 4);
        assert_eq!(ch.columns().len(), 4);
        let names: Vec<String> = ch.columns().iter().map(|c| c.name()).collect();
        assert_eq!(names, vec!["P_00", "P_01", "P_10", "P_11"]);
        ch.check_accounting().unwrap();
        // Column P_00 reads 1,0,0,0 down the rows.
        let p00 = &ch.columns()[0];
        let entries: Vec<Entry> = p00.cells.iter().map(|c| c.entry).collect();
        assert_eq!(
            entries,
            vec![
                Entry::Value(Val::Sym(1)),
                Entry::Value(Val::Sym(0)),
                Entry::Value(Val::Sym(0)),
                Entry::Value(Val::Sym(0)),
            ]
        );
    }

    #[test]
    fn degenerate_chart_with_empty_free_set() {
        let ch = Chart::build(
            &example1_table(),
            &strs(&["x1", "x2", "x3", "x4"]),
            &[],
        )
        .unwrap();
        assert_eq!(ch.rows().len(), 1);
        assert_eq!(ch.columns().len(), 16);
    }

    #[test]
    fn equivalence_pairs_of_example1() {
        let ch = example1_chart();
        assert!(ch.columns_equivalent(0, 3).unwrap()); // P00 ~ P11
        assert!(ch.columns_equivalent(1, 2).unwrap()); // P01 ~ P10
        assert!(!ch.columns_equivalent(0, 1).unwrap());
        assert!(ch.columns_equivalent(2, 2).unwrap());
    }

    #[test]
    fn merging_equivalent_columns_gives_the_final_chart() {
        let ch = example1_chart();
        // Merge {P00, P11} first; the remaining singles are then re-indexed.
        let first = ch.merge_columns(&[0, 3]).unwrap();
        let p01 = first.column_with_label("01").unwrap();
        let p10 = first.column_with_label("10").unwrap();
        let merged = first.merge_columns(&[p01, p10]).unwrap();
        assert_eq!(merged.columns().len(), 2);
        assert_eq!(merged.columns()[0].name(), "P_00v11");
        assert_eq!(merged.columns()[1].name(), "P_01v10");
        let c0: Vec<Entry> = merged.columns()[0].cells.iter().map(|c| c.entry).collect();
        let c1: Vec<Entry> = merged.columns()[1].cells.iter().map(|c| c.entry).collect();
        assert_eq!(
            c0,
            vec![
                Entry::Value(Val::Sym(1)),
                Entry::Value(Val::Sym(0)),
                Entry::Value(Val::Sym(0)),
                Entry::Value(Val::Sym(0)),
            ]
        );
        assert_eq!(
            c1,
            vec![
                Entry::Value(Val::Sym(0)),
                Entry::Value(Val::Sym(0)),
                Entry::Value(Val::Sym(0)),
                Entry::Value(Val::Sym(1)),
            ]
        );
        merged.check_accounting().unwrap();
        assert_eq!(merged.merge_all_equivalent().unwrap().columns().len(), 2);
    }

    #[test]
    fn merge_of_a_singleton_changes_nothing() {
        let ch = example1_chart();
        let same = ch.merge_columns(&[2]).unwrap();
        assert_eq!(same.columns().len(), 4);
        assert_eq!(same.columns()[2].name(), "P_10");
    }

    #[test]
    fn conflicting_merge_is_rejected() {
        let ch = example1_chart();
        assert!(matches!(
            ch.merge_columns(&[0, 1]),
            Err(Error::MergeConflict(_, _, _))
        ));
    }

    #[test]
    fn merge_order_cannot_change_the_outcome() {
        let ch = example1_chart();
        let first = ch.merge_columns(&[1, 2]).unwrap();
        let p00 = first.column_with_label("00").unwrap();
        let p11 = first.column_with_label("11").unwrap();
        let a = first.merge_columns(&[p00, p11]).unwrap();
        let b = ch.merge_all_equivalent().unwrap();
        let sig = |ch: &Chart| -> Vec<(Vec<String>, Vec<Entry>)> {
            ch.columns()
                .iter()
                .map(|c| {
                    (
                        c.labels.iter().map(|l| l.text.clone()).collect(),
                        c.cells.iter().map(|x| x.entry).collect(),
                    )
                })
                .collect()
        };
        assert_eq!(sig(&a), sig(&b));
    }

    #[test]
    fn example6_chart_is_diagonal() {
        let ch = Chart::build(
            &example6_table(),
            &strs(&["x2", "x4", "x5"]),
            &strs(&["x1", "x2", "x3"]),
        )
        .unwrap();
        assert_eq!(ch.c_attrs(), &["x2".to_string()]);
        assert_eq!(ch.rows().len(), 8);
        assert_eq!(ch.columns().len(), 8);
        ch.check_diagonal().unwrap();
        let groups = ch.subchart_groups().unwrap();
        assert_eq!(groups.len(), 2);
        for g in &groups {
            assert_eq!(g.rows.len(), 4);
            assert_eq!(g.cols.len(), 4);
        }
        // The cross of row Q_010 with column P_000 is a null entry.
        let r = ch
            .rows()
            .iter()
            .position(|row| row.label.text == "010")
            .unwrap();
        let c = ch.column_with_label("000").unwrap();
        assert_eq!(ch.columns()[c].cells[r].entry, Entry::Null);
    }

    #[test]
    fn compatibility_is_not_transitive_on_example7() {
        let ch = example7_chart().drop_dontcare_columns();
        let p000 = ch.column_with_label("000").unwrap();
        let p001 = ch.column_with_label("001").unwrap();
        let p110 = ch.column_with_label("110").unwrap();
        assert!(ch.columns_compatible(p000, p001));
        assert!(ch.columns_compatible(p000, p110));
        assert!(!ch.columns_compatible(p001, p110));
        // Equivalence refuses to answer with `-` entries in play.
        assert!(matches!(
            ch.columns_equivalent(p000, p001),
            Err(Error::EquivalenceOnDontCare)
        ));
    }

    #[test]
    fn all_dontcare_column_is_compatible_with_everything() {
        let ch = example7_chart();
        let p010 = ch.column_with_label("010").unwrap();
        for j in 0..ch.columns().len() {
            assert!(ch.columns_compatible(p010, j));
        }
    }

    #[test]
    fn dropping_when_nothing_qualifies_is_a_no_op() {
        let ch = example1_chart();
        let dropped = ch.drop_dontcare_columns();
        assert_eq!(dropped.columns().len(), 4);
        assert!(dropped.dropped().is_empty());
    }

    #[test]
    fn dropping_dontcare_columns_removes_p010() {
        let ch = example7_chart();
        assert_eq!(ch.columns().len(), 8);
        let dropped = ch.drop_dontcare_columns();
        assert_eq!(dropped.columns().len(), 7);
        assert!(dropped.column_with_label("010").is_none());
        assert_eq!(dropped.dropped().len(), 1);
        assert_eq!(dropped.dropped()[0].labels[0].text, "010");
        dropped.check_accounting().unwrap();
    }

    #[test]
    fn merging_a_compatible_clique_resolves_dontcares() {
        let ch = example7_chart().drop_dontcare_columns();
        let clique: Vec<usize> = ["000", "001", "011", "111"]
            .iter()
            .map(|t| ch.column_with_label(t).unwrap())
            .collect();
        let merged = ch.merge_groups(&[clique]).unwrap();
        let col = merged.column_with_label("011").unwrap();
        let q11 = merged
            .rows()
            .iter()
            .position(|r| r.label.text == "11")
            .unwrap();
        assert_eq!(merged.columns()[col].cells[q11].entry, Entry::Value(Val::Sym(1)));
    }

    #[test]
    fn all_dontcare_chart_degenerates_to_no_columns() {
        use crate::relation::{Attribute, Relation};
        let schema = vec![
            Attribute::input(Domain::binary("a")),
            Attribute::input(Domain::binary("b")),
            Attribute::output(Domain::binary("f")),
        ];
        let rows = &[
            vec!["0", "0", "-"],
            vec!["0", "1", "-"],
            vec!["1", "0", "-"],
            vec!["1", "1", "-"],
        ];
        let r = Relation::from_named(schema, rows).unwrap();
        let ch = Chart::build(&r, &strs(&["a"]), &strs(&["b"]))
            .unwrap()
            .drop_dontcare_columns();
        assert!(ch.columns().is_empty());
        assert_eq!(ch.dropped().len(), 2);
        ch.check_accounting().unwrap();
    }

    #[test]
    fn render_uses_phi_for_null_and_dash_for_dontcare() {
        let ch = Chart::build(
            &example6_table(),
            &strs(&["x2", "x4", "x5"]),
            &strs(&["x1", "x2", "x3"]),
        )
        .unwrap();
        let text = ch.render("M_ZY");
        assert!(text.contains('φ'));
        assert!(text.contains("P_000"));
        assert!(text.contains("Q_010"));
        let ch7 = example7_chart();
        assert!(ch7.render("M_ZY").contains('-'));
    }
}
