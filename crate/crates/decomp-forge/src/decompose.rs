//! The decomposition algorithms: disjoint column merging, multiple
//! decomposition, non-disjoint diagonal charts, and clique-partition merging
//! for incompletely specified tables. Every result carries a verification
//! report and is checked against the lossless-join criteria before it is
//! returned.

use std::collections::BTreeMap;

use rand::Rng;

use crate::chart::{Chart, Entry};
use crate::cliquecover::{self, CliquePartition};
use crate::dependency::{self, DependencyReport};
use crate::error::{Error, Result};
use crate::partition::{BlockLabel, Partition};
use crate::relation::{Attribute, Domain, Relation, Role, TupleId, Val};

/// How bridge values are written into the table: one k-valued attribute, or
/// ceil(log2 k) binary attributes carrying the block index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WEncoding {
    #[default]
    SingleVar,
    BinaryBits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum McpMode {
    #[default]
    Exact,
    Greedy,
    Enumerate,
}

/// Brute-force scale limits for the optional optimality checks: enumerating
/// all bridge partitions is a Bell-number search over the bound-set blocks.
const MAXIMALITY_BLOCK_BOUND: usize = 6;
const MINIMALITY_BLOCK_BOUND: usize = 8;

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub fd_y_w: DependencyReport,
    pub fd_wz_f: DependencyReport,
    pub mvd_w_y: DependencyReport,
    pub join_roundtrip: bool,
    pub recomposition: bool,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.fd_y_w.holds
            && self.fd_wz_f.holds
            && self.mvd_w_y.holds
            && self.join_roundtrip
            && self.recomposition
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub y_attrs: Vec<String>,
    pub z_attrs: Vec<String>,
    pub f_attr: String,
    pub w_attrs: Vec<String>,
    /// Partition of the tuple ids by bridge value; blocks carry the merged
    /// column labels.
    pub bridge_partition: Partition,
    /// Constituent bound-set block labels per bridge block, in canonical
    /// block order. Dropped columns are not listed.
    pub w_block_labels: Vec<Vec<String>>,
    pub w_domain: Domain,
    pub w_assignment: BTreeMap<TupleId, usize>,
    /// The table with the bridge attribute(s) assigned. For incompletely
    /// specified inputs, outputs are resolved to their merged chart entries.
    pub relation_w: Relation,
    pub table_g: Relation,
    pub table_h: Relation,
    pub k: usize,
    pub bits: u32,
    pub nontrivial: bool,
    pub final_chart: Chart,
    pub verification: VerificationReport,
    /// Theorem check at small scale: every valid bridge partition refines
    /// this one. None when the instance is too large for brute force.
    pub maximality: Option<bool>,
    /// Corollary check at small scale: no valid bridge partition has fewer
    /// blocks. None when too large or not applicable.
    pub minimality: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct MultiVerificationReport {
    pub fd_joint: DependencyReport,
    pub mvd_parts: Vec<DependencyReport>,
    pub join_roundtrip: bool,
    pub recomposition: bool,
}

impl MultiVerificationReport {
    pub fn all_ok(&self) -> bool {
        self.fd_joint.holds
            && self.mvd_parts.iter().all(|m| m.holds)
            && self.join_roundtrip
            && self.recomposition
    }
}

#[derive(Debug, Clone)]
pub struct MultiDecomposition {
    pub parts: Vec<Decomposition>,
    pub z_attrs: Vec<String>,
    pub relation_w: Relation,
    pub table_h: Relation,
    pub verification: MultiVerificationReport,
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

fn validate_split(relation: &Relation, y: &[String], z: &[String], disjoint: bool) -> Result<()> {
    let yi = relation.attr_indices(y)?;
    let zi = relation.attr_indices(z)?;
    let overlap: Vec<String> = yi
        .iter()
        .filter(|i| zi.contains(i))
        .map(|&i| relation.schema()[i].name().to_string())
        .collect();
    if disjoint && !overlap.is_empty() {
        return Err(Error::NonDisjointSets);
    }
    if !disjoint && overlap.is_empty() {
        return Err(Error::DisjointSets);
    }
    Ok(())
}

/// Disjoint decomposition: exhaustively merge equivalent chart columns; the
/// final chart's columns are the bridge partition.
pub fn fda_alpha(relation: &Relation, y: &[String], z: &[String]) -> Result<Decomposition> {
    fda_alpha_named(relation, y, z, "W", WEncoding::SingleVar)
}

pub fn fda_alpha_named(
    relation: &Relation,
    y: &[String],
    z: &[String],
    w_name: &str,
    encoding: WEncoding,
) -> Result<Decomposition> {
    if relation.has_dontcare() {
        return Err(Error::DontCarePresent);
    }
    validate_split(relation, y, z, true)?;
    let chart = Chart::build(relation, y, z)?;
    let final_chart = chart.merge_all_equivalent()?;
    let mut d = build_decomposition(relation, final_chart, w_name, encoding)?;
    d.maximality = maximality_check(relation, &d)?;
    Ok(d)
}

/// Multiple decomposition: one disjoint pass per bound set, then a joint
/// output table over all bridge variables and the shared free set.
pub fn fda_beta(
    relation: &Relation,
    bound_sets: &[Vec<String>],
    z: &[String],
) -> Result<MultiDecomposition> {
    if relation.has_dontcare() {
        return Err(Error::DontCarePresent);
    }
    if bound_sets.is_empty() {
        return Err(Error::CoverViolation("no bound sets given".into()));
    }
    // Bound sets must be pairwise disjoint and cover the inputs with z.
    let mut seen: Vec<usize> = relation.attr_indices(z)?;
    for ys in bound_sets {
        for i in relation.attr_indices(ys)? {
            if seen.contains(&i) {
                return Err(Error::NotDisjoint(format!(
                    "`{}` appears in two sets",
                    relation.schema()[i].name()
                )));
            }
            seen.push(i);
        }
    }
    seen.sort_unstable();
    if seen != relation.input_indices() {
        return Err(Error::CoverViolation(
            "bound sets and free set must cover the inputs".into(),
        ));
    }

    let inputs = relation.input_names();
    let mut parts = Vec::with_capacity(bound_sets.len());
    for (k, ys) in bound_sets.iter().enumerate() {
        let zk: Vec<String> = inputs.iter().filter(|n| !ys.contains(n)).cloned().collect();
        let name = format!("W{}", k + 1);
        parts.push(fda_alpha_named(relation, ys, &zk, &name, WEncoding::SingleVar)?);
    }

    // Assign every bridge variable on one copy of the table.
    let mut relation_w = relation.clone();
    for part in &parts {
        let w = part.w_attrs[0].clone();
        let assignment = part.w_assignment.clone();
        relation_w = relation_w.with_attribute(
            Attribute::bridge(part.w_domain.clone()),
            move |t| Val::Sym(assignment[&t.id] as u8),
        )?;
        debug_assert_eq!(relation_w.schema().last().unwrap().name(), w);
    }
    let w_names: Vec<String> = parts.iter().map(|p| p.w_attrs[0].clone()).collect();
    let f_attr = parts[0].f_attr.clone();

    let mut h_attrs = w_names.clone();
    h_attrs.extend(z.iter().cloned());
    h_attrs.push(f_attr.clone());
    let table_h = relation_w.project(&h_attrs)?.reorder_attrs(&h_attrs)?;

    let mut lhs = w_names.clone();
    lhs.extend(z.iter().cloned());
    let fd_joint = dependency::holds_fd(&relation_w, &lhs, std::slice::from_ref(&f_attr))?;
    if !fd_joint.holds {
        let w = fd_joint.witness.expect("failing FD has a witness");
        return Err(Error::JointDependencyFailed(
            lhs.join(","),
            f_attr,
            format!("t{}", w.t1),
            format!("t{}", w.t2),
        ));
    }
    let mvd_parts: Vec<DependencyReport> = parts
        .iter()
        .zip(bound_sets)
        .map(|(p, ys)| dependency::holds_mvd(&relation_w, &p.w_attrs, ys))
        .collect::<Result<_>>()?;

    let mut joined = table_h.clone();
    for part in &parts {
        joined = joined.natural_join(&part.table_g)?;
    }
    let join_roundtrip = joined.same_content(&relation_w);
    let recomposition = recomposition_agrees(relation, &joined, &f_attr)?;

    Ok(MultiDecomposition {
        parts,
        z_attrs: z.to_vec(),
        relation_w,
        table_h,
        verification: MultiVerificationReport {
            fd_joint,
            mvd_parts,
            join_roundtrip,
            recomposition,
        },
    })
}

/// Non-disjoint decomposition: per-sub-chart merging, then a deterministic
/// pairing of columns across sub-charts. Delegates to the disjoint algorithm
/// when the sets do not actually overlap.
pub fn fda_gamma(relation: &Relation, y: &[String], z: &[String]) -> Result<Decomposition> {
    let candidates = fda_gamma_opts(relation, y, z, 1, WEncoding::SingleVar)?;
    Ok(candidates.into_iter().next().expect("at least one pairing"))
}

/// All maximal cross-sub-chart pairings, deterministic first.
pub fn fda_gamma_enumerate(
    relation: &Relation,
    y: &[String],
    z: &[String],
    limit: usize,
) -> Result<Vec<Decomposition>> {
    fda_gamma_opts(relation, y, z, limit.max(1), WEncoding::SingleVar)
}

pub fn fda_gamma_opts(
    relation: &Relation,
    y: &[String],
    z: &[String],
    limit: usize,
    encoding: WEncoding,
) -> Result<Vec<Decomposition>> {
    let limit = limit.max(1);
    if relation.has_dontcare() {
        return Err(Error::DontCarePresent);
    }
    let yi = relation.attr_indices(y)?;
    let zi = relation.attr_indices(z)?;
    if !yi.iter().any(|i| zi.contains(i)) {
        // No shared attributes: plain disjoint decomposition.
        return Ok(vec![fda_alpha_named(relation, y, z, "W", encoding)?]);
    }
    let chart = Chart::build(relation, y, z)?;
    chart.check_diagonal()?;
    let intermediate = chart.merge_all_equivalent()?;

    // Sub-charts ordered by descending column count; the largest pins the
    // slots, every other sub-chart's columns are placed injectively.
    let mut groups = intermediate.subchart_groups()?;
    groups.sort_by(|a, b| b.cols.len().cmp(&a.cols.len()).then(a.c_keys.cmp(&b.c_keys)));
    let lambda = groups.first().map(|g| g.cols.len()).unwrap_or(0);

    let mut assignments: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut slots: Vec<Vec<usize>> = groups[0].cols.iter().map(|&c| vec![c]).collect();
    enumerate_pairings(&groups[1..], lambda, &mut slots, &mut assignments, limit);

    let mut out = Vec::with_capacity(assignments.len());
    for slots in assignments {
        let merged = intermediate.merge_groups(&slots)?;
        if merged.columns().len() != lambda {
            return Err(Error::InternalCheck(format!(
                "merged chart has {} columns, expected {lambda}",
                merged.columns().len()
            )));
        }
        let mut d = build_decomposition(relation, merged, "W", encoding)?;
        d.minimality = minimality_check(relation, &d)?;
        out.push(d);
    }
    Ok(out)
}

/// Depth-first enumeration of injective slot assignments, one sub-chart at a
/// time. The first completed assignment matches the deterministic pairing:
/// columns in canonical order go to slots in canonical order.
fn enumerate_pairings(
    rest: &[crate::chart::SubGroup],
    lambda: usize,
    slots: &mut Vec<Vec<usize>>,
    found: &mut Vec<Vec<Vec<usize>>>,
    limit: usize,
) {
    if found.len() >= limit {
        return;
    }
    match rest.first() {
        None => found.push(slots.clone()),
        Some(group) => {
            let mut chosen = vec![usize::MAX; group.cols.len()];
            place(group, 0, lambda, &mut chosen, slots, rest, found, limit);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn place(
    group: &crate::chart::SubGroup,
    i: usize,
    lambda: usize,
    chosen: &mut Vec<usize>,
    slots: &mut Vec<Vec<usize>>,
    rest: &[crate::chart::SubGroup],
    found: &mut Vec<Vec<Vec<usize>>>,
    limit: usize,
) {
    if found.len() >= limit {
        return;
    }
    if i == group.cols.len() {
        enumerate_pairings(&rest[1..], lambda, slots, found, limit);
        return;
    }
    for s in 0..lambda {
        if chosen[..i].contains(&s) {
            continue;
        }
        chosen[i] = s;
        slots[s].push(group.cols[i]);
        place(group, i + 1, lambda, chosen, slots, rest, found, limit);
        slots[s].pop();
        chosen[i] = usize::MAX;
    }
}

/// Incompletely specified decomposition: drop all-don't-care columns, build
/// the compatible graph, merge the cliques of one or all minimum clique
/// partitions.
pub fn fda_delta(
    relation: &Relation,
    y: &[String],
    z: &[String],
    mode: McpMode,
    limit: usize,
) -> Result<Vec<Decomposition>> {
    fda_delta_opts(relation, y, z, mode, limit, WEncoding::SingleVar)
}

pub fn fda_delta_opts(
    relation: &Relation,
    y: &[String],
    z: &[String],
    mode: McpMode,
    limit: usize,
    encoding: WEncoding,
) -> Result<Vec<Decomposition>> {
    validate_split(relation, y, z, true)?;
    let chart = Chart::build(relation, y, z)?.drop_dontcare_columns();
    let graph = cliquecover::build_compat_graph(&chart);
    let mcps: Vec<CliquePartition> = match mode {
        McpMode::Exact => vec![cliquecover::mcp_exact(&graph)?],
        McpMode::Greedy => vec![cliquecover::mcp_greedy(&graph)],
        McpMode::Enumerate => cliquecover::mcp_enumerate(&graph, limit.max(1))?,
    };
    let mut out = Vec::with_capacity(mcps.len());
    for mcp in mcps {
        let merged = chart.merge_groups(&mcp.cliques)?;
        out.push(build_decomposition(relation, merged, "W", encoding)?);
    }
    Ok(out)
}

/// Add bridge attributes for an arbitrary partition of the tuple ids.
/// Single-var mode appends one attribute whose value is the canonical block
/// code; binary-bits mode appends ceil(log2 k) binary attributes (most
/// significant first) carrying the block index.
pub fn assign_w(
    relation: &Relation,
    pw: &Partition,
    w_name: &str,
    encoding: WEncoding,
) -> Result<Relation> {
    if pw.universe() != relation.ids() {
        return Err(Error::UniverseMismatch);
    }
    let k = pw.num_blocks().max(1);
    let mut out = relation.clone();
    match encoding {
        WEncoding::SingleVar => {
            let domain = w_code_domain(w_name, k)?;
            let pw = pw.clone();
            out = out.with_attribute(Attribute::bridge(domain), move |t| {
                Val::Sym(pw.block_of(t.id).expect("covered") as u8)
            })?;
        }
        WEncoding::BinaryBits => {
            let bits = ceil_log2(k as u64).max(1);
            for j in (0..bits).rev() {
                let domain = Domain::binary(&format!("{w_name}{j}"));
                let pw = pw.clone();
                out = out.with_attribute(Attribute::bridge(domain), move |t| {
                    let idx = pw.block_of(t.id).expect("covered");
                    Val::Sym(((idx >> j) & 1) as u8)
                })?;
            }
        }
    }
    Ok(out)
}

fn w_code_domain(name: &str, k: usize) -> Result<Domain> {
    // Domains need two values even for a constant bridge variable.
    let codes: Vec<String> = (0..k.max(2)).map(|c| c.to_string()).collect();
    let refs: Vec<&str> = codes.iter().map(|s| s.as_str()).collect();
    Domain::new(name, &refs)
}

/// Check that two previously emitted sub-tables recombine into the original
/// table: same content when the original is fully specified, agreement on
/// every specified cell (with full input coverage and nothing spurious) when
/// it is not.
pub fn verify_tables(original: &Relation, g: &Relation, h: &Relation) -> Result<bool> {
    let joined = g.natural_join(h)?;
    let projected = joined.project(&original.attr_names())?;
    if !original.has_dontcare() {
        return Ok(projected.same_content(original));
    }
    if projected.len() != original.len() {
        return Ok(false);
    }
    let inputs = original.input_indices();
    let proj_idx: Vec<usize> = original
        .schema()
        .iter()
        .map(|a| projected.attr_index(a.name()))
        .collect::<Result<_>>()?;
    let mut by_inputs: BTreeMap<Vec<Val>, Vec<Val>> = BTreeMap::new();
    for t in projected.tuples() {
        let key: Vec<Val> = inputs.iter().map(|&i| t.values[proj_idx[i]]).collect();
        let row: Vec<Val> = proj_idx.iter().map(|&i| t.values[i]).collect();
        if by_inputs.insert(key, row).is_some() {
            return Ok(false);
        }
    }
    for t in original.tuples() {
        let key: Vec<Val> = inputs.iter().map(|&i| t.values[i]).collect();
        match by_inputs.get(&key) {
            None => return Ok(false),
            Some(row) => {
                for (i, (&a, &b)) in t.values.iter().zip(row).enumerate() {
                    let _ = i;
                    if !a.is_dontcare() && a != b {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Join the two sub-tables back together and project onto the original
/// attributes.
pub fn recompose(d: &Decomposition) -> Result<Relation> {
    let joined = d.table_g.natural_join(&d.table_h)?;
    let mut attrs = d.y_attrs.clone();
    attrs.extend(d.z_attrs.iter().cloned());
    attrs.push(d.f_attr.clone());
    joined.project(&attrs)
}

/// Common tail of every algorithm: bridge partition from the merged chart,
/// bridge assignment, sub-tables, and the full verification report.
fn build_decomposition(
    relation: &Relation,
    final_chart: Chart,
    w_name: &str,
    encoding: WEncoding,
) -> Result<Decomposition> {
    let y_attrs = final_chart.y_attrs().to_vec();
    let z_attrs = final_chart.z_attrs().to_vec();
    let c_attrs = final_chart.c_attrs().to_vec();
    let f_attr = final_chart.f_attr().to_string();
    final_chart.check_accounting()?;

    // Blocks of the bridge partition: one per final column; the tuples of
    // dropped all-don't-care columns go to the block holding the smallest
    // tuple id, since any block is valid for them.
    let mut blocks: Vec<(Vec<TupleId>, Vec<String>)> = final_chart
        .columns()
        .iter()
        .map(|col| {
            let texts = col.labels.iter().map(|l| l.text.clone()).collect();
            (col.tuples(), texts)
        })
        .collect();
    let dropped_ids: Vec<TupleId> = final_chart
        .dropped()
        .iter()
        .flat_map(|c| c.tuples())
        .collect();
    let mut target_col = None;
    if !dropped_ids.is_empty() {
        if blocks.is_empty() {
            // Degenerate: the whole function is unspecified.
            blocks.push((dropped_ids.clone(), vec![]));
        } else {
            let t = blocks
                .iter()
                .enumerate()
                .min_by_key(|(_, (ids, _))| ids[0])
                .map(|(i, _)| i)
                .unwrap();
            blocks[t].0.extend(&dropped_ids);
            blocks[t].0.sort_unstable();
            target_col = Some(t);
        }
    }
    blocks.sort_by_key(|(ids, _)| ids[0]);
    // Label texts stay in domain order, matching the chart column headers.
    let w_block_labels: Vec<Vec<String>> = blocks.iter().map(|(_, t)| t.clone()).collect();
    let bridge_partition = Partition::from_blocks(
        relation.ids().to_vec(),
        blocks
            .into_iter()
            .map(|(ids, texts)| {
                let label = BlockLabel {
                    keys: vec![],
                    text: texts.join("v"),
                };
                (ids, Some(label))
            })
            .collect(),
    )?;
    let k = bridge_partition.num_blocks();
    let bits = ceil_log2(k as u64);

    // Resolve outputs to the merged chart entries. Tuples of dropped columns
    // adopt the entry of the block they were assigned to.
    let mut resolved: BTreeMap<TupleId, Val> = BTreeMap::new();
    for col in final_chart.columns() {
        for cell in &col.cells {
            let v = match cell.entry {
                Entry::Value(v) => v,
                Entry::DontCare => Val::DontCare,
                Entry::Null => continue,
            };
            for &id in &cell.tuples {
                resolved.insert(id, v);
            }
        }
    }
    let row_of = final_chart.row_of_tuple();
    for &id in &dropped_ids {
        let v = match target_col {
            None => Val::DontCare,
            Some(t) => match final_chart.columns()[t].cells[row_of[&id]].entry {
                Entry::Value(v) => v,
                _ => Val::DontCare,
            },
        };
        resolved.insert(id, v);
    }
    let resolved_relation = relation.map_attribute(&f_attr, |t| resolved[&t.id])?;

    let relation_w = assign_w(&resolved_relation, &bridge_partition, w_name, encoding)?;
    let w_attrs: Vec<String> = relation_w
        .schema()
        .iter()
        .filter(|a| a.role == Role::Bridge)
        .map(|a| a.name().to_string())
        .collect();
    let w_domain = w_code_domain(w_name, k)?;
    let w_assignment: BTreeMap<TupleId, usize> = relation
        .ids()
        .into_iter()
        .map(|id| (id, bridge_partition.block_of(id).expect("covered")))
        .collect();

    let mut g_attrs = y_attrs.clone();
    g_attrs.extend(w_attrs.iter().cloned());
    let mut table_g = relation_w.project(&g_attrs)?;
    if encoding == WEncoding::SingleVar {
        table_g = table_g.with_role(&w_attrs[0], Role::Output)?;
    }
    let mut h_attrs = w_attrs.clone();
    h_attrs.extend(z_attrs.iter().cloned());
    h_attrs.push(f_attr.clone());
    let table_h = relation_w.project(&h_attrs)?.reorder_attrs(&h_attrs)?;

    // Verification: the two functional dependencies, the multi-valued
    // dependency (over the shared attributes in the non-disjoint case), the
    // join round-trip and per-tuple recomposition.
    let fd_y_w = dependency::holds_fd(&relation_w, &y_attrs, &w_attrs)?;
    let mut wz = w_attrs.clone();
    wz.extend(z_attrs.iter().cloned());
    let fd_wz_f = dependency::holds_fd(&relation_w, &wz, std::slice::from_ref(&f_attr))?;
    let mut wc = w_attrs.clone();
    wc.extend(c_attrs.iter().cloned());
    let y_minus_c: Vec<String> = y_attrs
        .iter()
        .filter(|n| !c_attrs.contains(n))
        .cloned()
        .collect();
    let mvd_w_y = dependency::holds_mvd(&relation_w, &wc, &y_minus_c)?;

    let joined = table_g.natural_join(&table_h)?;
    let join_roundtrip = joined.same_content(&relation_w);
    let recomposition = recomposition_agrees(relation, &joined, &f_attr)?;

    let nontrivial = {
        let mut y_space: u64 = 1;
        for name in &y_attrs {
            y_space = y_space.saturating_mul(relation.attr(name)?.domain.len() as u64);
        }
        bits < ceil_log2(y_space)
    };

    Ok(Decomposition {
        y_attrs,
        z_attrs,
        f_attr,
        w_attrs,
        bridge_partition,
        w_block_labels,
        w_domain,
        w_assignment,
        relation_w,
        table_g,
        table_h,
        k,
        bits,
        nontrivial,
        final_chart,
        verification: VerificationReport {
            fd_y_w,
            fd_wz_f,
            mvd_w_y,
            join_roundtrip,
            recomposition,
        },
        maximality: None,
        minimality: None,
    })
}

/// The recomposed table must reproduce the original on every tuple whose
/// output is specified, cover exactly the same input vectors, and introduce
/// nothing spurious.
fn recomposition_agrees(original: &Relation, joined: &Relation, f_attr: &str) -> Result<bool> {
    let inputs = original.input_names();
    let mut attrs = inputs.clone();
    attrs.push(f_attr.to_string());
    let rec = joined.project(&attrs)?;
    if rec.len() != original.len() {
        return Ok(false);
    }
    let in_idx: Vec<usize> = inputs.iter().map(|n| rec.attr_index(n).unwrap()).collect();
    let f_rec = rec.attr_index(f_attr)?;
    let mut by_inputs: BTreeMap<Vec<Val>, Val> = BTreeMap::new();
    for t in rec.tuples() {
        let key: Vec<Val> = in_idx.iter().map(|&i| t.values[i]).collect();
        if by_inputs.insert(key, t.values[f_rec]).is_some() {
            return Ok(false);
        }
    }
    let orig_in: Vec<usize> = inputs
        .iter()
        .map(|n| original.attr_index(n).unwrap())
        .collect();
    let f_orig = original.attr_index(f_attr)?;
    for t in original.tuples() {
        let key: Vec<Val> = orig_in.iter().map(|&i| t.values[i]).collect();
        match by_inputs.get(&key) {
            None => return Ok(false),
            Some(&v) => {
                if !t.values[f_orig].is_dontcare() && v != t.values[f_orig] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Enumerate all partitions of the bound-set blocks and confirm that every
/// one satisfying the three decomposition properties refines the bridge
/// partition found by the algorithm.
fn maximality_check(relation: &Relation, d: &Decomposition) -> Result<Option<bool>> {
    let py = Partition::induced(relation, &d.y_attrs)?;
    if py.num_blocks() > MAXIMALITY_BLOCK_BOUND {
        return Ok(None);
    }
    for pw_star in partitions_of_blocks(relation, &py) {
        if is_valid_bridge(relation, d, &pw_star)? && !pw_star.refines(&d.bridge_partition)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Confirm no valid bridge partition has fewer blocks than the one found.
fn minimality_check(relation: &Relation, d: &Decomposition) -> Result<Option<bool>> {
    let py = Partition::induced(relation, &d.y_attrs)?;
    if py.num_blocks() > MINIMALITY_BLOCK_BOUND {
        return Ok(None);
    }
    for pw_star in partitions_of_blocks(relation, &py) {
        if pw_star.num_blocks() < d.k && is_valid_bridge(relation, d, &pw_star)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// All partitions of the tuple ids that group whole blocks of `py`,
/// enumerated by restricted growth over the block indices.
fn partitions_of_blocks(relation: &Relation, py: &Partition) -> Vec<Partition> {
    let m = py.num_blocks();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; m];
    fn rec(
        relation: &Relation,
        py: &Partition,
        assignment: &mut Vec<usize>,
        i: usize,
        classes: usize,
        out: &mut Vec<Partition>,
    ) {
        let m = assignment.len();
        if i == m {
            let mut blocks: Vec<Vec<TupleId>> = vec![Vec::new(); classes];
            for (b, &cls) in assignment.iter().enumerate() {
                blocks[cls].extend(&py.blocks()[b].members);
            }
            let partition = Partition::from_blocks(
                relation.ids().to_vec(),
                blocks.into_iter().map(|b| (b, None)).collect(),
            )
            .expect("well formed");
            out.push(partition);
            return;
        }
        for c in 0..=classes.min(i) {
            assignment[i] = c;
            let next = classes.max(c + 1);
            rec(relation, py, assignment, i + 1, next, out);
        }
    }
    if m > 0 {
        rec(relation, py, &mut assignment, 0, 0, &mut out);
    }
    out
}

/// The three properties a bridge partition must satisfy; the FD from the
/// bound set holds by construction for unions of bound-set blocks.
fn is_valid_bridge(relation: &Relation, d: &Decomposition, pw: &Partition) -> Result<bool> {
    let star = assign_w(relation, pw, "_Wstar", WEncoding::SingleVar)?;
    let mut wz = vec!["_Wstar".to_string()];
    wz.extend(d.z_attrs.iter().cloned());
    if !dependency::holds_fd(&star, &wz, std::slice::from_ref(&d.f_attr))?.holds {
        return Ok(false);
    }
    let c_attrs: Vec<String> = d
        .y_attrs
        .iter()
        .filter(|n| d.z_attrs.contains(n))
        .cloned()
        .collect();
    let mut wc = vec!["_Wstar".to_string()];
    wc.extend(c_attrs.iter().cloned());
    let y_minus_c: Vec<String> = d
        .y_attrs
        .iter()
        .filter(|n| !c_attrs.contains(n))
        .cloned()
        .collect();
    Ok(dependency::holds_mvd(&star, &wc, &y_minus_c)?.holds)
}

/// Merge equivalent columns one random pair at a time; the final chart must
/// not depend on the order. Exercised by the shuffle self-test.
pub fn merge_equivalent_shuffled<R: Rng>(chart: &Chart, rng: &mut R) -> Result<Chart> {
    let mut current = chart.clone();
    loop {
        let n = current.columns().len();
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for i in (1..pairs.len()).rev() {
            pairs.swap(i, rng.gen_range(0..=i));
        }
        let mut merged_any = false;
        for (i, j) in pairs {
            if current.columns_equivalent(i, j)? {
                current = current.merge_columns(&[i, j])?;
                merged_any = true;
                break;
            }
        }
        if !merged_any {
            return Ok(current);
        }
    }
}

/// Block labels of the bridge partition, for comparisons against published
/// results: each block as the list of its constituent column labels in
/// domain order.
pub fn block_label_sets(d: &Decomposition) -> Vec<Vec<String>> {
    d.w_block_labels.clone()
}
