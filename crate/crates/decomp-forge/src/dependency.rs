//! Decision procedures for functional and multi-valued dependencies.
//!
//! Each predicate is computed two independent ways — the tuple-level
//! definition and the bipartite-graph topology — and the two routes are
//! compared on every call. A disagreement means the library itself is broken
//! and surfaces as an internal-consistency error, never as a wrong answer.
//!
//! Tuples with a `-` in any attribute relevant to the check are skipped:
//! dependencies are defined on fully specified relations, and checks on
//! incompletely specified tables are diagnostic only.

use std::collections::{BTreeMap, BTreeSet};

use crate::bigraph::BipartiteGraph;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::relation::{Relation, TupleId, Val};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DependencyKind {
    Functional,
    Multivalued,
}

/// A violating pair of tuples. For a functional dependency the two rows agree
/// on the left-hand side but not on the right; for a multi-valued dependency
/// no third row completes the recombination of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub t1: TupleId,
    pub t2: TupleId,
}

#[derive(Debug, Clone)]
pub struct DependencyReport {
    pub kind: DependencyKind,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub holds: bool,
    pub witness: Option<Witness>,
}

fn dedup_names(relation: &Relation, names: &[String]) -> Result<Vec<String>> {
    let idx = relation.attr_indices(names)?;
    Ok(idx
        .into_iter()
        .map(|i| relation.schema()[i].name().to_string())
        .collect())
}

/// FD lhs -> rhs: equal lhs values force equal rhs values.
pub fn holds_fd(relation: &Relation, lhs: &[String], rhs: &[String]) -> Result<DependencyReport> {
    let lhs = dedup_names(relation, lhs)?;
    let rhs = dedup_names(relation, rhs)?;
    let li = relation.attr_indices(&lhs)?;
    let ri = relation.attr_indices(&rhs)?;
    let relevant: Vec<usize> = {
        let mut v = li.clone();
        v.extend(&ri);
        v.sort_unstable();
        v.dedup();
        v
    };
    let filtered =
        relation.restrict(|t| relevant.iter().all(|&i| !t.values[i].is_dontcare()));

    // Route 1: the definition, with the first violating pair as witness.
    let mut witness = None;
    let mut groups: BTreeMap<Vec<Val>, (TupleId, Vec<Val>)> = BTreeMap::new();
    'scan: for t in filtered.tuples() {
        let key: Vec<Val> = li.iter().map(|&i| t.values[i]).collect();
        let rv: Vec<Val> = ri.iter().map(|&i| t.values[i]).collect();
        match groups.get(&key) {
            None => {
                groups.insert(key, (t.id, rv));
            }
            Some((first, prev)) => {
                if *prev != rv {
                    witness = Some(Witness { t1: *first, t2: t.id });
                    break 'scan;
                }
            }
        }
    }
    let by_definition = witness.is_none();

    // Route 2: fork topology, which is the same as partition refinement.
    let pl = Partition::induced(&filtered, &lhs)?;
    let pr = Partition::induced(&filtered, &rhs)?;
    let by_refinement = pl.refines(&pr)?;
    let by_fork = BipartiteGraph::build(pl, pr)?.is_fork();

    if by_definition != by_fork || by_definition != by_refinement {
        return Err(Error::InternalCheck(format!(
            "FD routes disagree: definition={by_definition} fork={by_fork} refinement={by_refinement}"
        )));
    }
    Ok(DependencyReport {
        kind: DependencyKind::Functional,
        lhs,
        rhs,
        holds: by_definition,
        witness,
    })
}

/// MVD lhs ->> rhs over the full schema; the complement is everything not in
/// lhs or rhs, outputs included.
pub fn holds_mvd(relation: &Relation, lhs: &[String], rhs: &[String]) -> Result<DependencyReport> {
    let lhs = dedup_names(relation, lhs)?;
    let rhs = dedup_names(relation, rhs)?;
    for n in &rhs {
        if lhs.contains(n) {
            return Err(Error::NotDisjoint(format!("`{n}` is on both sides")));
        }
    }
    let xi = relation.attr_indices(&lhs)?;
    let yi = relation.attr_indices(&rhs)?;
    let zi: Vec<usize> = (0..relation.schema().len())
        .filter(|i| !xi.contains(i) && !yi.contains(i))
        .collect();
    let filtered = relation.restrict(|t| t.values.iter().all(|v| !v.is_dontcare()));

    // Route 1: the tuple-completion definition.
    let pick = |t: &[Val], idx: &[usize]| -> Vec<Val> { idx.iter().map(|&i| t[i]).collect() };
    let mut groups: BTreeMap<Vec<Val>, Vec<&crate::relation::Tuple>> = BTreeMap::new();
    for t in filtered.tuples() {
        groups.entry(pick(&t.values, &xi)).or_default().push(t);
    }
    let mut witness = None;
    'outer: for group in groups.values() {
        let present: BTreeSet<(Vec<Val>, Vec<Val>)> = group
            .iter()
            .map(|t| (pick(&t.values, &yi), pick(&t.values, &zi)))
            .collect();
        for t1 in group {
            for t2 in group {
                let need = (pick(&t1.values, &yi), pick(&t2.values, &zi));
                if !present.contains(&need) {
                    witness = Some(Witness { t1: t1.id, t2: t2.id });
                    break 'outer;
                }
            }
        }
    }
    let by_definition = witness.is_none();

    // Route 2: the graph between the XY and XZ partitions must be uniform
    // AND its connected components must correspond one to one with the lhs
    // values. Components always refine the lhs groups, so the correspondence
    // reduces to a count; uniformity alone would miss an lhs group that
    // splits into two complete products.
    let xy: Vec<String> = lhs.iter().chain(&rhs).cloned().collect();
    let xz: Vec<String> = {
        let mut v = lhs.clone();
        v.extend(
            zi.iter()
                .map(|&i| relation.schema()[i].name().to_string()),
        );
        v
    };
    let pxy = Partition::induced(&filtered, &xy)?;
    let pxz = Partition::induced(&filtered, &xz)?;
    let graph = BipartiteGraph::build(pxy, pxz)?;
    let comps = graph.connected_components();
    for c in &comps.components {
        let keys: BTreeSet<Vec<Val>> = c
            .edges
            .iter()
            .map(|&ei| {
                let id = graph.edges()[ei].tuple;
                pick(&filtered.tuple(id).expect("present").values, &xi)
            })
            .collect();
        if keys.len() != 1 {
            return Err(Error::InternalCheck(
                "a connected component spans two lhs values".into(),
            ));
        }
    }
    let by_graph = graph.is_uniform() && comps.components.len() == groups.len();

    if by_definition != by_graph {
        return Err(Error::InternalCheck(format!(
            "MVD routes disagree: definition={by_definition} graph={by_graph}"
        )));
    }
    Ok(DependencyReport {
        kind: DependencyKind::Multivalued,
        lhs,
        rhs,
        holds: by_definition,
        witness,
    })
}

/// Lossless-join test: does `R = R[X u Y] |x| R[X u Z]` hold? Asserted to
/// agree with the MVD decision on every call.
pub fn lossless_check(
    relation: &Relation,
    x: &[String],
    y: &[String],
    z: &[String],
) -> Result<bool> {
    let x = dedup_names(relation, x)?;
    let y = dedup_names(relation, y)?;
    let z = dedup_names(relation, z)?;
    let mut seen = BTreeSet::new();
    for n in x.iter().chain(&y).chain(&z) {
        if !seen.insert(n.clone()) {
            return Err(Error::NotDisjoint(format!("`{n}` appears twice")));
        }
    }
    if seen.len() != relation.schema().len() {
        let missing: Vec<String> = relation
            .attr_names()
            .into_iter()
            .filter(|n| !seen.contains(n))
            .collect();
        return Err(Error::CoverViolation(format!(
            "attributes not covered: {}",
            missing.join(", ")
        )));
    }

    let filtered = relation.restrict(|t| t.values.iter().all(|v| !v.is_dontcare()));
    let xy: Vec<String> = x.iter().chain(&y).cloned().collect();
    let xz: Vec<String> = x.iter().chain(&z).cloned().collect();
    let left = filtered.project(&xy)?;
    let right = filtered.project(&xz)?;
    let joined = if x.is_empty() {
        cross_product(&left, &right)?
    } else {
        left.natural_join(&right)?
    };
    let equal = joined.same_content(&filtered);

    let mvd = holds_mvd(relation, &x, &y)?;
    if mvd.holds != equal {
        return Err(Error::InternalCheck(format!(
            "lossless join ({equal}) disagrees with the MVD decision ({})",
            mvd.holds
        )));
    }
    Ok(equal)
}

/// Cartesian product of two relations with disjoint schemas; only needed for
/// the empty-lhs corner of the lossless test.
fn cross_product(a: &Relation, b: &Relation) -> Result<Relation> {
    let mut schema = a.schema().to_vec();
    schema.extend(b.schema().iter().cloned());
    let mut rows = Vec::with_capacity(a.len() * b.len());
    for s in a.tuples() {
        for t in b.tuples() {
            let mut values = s.values.clone();
            values.extend(t.values.iter().copied());
            rows.push(values);
        }
    }
    rows.sort();
    Relation::new(schema, rows)
}
