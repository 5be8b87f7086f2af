//! The bipartite graph spanned by two partitions of the same tuple set, and
//! the two topology tests the dependency theory rests on: forks (functional
//! dependency) and uniform graphs (multi-valued dependency).
//!
//! Nodes are the blocks of the two partitions; every tuple contributes one
//! edge between the blocks containing it. Parallel edges are kept, because
//! uniformity counts edge multiplicities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::relation::TupleId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub left: usize,
    pub right: usize,
    pub tuple: TupleId,
}

#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    left: Partition,
    right: Partition,
    edges: Vec<Edge>,
}

/// Connected components; each lists its block indices on both sides and the
/// indices of its edges, ordered by smallest tuple id.
#[derive(Debug, Clone)]
pub struct ComponentSet {
    pub components: Vec<Component>,
}

#[derive(Debug, Clone)]
pub struct Component {
    pub left_blocks: Vec<usize>,
    pub right_blocks: Vec<usize>,
    pub edges: Vec<usize>,
}

impl BipartiteGraph {
    /// One edge per universe element, between the blocks containing it.
    pub fn build(left: Partition, right: Partition) -> Result<BipartiteGraph> {
        if left.universe() != right.universe() {
            return Err(Error::UniverseMismatch);
        }
        let edges = left
            .universe()
            .iter()
            .map(|&id| Edge {
                left: left.block_of(id).expect("covered"),
                right: right.block_of(id).expect("covered"),
                tuple: id,
            })
            .collect();
        Ok(BipartiteGraph { left, right, edges })
    }

    pub fn left(&self) -> &Partition {
        &self.left
    }

    pub fn right(&self) -> &Partition {
        &self.right
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Connected components via union-find over block nodes.
    pub fn connected_components(&self) -> ComponentSet {
        let nl = self.left.num_blocks();
        let nr = self.right.num_blocks();
        let mut parent: Vec<usize> = (0..nl + nr).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        // Right-block nodes live at offset nl in the union-find arena.
        for e in &self.edges {
            let a = find(&mut parent, e.left);
            let b = find(&mut parent, nl + e.right);
            if a != b {
                parent[a] = b;
            }
        }
        // Group by root; order components by their smallest tuple id.
        let mut groups: BTreeMap<usize, Component> = BTreeMap::new();
        let mut first_tuple: BTreeMap<usize, TupleId> = BTreeMap::new();
        for (ei, e) in self.edges.iter().enumerate() {
            let root = find(&mut parent, e.left);
            let c = groups.entry(root).or_insert_with(|| Component {
                left_blocks: vec![],
                right_blocks: vec![],
                edges: vec![],
            });
            c.edges.push(ei);
            first_tuple.entry(root).or_insert(e.tuple);
            if !c.left_blocks.contains(&e.left) {
                c.left_blocks.push(e.left);
            }
            if !c.right_blocks.contains(&e.right) {
                c.right_blocks.push(e.right);
            }
        }
        let mut components: Vec<(TupleId, Component)> = groups
            .into_iter()
            .map(|(root, mut c)| {
                c.left_blocks.sort_unstable();
                c.right_blocks.sort_unstable();
                (first_tuple[&root], c)
            })
            .collect();
        components.sort_by_key(|(first, _)| *first);
        ComponentSet {
            components: components.into_iter().map(|(_, c)| c).collect(),
        }
    }

    /// Fork test: every left block sends all of its edges into a single right
    /// block. Equivalent to the left partition refining the right one.
    pub fn is_fork(&self) -> bool {
        let mut target: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.edges {
            match target.insert(e.left, e.right) {
                Some(prev) if prev != e.right => return false,
                _ => {}
            }
        }
        true
    }

    /// Uniformity test: inside every connected component, each (left block,
    /// right block) pair carries exactly one edge, so each component is a
    /// complete bipartite subgraph with unit multiplicities.
    pub fn is_uniform(&self) -> bool {
        for c in &self.connected_components().components {
            let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for &ei in &c.edges {
                let e = self.edges[ei];
                *mult.entry((e.left, e.right)).or_insert(0) += 1;
            }
            if mult.values().any(|&m| m != 1) {
                return false;
            }
            if mult.len() != c.left_blocks.len() * c.right_blocks.len() {
                return false;
            }
        }
        true
    }

    /// Emit the graph in DOT format, one color per component. Documentation
    /// aid only.
    pub fn to_dot(&self) -> String {
        let comps = self.connected_components();
        let mut color_of_left: BTreeMap<usize, usize> = BTreeMap::new();
        let mut color_of_right: BTreeMap<usize, usize> = BTreeMap::new();
        for (ci, c) in comps.components.iter().enumerate() {
            for &l in &c.left_blocks {
                color_of_left.insert(l, ci);
            }
            for &r in &c.right_blocks {
                color_of_right.insert(r, ci);
            }
        }
        let label = |p: &Partition, i: usize, side: &str| {
            let block = &p.blocks()[i];
            match &block.label {
                Some(l) => format!("{side}{i} [label=\"{}\"]", l.text),
                None => {
                    let members: Vec<String> =
                        block.members.iter().map(|id| format!("t{id}")).collect();
                    format!("{side}{i} [label=\"{{{}}}\"]", members.join(" "))
                }
            }
        };
        let mut out = String::from("graph bipartite {\n");
        for i in 0..self.left.num_blocks() {
            let _ = writeln!(
                out,
                "  {}; // component {}",
                label(&self.left, i, "L"),
                color_of_left.get(&i).copied().unwrap_or(0)
            );
        }
        for i in 0..self.right.num_blocks() {
            let _ = writeln!(
                out,
                "  {}; // component {}",
                label(&self.right, i, "R"),
                color_of_right.get(&i).copied().unwrap_or(0)
            );
        }
        for e in &self.edges {
            let _ = writeln!(out, "  L{} -- R{} [label=\"t{}\"];", e.left, e.right, e.tuple);
        }
        out.push_str("}\n");
        out
    }
}

/// Tuple-id sets of the connected components, for cross-checks against the
/// partition join.
pub fn component_tuple_sets(g: &BipartiteGraph) -> Vec<BTreeSet<TupleId>> {
    g.connected_components()
        .components
        .iter()
        .map(|c| c.edges.iter().map(|&ei| g.edges()[ei].tuple).collect())
        .collect()
}
