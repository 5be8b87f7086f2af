//! Partitions of a relation's tuple ids and their lattice operations.
//!
//! The ordering follows refinement: `p1 <= p2` means every block of `p1` is
//! contained in a block of `p2`, so the bottom element is the all-singleton
//! partition and the top element is the single block. Canonical form sorts
//! block members ascending and blocks by their smallest member.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{Relation, TupleId, Val};

/// Label of a block induced by an attribute set: the common value vector.
/// `keys` order values by their domain position, `text` is the rendered form
/// used in charts (`00`, `lo,hi`, ...).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockLabel {
    pub keys: Vec<Val>,
    pub text: String,
}

impl BlockLabel {
    pub fn render(names: &[&str]) -> String {
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(",")
        }
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone)]
pub struct Block {
    pub members: Vec<TupleId>,
    pub label: Option<BlockLabel>,
}

#[derive(Debug, Clone)]
pub struct Partition {
    universe: Vec<TupleId>,
    blocks: Vec<Block>,
    index: BTreeMap<TupleId, usize>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe
            && self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.members == b.members)
    }
}

impl Eq for Partition {}

impl Partition {
    /// Build from raw blocks; validates the disjoint-cover property and puts
    /// the result in canonical form.
    pub fn from_blocks(
        mut universe: Vec<TupleId>,
        blocks: Vec<(Vec<TupleId>, Option<BlockLabel>)>,
    ) -> Result<Partition> {
        universe.sort_unstable();
        universe.dedup();
        let mut canon: Vec<Block> = Vec::with_capacity(blocks.len());
        for (mut members, label) in blocks {
            if members.is_empty() {
                return Err(Error::InternalCheck("empty partition block".into()));
            }
            members.sort_unstable();
            members.dedup();
            canon.push(Block { members, label });
        }
        canon.sort_by_key(|b| b.members[0]);
        let mut index = BTreeMap::new();
        for (bi, b) in canon.iter().enumerate() {
            for &id in &b.members {
                if index.insert(id, bi).is_some() {
                    return Err(Error::InternalCheck(format!(
                        "tuple t{id} appears in two blocks"
                    )));
                }
            }
        }
        let covered: Vec<TupleId> = index.keys().copied().collect();
        if covered != universe {
            return Err(Error::InternalCheck(
                "blocks do not cover the universe".into(),
            ));
        }
        Ok(Partition {
            universe,
            blocks: canon,
            index,
        })
    }

    /// The one-block partition (top element); zero blocks on an empty universe.
    pub fn top(universe: Vec<TupleId>) -> Partition {
        let blocks = if universe.is_empty() {
            vec![]
        } else {
            vec![(universe.clone(), None)]
        };
        Partition::from_blocks(universe, blocks).expect("top is well formed")
    }

    /// The all-singleton partition (bottom element).
    pub fn bottom(universe: Vec<TupleId>) -> Partition {
        let blocks = universe.iter().map(|&id| (vec![id], None)).collect();
        Partition::from_blocks(universe, blocks).expect("bottom is well formed")
    }

    /// Group the relation's tuples by their value on `attrs`, labeling each
    /// block with the shared value vector. The empty attribute set induces
    /// the top partition.
    pub fn induced(relation: &Relation, attrs: &[String]) -> Result<Partition> {
        let idx = relation.attr_indices(attrs)?;
        if idx.is_empty() {
            return Ok(Partition::top(relation.ids()));
        }
        let mut groups: BTreeMap<Vec<Val>, Vec<TupleId>> = BTreeMap::new();
        for t in relation.tuples() {
            let key: Vec<Val> = idx.iter().map(|&i| t.values[i]).collect();
            groups.entry(key).or_default().push(t.id);
        }
        let blocks = groups
            .into_iter()
            .map(|(keys, members)| {
                let names: Vec<&str> = idx
                    .iter()
                    .zip(&keys)
                    .map(|(&i, &v)| relation.value_name(i, v))
                    .collect();
                let label = BlockLabel {
                    text: BlockLabel::render(&names),
                    keys,
                };
                (members, Some(label))
            })
            .collect();
        Partition::from_blocks(relation.ids(), blocks)
    }

    pub fn universe(&self) -> &[TupleId] {
        &self.universe
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `id`.
    pub fn block_of(&self, id: TupleId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn is_bottom(&self) -> bool {
        self.blocks.iter().all(|b| b.members.len() == 1)
    }

    pub fn is_top(&self) -> bool {
        self.blocks.len() <= 1
    }

    fn check_universe(&self, other: &Partition) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Greatest lower bound: blocks are the nonempty pairwise intersections.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_universe(other)?;
        let mut groups: BTreeMap<(usize, usize), Vec<TupleId>> = BTreeMap::new();
        for &id in &self.universe {
            let key = (
                self.block_of(id).expect("covered"),
                other.block_of(id).expect("covered"),
            );
            groups.entry(key).or_default().push(id);
        }
        Partition::from_blocks(
            self.universe.clone(),
            groups.into_values().map(|m| (m, None)).collect(),
        )
    }

    /// Lowest upper bound: connected components of block co-membership,
    /// computed by union-find.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_universe(other)?;
        let mut uf = UnionFind::new(self.universe.len());
        let pos: BTreeMap<TupleId, usize> = self
            .universe
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, i))
            .collect();
        for part in [self, other] {
            for b in &part.blocks {
                let first = pos[&b.members[0]];
                for &id in &b.members[1..] {
                    uf.unite(first, pos[&id]);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<TupleId>> = BTreeMap::new();
        for (i, &id) in self.universe.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(id);
        }
        Partition::from_blocks(
            self.universe.clone(),
            groups.into_values().map(|m| (m, None)).collect(),
        )
    }

    /// Refinement test: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.check_universe(other)?;
        for b in &self.blocks {
            let target = other.block_of(b.members[0]).expect("covered");
            if b.members[1..]
                .iter()
                .any(|&id| other.block_of(id) != Some(target))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.members
                    .iter()
                    .map(|id| format!("t{id}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(" | "))
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn unite(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.rank[ra] < self.rank[rb] {
            self.parent[ra] = rb;
        } else {
            if self.rank[ra] == self.rank[rb] {
                self.rank[ra] += 1;
            }
            self.parent[rb] = ra;
        }
    }
}
