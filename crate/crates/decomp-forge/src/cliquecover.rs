//! Compatible graphs over chart columns and minimum clique partitions (MCP).
//!
//! An MCP of the compatible graph is a minimum proper coloring of its
//! complement, so the exact solver is a branch-and-bound search over
//! restricted-growth assignments: node i may join an existing class it is
//! fully adjacent to, or open the next class. That enumeration visits every
//! set partition exactly once and in a fixed order, which doubles as the
//! canonical tie-break among optima.

use crate::chart::Chart;
use crate::error::{Error, Result};

pub const DEFAULT_EXACT_BOUND: usize = 24;

/// Symmetric compatibility adjacency over chart column indices.
#[derive(Debug, Clone)]
pub struct CompatGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl CompatGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> CompatGraph {
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a != b {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
        CompatGraph { n, adj }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adj[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Disjoint cliques covering all nodes, blocks in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CliquePartition {
    pub cliques: Vec<Vec<usize>>,
}

impl CliquePartition {
    /// All pairs inside each block adjacent, blocks disjoint, union complete.
    pub fn validate(&self, g: &CompatGraph) -> bool {
        let mut seen = vec![false; g.len()];
        for clique in &self.cliques {
            for (i, &a) in clique.iter().enumerate() {
                if seen[a] {
                    return false;
                }
                seen[a] = true;
                for &b in &clique[i + 1..] {
                    if !g.adjacent(a, b) {
                        return false;
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    fn canonicalize(mut self) -> CliquePartition {
        for c in &mut self.cliques {
            c.sort_unstable();
        }
        self.cliques.sort();
        self
    }
}

/// Pairwise compatibility of the chart's columns. All-don't-care columns
/// must already have been dropped.
pub fn build_compat_graph(chart: &Chart) -> CompatGraph {
    let n = chart.columns().len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if chart.columns_compatible(i, j) {
                edges.push((i, j));
            }
        }
    }
    CompatGraph::new(n, &edges)
}

struct Search<'g> {
    g: &'g CompatGraph,
    classes: Vec<Vec<usize>>,
    limit: usize,
    found: Vec<CliquePartition>,
    cap: Option<usize>,
}

impl<'g> Search<'g> {
    fn run(g: &CompatGraph, limit: usize, cap: Option<usize>) -> Vec<CliquePartition> {
        let mut s = Search {
            g,
            classes: Vec::new(),
            limit,
            found: Vec::new(),
            cap,
        };
        s.assign(0);
        s.found
    }

    fn assign(&mut self, node: usize) {
        if self.cap.is_some_and(|c| self.found.len() >= c) {
            return;
        }
        if node == self.g.len() {
            self.found.push(
                CliquePartition {
                    cliques: self.classes.clone(),
                }
                .canonicalize(),
            );
            return;
        }
        for c in 0..self.classes.len() {
            if self.classes[c].iter().all(|&m| self.g.adjacent(m, node)) {
                self.classes[c].push(node);
                self.assign(node + 1);
                self.classes[c].pop();
            }
        }
        if self.classes.len() < self.limit {
            self.classes.push(vec![node]);
            self.assign(node + 1);
            self.classes.pop();
        }
    }
}

fn check_bound(g: &CompatGraph, bound: usize) -> Result<()> {
    if g.len() > bound {
        Err(Error::NodeBoundExceeded(g.len(), bound))
    } else {
        Ok(())
    }
}

/// Smallest number of cliques under which the search finds a cover.
fn minimum_size(g: &CompatGraph) -> usize {
    if g.is_empty() {
        return 0;
    }
    let upper = mcp_greedy(g).len();
    let mut k = 1;
    loop {
        if k >= upper || !Search::run(g, k, Some(1)).is_empty() {
            return k;
        }
        k += 1;
    }
}

/// Minimum clique partition; among multiple optima the tie-break picks the
/// first one in restricted-growth order.
pub fn mcp_exact(g: &CompatGraph) -> Result<CliquePartition> {
    mcp_exact_bounded(g, DEFAULT_EXACT_BOUND)
}

/// Same with a caller-chosen node bound for the exact search.
pub fn mcp_exact_bounded(g: &CompatGraph, bound: usize) -> Result<CliquePartition> {
    check_bound(g, bound)?;
    if g.is_empty() {
        return Ok(CliquePartition { cliques: vec![] });
    }
    let k = minimum_size(g);
    let first = Search::run(g, k, Some(1)).into_iter().next();
    let partition = first.expect("a partition of minimum size exists");
    debug_assert!(partition.validate(g));
    Ok(partition)
}

/// Every minimum clique partition, in canonical (restricted-growth) order,
/// truncated at `limit`. The search visits each set partition exactly once,
/// so the discovery order is already canonical and starts with the exact
/// solver's answer.
pub fn mcp_enumerate(g: &CompatGraph, limit: usize) -> Result<Vec<CliquePartition>> {
    check_bound(g, DEFAULT_EXACT_BOUND)?;
    if g.is_empty() {
        return Ok(vec![CliquePartition { cliques: vec![] }]);
    }
    let k = minimum_size(g);
    let mut all = Search::run(g, k, None);
    all.truncate(limit);
    debug_assert!(all.iter().all(|p| p.validate(g)));
    Ok(all)
}

/// Greedy sequential cover in canonical node order: each node joins the first
/// clique it is adjacent to in full, or opens a new one. Valid but not
/// necessarily minimum.
pub fn mcp_greedy(g: &CompatGraph) -> CliquePartition {
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for node in 0..g.len() {
        match cliques
            .iter_mut()
            .find(|c| c.iter().all(|&m| g.adjacent(m, node)))
        {
            Some(c) => c.push(node),
            None => cliques.push(vec![node]),
        }
    }
    let partition = CliquePartition { cliques }.canonicalize();
    debug_assert!(partition.validate(g));
    partition
}

/// Exhaustive minimum over all set partitions; test oracle for small graphs.
pub fn mcp_brute_force(g: &CompatGraph) -> (usize, Vec<CliquePartition>) {
    if g.is_empty() {
        return (0, vec![CliquePartition { cliques: vec![] }]);
    }
    let all = Search::run(g, g.len(), None);
    let min = all.iter().map(|p| p.len()).min().unwrap();
    (min, all.into_iter().filter(|p| p.len() == min).collect())
}
