//! Core graph, coloring and conflict-graph types shared by every solver.
//!
//! Vertices are the integers `1..=n`, colors the integers `1..=r`. All types
//! are immutable after construction and cheap to clone; solvers treat their
//! inputs as value-semantic snapshots.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut edges = BTreeSet::new();
        let mut adj = vec![BTreeSet::new(); n + 1];
        for &(u, v) in edge_list {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            edges.insert((u.min(v), u.max(v)));
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, edges, adj })
    }

    /// Graph with no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph::new(n, &[]).unwrap()
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 1..=n {
            for v in (u + 1)..=n {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).unwrap()
    }

    /// Cycle 1-2-...-n-1. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut e: Vec<_> = (1..n).map(|u| (u, u + 1)).collect();
        e.push((n, 1));
        Graph::new(n, &e).unwrap()
    }

    /// Path 1-2-...-n.
    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|u| (u, u + 1)).collect();
        Graph::new(n, &e).unwrap()
    }

    /// Star with center 1 and `k` leaves `2..=k+1`.
    pub fn star(k: usize) -> Self {
        let e: Vec<_> = (2..=k + 1).map(|v| (1, v)).collect();
        Graph::new(k + 1, &e).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Edges as pairs `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff the graph is a tree (connected with exactly n-1 edges).
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() == self.n - 1 && self.is_connected()
    }

    /// Checks that `phi` colors exactly the vertices of this graph.
    pub fn check_domain(&self, phi: &Coloring) -> Result<()> {
        if phi.n() != self.n {
            return Err(Error::InvalidInput(format!(
                "coloring covers {} vertices, graph has {}",
                phi.n(),
                self.n
            )));
        }
        Ok(())
    }

    /// True iff no edge is monochromatic under `phi` and, when lists are
    /// given, every vertex holds a color from its list.
    pub fn is_proper(&self, phi: &Coloring, lists: Option<&ColorLists>) -> bool {
        assert_eq!(phi.n(), self.n, "coloring domain mismatch");
        if let Some(ls) = lists {
            for v in self.vertices() {
                if !ls.allows(v, phi.color(v)) {
                    return false;
                }
            }
        }
        self.edges().all(|(u, v)| phi.color(u) != phi.color(v))
    }

    /// The subgraph induced by the monochromatic edges under `phi`.
    pub fn conflict_graph(&self, phi: &Coloring) -> ConflictGraph {
        assert_eq!(phi.n(), self.n, "coloring domain mismatch");
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| phi.color(u) == phi.color(v))
            .collect();
        let mut vertices = BTreeSet::new();
        for &(u, v) in &edges {
            vertices.insert(u);
            vertices.insert(v);
        }
        ConflictGraph { edges, vertices }
    }

    /// Size of a greedily grown maximal matching of the conflict graph.
    ///
    /// Any repair of `phi` must recolor an endpoint of every conflict edge,
    /// i.e. the changed set is a vertex cover of the conflict graph, and
    /// every vertex cover is at least as large as any matching. A greedy
    /// maximal matching is cheaper than a maximum one and still a valid
    /// lower bound.
    pub fn matching_lower_bound(&self, phi: &Coloring) -> usize {
        self.conflict_graph(phi).greedy_matching()
    }
}

/// A total assignment of colors `1..=r` to vertices `1..=n`. May be improper.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<usize>, // index v-1 holds the color of vertex v
    r: usize,
}

impl Coloring {
    /// `colors[i]` is the color of vertex `i + 1`; all must lie in `1..=r`.
    pub fn new(colors: Vec<usize>, r: usize) -> Result<Self> {
        for (i, &c) in colors.iter().enumerate() {
            if c == 0 || c > r {
                return Err(Error::InvalidInput(format!(
                    "vertex {} has color {} outside 1..={}",
                    i + 1,
                    c,
                    r
                )));
            }
        }
        Ok(Coloring { colors, r })
    }

    /// Every vertex gets color `c`.
    pub fn uniform(n: usize, c: usize, r: usize) -> Result<Self> {
        Coloring::new(vec![c; n], r)
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Palette size.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colors
    }

    /// Copy with vertex `v` recolored to `c`.
    pub fn recolored(&self, v: usize, c: usize) -> Result<Self> {
        if c == 0 || c > self.r {
            return Err(Error::InvalidInput(format!(
                "color {} outside 1..={}",
                c, self.r
            )));
        }
        let mut colors = self.colors.clone();
        colors[v - 1] = c;
        Ok(Coloring { colors, r: self.r })
    }

    /// Same assignment re-read under a (larger) palette.
    pub fn with_palette(&self, r: usize) -> Result<Self> {
        Coloring::new(self.colors.clone(), r)
    }

    /// Hamming distance: the number of vertices whose colors differ.
    /// Panics when the domains differ; palettes may differ.
    pub fn distance(&self, other: &Coloring) -> usize {
        assert_eq!(self.n(), other.n(), "coloring domain mismatch");
        self.colors
            .iter()
            .zip(&other.colors)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Vertices on which the two colorings differ, sorted.
    pub fn differing_vertices(&self, other: &Coloring) -> Vec<usize> {
        assert_eq!(self.n(), other.n(), "coloring domain mismatch");
        (1..=self.n())
            .filter(|&v| self.color(v) != other.color(v))
            .collect()
    }
}

/// Per-vertex sets of allowed colors for the list variant of the problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorLists {
    lists: Vec<BTreeSet<usize>>, // index v-1
    r: usize,
}

impl ColorLists {
    /// Every list must be a nonempty subset of `1..=r`.
    pub fn new(lists: Vec<BTreeSet<usize>>, r: usize) -> Result<Self> {
        for (i, l) in lists.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidInput(format!("empty list at vertex {}", i + 1)));
            }
            if let Some(&c) = l.iter().find(|&&c| c == 0 || c > r) {
                return Err(Error::InvalidInput(format!(
                    "list of vertex {} contains color {} outside 1..={}",
                    i + 1,
                    c,
                    r
                )));
            }
        }
        Ok(ColorLists { lists, r })
    }

    /// All vertices allowed the full palette.
    pub fn full(n: usize, r: usize) -> Self {
        let all: BTreeSet<usize> = (1..=r).collect();
        ColorLists {
            lists: vec![all; n],
            r,
        }
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn list(&self, v: usize) -> &BTreeSet<usize> {
        &self.lists[v - 1]
    }

    pub fn allows(&self, v: usize, c: usize) -> bool {
        self.lists[v - 1].contains(&c)
    }
}

/// The monochromatic edges of a graph under some coloring, together with
/// their incident vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    edges: Vec<(usize, usize)>,
    vertices: BTreeSet<usize>,
}

impl ConflictGraph {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Greedy maximal matching over the edges in sorted order.
    pub fn greedy_matching(&self) -> usize {
        let mut used = BTreeSet::new();
        let mut size = 0;
        for &(u, v) in &self.edges {
            if !used.contains(&u) && !used.contains(&v) {
                used.insert(u);
                used.insert(v);
                size += 1;
            }
        }
        size
    }
}

/// Outcome of an exact solve: the minimum number of recolorings together
/// with a witness, or infeasibility (the palette is too small, or the lists
/// admit no proper list coloring at all).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixResult {
    Optimal { k_star: usize, witness: Coloring },
    Infeasible,
}

impl FixResult {
    pub fn is_optimal(&self) -> bool {
        matches!(self, FixResult::Optimal { .. })
    }

    pub fn k_star(&self) -> Option<usize> {
        match self {
            FixResult::Optimal { k_star, .. } => Some(*k_star),
            FixResult::Infeasible => None,
        }
    }

    pub fn witness(&self) -> Option<&Coloring> {
        match self {
            FixResult::Optimal { witness, .. } => Some(witness),
            FixResult::Infeasible => None,
        }
    }

    /// Checks the full contract of an optimal result against the instance:
    /// the witness is proper (and respects the lists), lies at distance
    /// exactly `k_star` from `phi`, and `k_star` dominates the matching
    /// lower bound. Infeasible results pass vacuously.
    pub fn verify(&self, g: &Graph, phi: &Coloring, lists: Option<&ColorLists>) -> bool {
        match self {
            FixResult::Infeasible => true,
            FixResult::Optimal { k_star, witness } => {
                g.is_proper(witness, lists)
                    && phi.distance(witness) == *k_star
                    && *k_star >= g.matching_lower_bound(phi)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loops_and_bad_indices() {
        assert!(matches!(Graph::new(3, &[(1, 1)]), Err(Error::InvalidInput(_))));
        assert!(matches!(Graph::new(2, &[(1, 3)]), Err(Error::InvalidInput(_))));
        assert!(matches!(Graph::new(2, &[(0, 1)]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::new(3, &[(1, 2), (2, 1), (1, 2)]).unwrap();
        assert_eq!(g.m(), 1);
        assert!(g.has_edge(2, 1));
    }

    #[test]
    fn adjacency_matches_edges() {
        let g = Graph::new(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        for (u, v) in g.edges() {
            assert!(g.neighbors(u).contains(&v));
            assert!(g.neighbors(v).contains(&u));
        }
        assert_eq!(g.degree(2), 2);
    }

    #[test]
    fn coloring_rejects_out_of_range() {
        assert!(Coloring::new(vec![1, 3], 2).is_err());
        assert!(Coloring::new(vec![0], 2).is_err());
        assert!(Coloring::new(vec![1, 2], 2).is_ok());
    }

    #[test]
    fn proper_on_single_edge() {
        let g = Graph::new(2, &[(1, 2)]).unwrap();
        assert!(!g.is_proper(&Coloring::new(vec![1, 1], 2).unwrap(), None));
        assert!(g.is_proper(&Coloring::new(vec![1, 2], 2).unwrap(), None));
    }

    #[test]
    fn proper_respects_lists() {
        let g = Graph::edgeless(1);
        let phi = Coloring::new(vec![1], 2).unwrap();
        let lists = ColorLists::new(vec![[2].into_iter().collect()], 2).unwrap();
        assert!(!g.is_proper(&phi, Some(&lists)));
        assert!(g.is_proper(&phi, None));
    }

    #[test]
    fn empty_lists_are_rejected() {
        assert!(ColorLists::new(vec![BTreeSet::new()], 2).is_err());
        assert!(ColorLists::new(vec![[3].into_iter().collect()], 2).is_err());
    }

    #[test]
    fn conflict_graph_of_triangle() {
        let g = Graph::complete(3);
        let all1 = Coloring::uniform(3, 1, 3).unwrap();
        let cg = g.conflict_graph(&all1);
        assert_eq!(cg.edge_count(), 3);
        let proper = Coloring::new(vec![1, 2, 3], 3).unwrap();
        assert!(g.conflict_graph(&proper).is_empty());
    }

    #[test]
    fn conflict_graph_of_path() {
        let g = Graph::path(3);
        let phi = Coloring::new(vec![1, 1, 2], 2).unwrap();
        let cg = g.conflict_graph(&phi);
        assert_eq!(cg.edges(), &[(1, 2)]);
        assert_eq!(cg.vertices().len(), 2);
    }

    #[test]
    fn distance_basics() {
        let a = Coloring::new(vec![1, 2, 1], 2).unwrap();
        assert_eq!(a.distance(&a), 0);
        let b = Coloring::new(vec![1, 2, 2], 2).unwrap();
        assert_eq!(a.distance(&b), 1);
        let c = Coloring::new(vec![2; 5], 2).unwrap();
        let d = Coloring::new(vec![1; 5], 2).unwrap();
        assert_eq!(c.distance(&d), 5);
    }

    #[test]
    #[should_panic(expected = "domain mismatch")]
    fn distance_rejects_domain_mismatch() {
        let a = Coloring::uniform(2, 1, 2).unwrap();
        let b = Coloring::uniform(3, 1, 2).unwrap();
        let _ = a.distance(&b);
    }

    #[test]
    fn matching_bound_examples() {
        let g = Graph::complete(3);
        assert_eq!(g.matching_lower_bound(&Coloring::new(vec![1, 2, 3], 3).unwrap()), 0);
        assert_eq!(g.matching_lower_bound(&Coloring::uniform(3, 1, 3).unwrap()), 1);
        let two = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(two.matching_lower_bound(&Coloring::uniform(4, 1, 2).unwrap()), 2);
    }

    #[test]
    fn components_and_connectivity() {
        let g = Graph::new(5, &[(1, 2), (4, 5)]).unwrap();
        assert_eq!(g.components(), vec![vec![1, 2], vec![3], vec![4, 5]]);
        assert!(!g.is_connected());
        assert!(Graph::path(4).is_tree());
        assert!(!Graph::cycle(4).is_tree());
    }
}
