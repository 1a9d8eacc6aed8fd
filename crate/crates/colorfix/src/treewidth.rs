//! Dynamic programming over tree decompositions.
//!
//! The solver stores, per bag of a nice decomposition, every proper
//! (list-)coloring of the bag together with the minimum number of
//! recolorings among the already-forgotten vertices. Recoloring cost is
//! charged when a vertex is forgotten, so join nodes combine children by
//! plain addition.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{ColorLists, Coloring, FixResult, Graph};
use crate::limits::Limits;

/// A tree of bags. Bag ids are 0-based; the tree edges connect bag ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Structural construction: ids in range, no self or duplicate tree
    /// edges. Graph-dependent conditions live in [`validate`].
    ///
    /// [`validate`]: TreeDecomposition::validate
    pub fn new(mut bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let b = bags.len();
        let mut seen = BTreeSet::new();
        for &(x, y) in &edges {
            if x >= b || y >= b {
                return Err(Error::InvalidDecomposition(format!(
                    "tree edge ({x}, {y}) out of range for {b} bags"
                )));
            }
            if x == y {
                return Err(Error::InvalidDecomposition(format!("tree self-loop at bag {x}")));
            }
            if !seen.insert((x.min(y), x.max(y))) {
                return Err(Error::InvalidDecomposition(format!(
                    "duplicate tree edge ({x}, {y})"
                )));
            }
        }
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        Ok(TreeDecomposition { bags, edges })
    }

    /// Single bag holding all vertices.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            bags: vec![g.vertices().collect()],
            edges: Vec::new(),
        }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// Checks the three decomposition conditions against `g`, plus that the
    /// bag graph is a tree. Errors name the violated condition.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let b = self.bags.len();
        if b == 0 {
            return Err(Error::InvalidDecomposition("no bags".into()));
        }
        if self.edges.len() != b - 1 {
            return Err(Error::InvalidDecomposition(format!(
                "bag graph is not a tree: {} bags need {} edges, found {}",
                b,
                b - 1,
                self.edges.len()
            )));
        }
        // connectivity of the bag tree
        let mut adj = vec![Vec::new(); b];
        for &(x, y) in &self.edges {
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut seen = vec![false; b];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut cnt = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    cnt += 1;
                    stack.push(w);
                }
            }
        }
        if cnt != b {
            return Err(Error::InvalidDecomposition(
                "bag graph is not a tree: disconnected".into(),
            ));
        }
        // vertex coverage
        let n = g.n();
        let mut holder: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v == 0 || v > n {
                    return Err(Error::InvalidDecomposition(format!(
                        "bag {i} contains vertex {v} outside 1..={n}"
                    )));
                }
                holder[v].push(i);
            }
        }
        for v in 1..=n {
            if holder[v].is_empty() {
                return Err(Error::InvalidDecomposition(format!(
                    "vertex {v} appears in no bag"
                )));
            }
        }
        // edge coverage
        for (u, v) in g.edges() {
            let inside = self
                .bags
                .iter()
                .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
            if !inside {
                return Err(Error::InvalidDecomposition(format!(
                    "edge ({u}, {v}) is inside no bag"
                )));
            }
        }
        // occurrence connectivity per vertex
        for v in 1..=n {
            let occ: BTreeSet<usize> = holder[v].iter().copied().collect();
            let start = holder[v][0];
            let mut seen = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if occ.contains(&w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            if seen.len() != occ.len() {
                return Err(Error::InvalidDecomposition(format!(
                    "bags containing vertex {v} are not connected"
                )));
            }
        }
        Ok(())
    }
}

/// Heuristic decomposition from a minimum-fill-in elimination ordering.
/// The width is an upper bound on the true treewidth.
pub fn min_fill_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            edges: Vec::new(),
        };
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..=n).map(|v| if v == 0 { BTreeSet::new() } else { g.neighbors(v).clone() }).collect();
    let mut alive: BTreeSet<usize> = (1..=n).collect();
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut pos = vec![usize::MAX; n + 1];

    for step in 0..n {
        // vertex whose neighborhood needs the fewest fill edges
        let v = *alive
            .iter()
            .min_by_key(|&&v| {
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                let mut fill = 0usize;
                for i in 0..nb.len() {
                    for j in i + 1..nb.len() {
                        if !adj[nb[i]].contains(&nb[j]) {
                            fill += 1;
                        }
                    }
                }
                (fill, v)
            })
            .unwrap();
        let mut bag: Vec<usize> = adj[v].iter().copied().collect();
        bag.push(v);
        bag.sort_unstable();
        pos[v] = step;
        bags.push(bag);
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        }
        for &u in &nb {
            adj[u].remove(&v);
        }
        adj[v].clear();
        alive.remove(&v);
    }

    let order: Vec<usize> = {
        let mut o = vec![0usize; n];
        for v in 1..=n {
            o[pos[v]] = v;
        }
        o
    };
    let mut edges = Vec::new();
    for i in 0..n {
        let vi = order[i];
        let next = bags[i]
            .iter()
            .copied()
            .filter(|&u| u != vi)
            .min_by_key(|&u| pos[u]);
        match next {
            Some(u) => edges.push((i, pos[u])),
            None if i + 1 < n => edges.push((i, i + 1)),
            None => {}
        }
    }
    let td = TreeDecomposition::new(bags, edges).expect("elimination bags are structurally valid");
    debug_assert!(td.validate(g).is_ok());
    td
}

/// Node of a nice decomposition. Children come before parents in the node
/// array; the last node is the root and has an empty bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceNode {
    Leaf,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

#[derive(Debug, Clone)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
    bags: Vec<Vec<usize>>,
    width: usize,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn bag(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn push(&mut self, node: NiceNode, bag: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }
}

/// Converts a validated decomposition into nice form of the same width:
/// leaf/introduce/forget/join nodes, empty root bag. Rooted at a leaf of
/// the bag tree, so path decompositions stay join-free.
pub fn make_nice(td: &TreeDecomposition) -> NiceTreeDecomposition {
    let b = td.bag_count();
    let mut adj = vec![Vec::new(); b];
    for &(x, y) in td.tree_edges() {
        adj[x].push(y);
        adj[y].push(x);
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
    }
    let root = (0..b).find(|&i| adj[i].len() <= 1).unwrap_or(0);

    // children lists from a BFS orientation
    let mut parent = vec![usize::MAX; b];
    let mut order = vec![root];
    parent[root] = root;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }

    let mut nice = NiceTreeDecomposition {
        nodes: Vec::new(),
        bags: Vec::new(),
        width: td.width(),
    };
    // top[u]: nice node whose bag equals bag(u), built children-first
    let mut top = vec![usize::MAX; b];
    for &u in order.iter().rev() {
        let children: Vec<usize> = adj[u].iter().copied().filter(|&w| parent[w] == u).collect();
        let bag_u = td.bags()[u].clone();
        let mut acc: Option<usize> = None;
        for c in children {
            // lift the child's top bag to bag(u): forget extras, then introduce
            let mut cur = top[c];
            let mut cur_bag = td.bags()[c].clone();
            for &v in td.bags()[c].iter().filter(|v| !bag_u.contains(v)) {
                cur_bag.retain(|&x| x != v);
                cur = nice.push(NiceNode::Forget { vertex: v, child: cur }, cur_bag.clone());
            }
            for &v in bag_u.iter().filter(|v| !td.bags()[c].contains(v)) {
                cur_bag.push(v);
                cur_bag.sort_unstable();
                cur = nice.push(NiceNode::Introduce { vertex: v, child: cur }, cur_bag.clone());
            }
            acc = Some(match acc {
                None => cur,
                Some(a) => nice.push(NiceNode::Join { left: a, right: cur }, bag_u.clone()),
            });
        }
        let built = match acc {
            Some(a) => a,
            None => {
                // leaf of the bag tree: introduce the bag from nothing
                let mut cur = nice.push(NiceNode::Leaf, Vec::new());
                let mut cur_bag = Vec::new();
                for &v in &bag_u {
                    cur_bag.push(v);
                    cur = nice.push(NiceNode::Introduce { vertex: v, child: cur }, cur_bag.clone());
                }
                cur
            }
        };
        top[u] = built;
    }
    // forget the root bag down to empty
    let mut cur = top[root];
    let mut cur_bag = td.bags()[root].clone();
    for &v in td.bags()[root].clone().iter() {
        cur_bag.retain(|&x| x != v);
        cur = nice.push(NiceNode::Forget { vertex: v, child: cur }, cur_bag.clone());
    }
    let _ = cur;
    nice
}

/// Per-node table occupancy of a DP run, for growth measurements.
#[derive(Debug, Clone)]
pub struct TwStats {
    pub width: usize,
    /// (bag size, number of valid states) per nice node.
    pub per_node: Vec<(usize, usize)>,
}

const INF: u64 = u64::MAX;

/// Exact solve by DP over a nice tree decomposition. Uses the supplied
/// decomposition (validated first) or a min-fill one.
pub fn solve_treewidth(
    g: &Graph,
    phi: &Coloring,
    lists: Option<&ColorLists>,
    td: Option<&TreeDecomposition>,
    limits: &Limits,
) -> Result<FixResult> {
    solve_treewidth_with_stats(g, phi, lists, td, limits).map(|(res, _)| res)
}

pub fn solve_treewidth_with_stats(
    g: &Graph,
    phi: &Coloring,
    lists: Option<&ColorLists>,
    td: Option<&TreeDecomposition>,
    limits: &Limits,
) -> Result<(FixResult, TwStats)> {
    g.check_domain(phi)?;
    let owned;
    let td = match td {
        Some(t) => {
            t.validate(g)?;
            t
        }
        None => {
            owned = min_fill_decomposition(g);
            &owned
        }
    };
    let r = phi.r();
    let states = (r.max(1) as u64).checked_pow(td.max_bag_size() as u32);
    match states {
        Some(s) if s <= limits.tw_max_states => {}
        _ => {
            return Err(Error::SizeGuard(format!(
                "treewidth solver refuses {}^{} bag states (limit {})",
                r,
                td.max_bag_size(),
                limits.tw_max_states
            )))
        }
    }

    let nice = make_nice(td);
    let allowed = |v: usize, c: usize| lists.map_or(true, |ls| ls.allows(v, c));

    let node_count = nice.nodes().len();
    let mut tables: Vec<Vec<u64>> = Vec::with_capacity(node_count);
    let mut choices: Vec<Vec<u8>> = vec![Vec::new(); node_count];
    let mut stats = TwStats {
        width: td.width(),
        per_node: Vec::with_capacity(node_count),
    };

    for (i, node) in nice.nodes().iter().enumerate() {
        let bag = nice.bag(i);
        let table = match *node {
            NiceNode::Leaf => vec![0u64],
            NiceNode::Introduce { vertex, child } => {
                let child_bag = nice.bag(child);
                let vpos = bag.binary_search(&vertex).unwrap();
                let child_table = &tables[child];
                let mut t = vec![INF; child_table.len() * r];
                let nbrs: Vec<usize> = bag
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| g.has_edge(u, vertex))
                    .map(|(j, _)| j)
                    .collect();
                for (s, &cost) in child_table.iter().enumerate() {
                    if cost == INF {
                        continue;
                    }
                    let child_colors = decode(s, child_bag.len(), r);
                    for c in 1..=r {
                        if !allowed(vertex, c) {
                            continue;
                        }
                        let parent_colors = insert_at(&child_colors, vpos, c);
                        if nbrs.iter().any(|&j| parent_colors[j] == c && j != vpos) {
                            continue;
                        }
                        t[encode(&parent_colors, r)] = cost;
                    }
                }
                t
            }
            NiceNode::Forget { vertex, child } => {
                let child_bag = nice.bag(child);
                let vpos = child_bag.binary_search(&vertex).unwrap();
                let child_table = &tables[child];
                let mut t = vec![INF; child_table.len() / r];
                let mut ch = vec![0u8; t.len()];
                for (s, &cost) in child_table.iter().enumerate() {
                    if cost == INF {
                        continue;
                    }
                    let child_colors = decode(s, child_bag.len(), r);
                    let c = child_colors[vpos];
                    let total = cost + u64::from(c != phi.color(vertex));
                    let ps = encode(&remove_at(&child_colors, vpos), r);
                    if total < t[ps] {
                        t[ps] = total;
                        ch[ps] = c as u8;
                    }
                }
                choices[i] = ch;
                t
            }
            NiceNode::Join { left, right } => {
                let lt = &tables[left];
                let rt = &tables[right];
                lt.iter()
                    .zip(rt.iter())
                    .map(|(&a, &b)| if a == INF || b == INF { INF } else { a + b })
                    .collect()
            }
        };
        stats
            .per_node
            .push((bag.len(), table.iter().filter(|&&c| c != INF).count()));
        tables.push(table);
    }

    let root = nice.root();
    if tables[root][0] == INF {
        return Ok((FixResult::Infeasible, stats));
    }
    let k_star = tables[root][0] as usize;

    // walk the optimum back down, reading each vertex's color at its forget
    let mut colors = vec![0usize; g.n()];
    let mut stack = vec![(root, 0usize)];
    while let Some((i, s)) = stack.pop() {
        match nice.nodes()[i] {
            NiceNode::Leaf => {}
            NiceNode::Introduce { vertex, child } => {
                let bag = nice.bag(i);
                let vpos = bag.binary_search(&vertex).unwrap();
                let cs = encode(&remove_at(&decode(s, bag.len(), r), vpos), r);
                stack.push((child, cs));
            }
            NiceNode::Forget { vertex, child } => {
                let c = choices[i][s] as usize;
                colors[vertex - 1] = c;
                let child_bag = nice.bag(child);
                let vpos = child_bag.binary_search(&vertex).unwrap();
                let bag = nice.bag(i);
                let cs = encode(&insert_at(&decode(s, bag.len(), r), vpos, c), r);
                stack.push((child, cs));
            }
            NiceNode::Join { left, right } => {
                stack.push((left, s));
                stack.push((right, s));
            }
        }
    }
    debug_assert!(colors.iter().all(|&c| c != 0) || g.n() == 0);
    let witness = Coloring::new(colors, r).unwrap();
    debug_assert_eq!(phi.distance(&witness), k_star);
    debug_assert!(g.is_proper(&witness, lists));
    Ok((FixResult::Optimal { k_star, witness }, stats))
}

fn decode(mut s: usize, len: usize, r: usize) -> Vec<usize> {
    let mut out = vec![0usize; len];
    for slot in out.iter_mut() {
        *slot = s % r + 1;
        s /= r;
    }
    out
}

fn encode(colors: &[usize], r: usize) -> usize {
    let mut s = 0usize;
    for &c in colors.iter().rev() {
        s = s * r + (c - 1);
    }
    s
}

fn insert_at(colors: &[usize], pos: usize, c: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(colors.len() + 1);
    out.extend_from_slice(&colors[..pos]);
    out.push(c);
    out.extend_from_slice(&colors[pos..]);
    out
}

fn remove_at(colors: &[usize], pos: usize) -> Vec<usize> {
    let mut out = colors.to_vec();
    out.remove(pos);
    out
}
