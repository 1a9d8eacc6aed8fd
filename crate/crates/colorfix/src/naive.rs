//! Small brute-force reference implementations.
//!
//! These exist so the test suites can check the real solvers and reductions
//! against something independently simple: full enumeration, nothing shared
//! with the production code paths. They are exponential and meant for tiny
//! inputs only.

use std::collections::BTreeMap;

use crate::graph::{ColorLists, Coloring, Graph};

/// Minimum vertex cover size by scanning all vertex subsets. `n <= ~20`.
pub fn min_vertex_cover(g: &Graph) -> usize {
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = n;
    for mask in 0usize..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        if edges
            .iter()
            .all(|&(u, v)| mask & (1 << (u - 1)) != 0 || mask & (1 << (v - 1)) != 0)
        {
            best = size;
        }
    }
    best
}

/// True iff the precoloring extends to a proper 3-coloring of `g`.
/// Assignments outside 1..=3 in `precolored` are never extendable.
pub fn preext3_extends(g: &Graph, precolored: &BTreeMap<usize, usize>) -> bool {
    if precolored.values().any(|&c| c == 0 || c > 3) {
        return false;
    }
    let n = g.n();
    let mut colors = vec![0usize; n + 1];
    fn rec(g: &Graph, pre: &BTreeMap<usize, usize>, colors: &mut Vec<usize>, v: usize) -> bool {
        if v > g.n() {
            return true;
        }
        let choices: Vec<usize> = match pre.get(&v) {
            Some(&c) => vec![c],
            None => vec![1, 2, 3],
        };
        for c in choices {
            if g.neighbors(v).iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                if rec(g, pre, colors, v + 1) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }
    rec(g, precolored, &mut colors, 1)
}

/// Smallest `r` admitting a proper r-coloring, by backtracking.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    fn colorable(g: &Graph, r: usize, colors: &mut Vec<usize>, v: usize) -> bool {
        if v > g.n() {
            return true;
        }
        for c in 1..=r {
            if g.neighbors(v).iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                if colorable(g, r, colors, v + 1) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }
    for r in 1..=g.n() {
        let mut colors = vec![0usize; g.n() + 1];
        if colorable(g, r, &mut colors, 1) {
            return r;
        }
    }
    unreachable!("every graph is n-colorable")
}

/// Minimum recoloring distance by scanning all r^n colorings; `None` when no
/// proper (list-)coloring exists.
pub fn min_fix_by_full_scan(
    g: &Graph,
    phi: &Coloring,
    lists: Option<&ColorLists>,
) -> Option<usize> {
    let n = g.n();
    let r = phi.r();
    let mut best: Option<usize> = None;
    let mut cur = vec![1usize; n];
    loop {
        let cand = Coloring::new(cur.clone(), r).unwrap();
        if g.is_proper(&cand, lists) {
            let d = phi.distance(&cand);
            best = Some(best.map_or(d, |b| b.min(d)));
        }
        // increment mixed-radix counter
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            if cur[i - 1] < r {
                cur[i - 1] += 1;
                break;
            }
            cur[i - 1] = 1;
            i -= 1;
        }
    }
}

/// Maximum total weight over all ordered partitions of the vertices into
/// `d` parts, scanning all d^n assignments. The weight of part `i` is
/// `-(vertices that leave color class i)` for independent parts and
/// `-(r * n)` otherwise, matching the set-partition solver's encoding.
pub fn max_partition_value_by_full_scan(
    g: &Graph,
    phi: &Coloring,
    d: usize,
    lists: Option<&ColorLists>,
) -> i64 {
    let n = g.n();
    let penalty = -((d * n) as i64);
    let mut best = i64::MIN;
    let mut assign = vec![1usize; n];
    loop {
        let mut total = 0i64;
        for color in 1..=d {
            let part: Vec<usize> = (1..=n).filter(|&v| assign[v - 1] == color).collect();
            let independent = part
                .iter()
                .enumerate()
                .all(|(i, &u)| part[i + 1..].iter().all(|&v| !g.has_edge(u, v)));
            let list_ok = lists.map_or(true, |ls| part.iter().all(|&v| ls.allows(v, color)));
            if independent && list_ok {
                total -= part.iter().filter(|&&v| phi.color(v) != color).count() as i64;
            } else {
                total += penalty;
            }
        }
        best = best.max(total);
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            if assign[i - 1] < d {
                assign[i - 1] += 1;
                break;
            }
            assign[i - 1] = 1;
            i -= 1;
        }
    }
}

/// Exact treewidth via all elimination orderings. `n <= ~8`.
pub fn treewidth_by_elimination(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (1..=n).collect();
    let mut best = n.saturating_sub(1);
    permute(&mut order, 0, &mut |perm| {
        let mut adj: Vec<u64> = vec![0; n + 1];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let mut alive: u64 = ((1u64 << n) - 1) << 1;
        let mut width = 0usize;
        for &v in perm.iter() {
            let nb = adj[v] & alive;
            width = width.max(nb.count_ones() as usize);
            // make the remaining neighborhood a clique, drop v
            let mut bits = nb;
            while bits != 0 {
                let a = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                adj[a] |= nb;
                adj[a] &= !(1 << a);
            }
            alive &= !(1 << v);
        }
        best = best.min(width);
    });
    best
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Color-respecting subgraph embedding test for partitioned-host instances:
/// does a mapping `pattern vertex i -> host vertex in part i` exist with all
/// pattern edges present in the host?
pub fn msi_has_embedding(host: &Graph, parts: &[Vec<usize>], pattern: &Graph) -> bool {
    let k = pattern.n();
    assert_eq!(parts.len(), k);
    fn rec(host: &Graph, parts: &[Vec<usize>], pattern: &Graph, pick: &mut Vec<usize>) -> bool {
        let i = pick.len();
        if i == pattern.n() {
            return true;
        }
        for &cand in &parts[i] {
            let ok = (0..i).all(|j| {
                !pattern.has_edge(j + 1, i + 1) || host.has_edge(pick[j], cand)
            });
            if ok {
                pick.push(cand);
                if rec(host, parts, pattern, pick) {
                    return true;
                }
                pick.pop();
            }
        }
        false
    }
    rec(host, parts, pattern, &mut Vec::with_capacity(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_cover_basics() {
        assert_eq!(min_vertex_cover(&Graph::path(3)), 1);
        assert_eq!(min_vertex_cover(&Graph::complete(3)), 2);
        assert_eq!(min_vertex_cover(&Graph::edgeless(4)), 0);
    }

    #[test]
    fn preext_basics() {
        let g = Graph::new(2, &[(1, 2)]).unwrap();
        assert!(preext3_extends(&g, &BTreeMap::new()));
        let same: BTreeMap<_, _> = [(1, 1), (2, 1)].into_iter().collect();
        assert!(!preext3_extends(&g, &same));
        assert!(!preext3_extends(&Graph::complete(4), &BTreeMap::new()));
    }

    #[test]
    fn chromatic_basics() {
        assert_eq!(chromatic_number(&Graph::edgeless(3)), 1);
        assert_eq!(chromatic_number(&Graph::complete(4)), 4);
        assert_eq!(chromatic_number(&Graph::cycle(5)), 3);
    }

    #[test]
    fn full_scan_fix_on_triangle() {
        let g = Graph::complete(3);
        let phi = Coloring::uniform(3, 1, 3).unwrap();
        assert_eq!(min_fix_by_full_scan(&g, &phi, None), Some(2));
        let phi2 = Coloring::uniform(3, 1, 2).unwrap();
        assert_eq!(min_fix_by_full_scan(&g, &phi2, None), None);
    }

    #[test]
    fn exact_treewidth_small() {
        assert_eq!(treewidth_by_elimination(&Graph::path(5)), 1);
        assert_eq!(treewidth_by_elimination(&Graph::cycle(4)), 2);
        assert_eq!(treewidth_by_elimination(&Graph::complete(4)), 3);
    }

    #[test]
    fn embedding_single_edge() {
        let host = Graph::new(2, &[(1, 2)]).unwrap();
        let pattern = Graph::new(2, &[(1, 2)]).unwrap();
        assert!(msi_has_embedding(&host, &[vec![1], vec![2]], &pattern));
        let host2 = Graph::edgeless(2);
        assert!(!msi_has_embedding(&host2, &[vec![1], vec![2]], &pattern));
    }
}
