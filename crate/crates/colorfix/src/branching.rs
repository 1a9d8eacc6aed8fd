//! Bounded-depth branching solver.
//!
//! As long as the coloring is improper some conflict edge xy exists and any
//! repair within budget k must recolor x or y first; recursing on the
//! 2(r-1) single-vertex recolorings with budget k-1 is therefore complete.
//! With color lists, a vertex whose current color is not on its list must be
//! recolored in every solution, so those are branched first (at most r
//! children, which stays within the 2(r-1) factor for r >= 2).

use crate::graph::{ColorLists, Coloring, FixResult, Graph};

#[derive(Debug, Clone, Copy)]
pub struct BranchConfig {
    /// Give up on a branch as soon as the greedy matching of the current
    /// conflict graph exceeds the remaining budget. Sound because every
    /// repair covers the conflict edges. Disable to measure the bare
    /// search tree.
    pub prune: bool,
}

impl Default for BranchConfig {
    fn default() -> Self {
        BranchConfig { prune: true }
    }
}

/// Result of one budgeted search: a witness within distance `budget` of the
/// input (if any) and the number of branching nodes explored.
///
/// `branch_nodes` counts the calls that actually selected a vertex or edge
/// and branched; calls that terminate immediately (proper coloring, zero
/// budget, pruned) are not counted. The count including the root never
/// exceeds `(2(r-1))^budget + 1`.
#[derive(Debug, Clone)]
pub struct BranchOutcome {
    pub witness: Option<Coloring>,
    pub branch_nodes: u64,
}

struct Searcher<'a> {
    g: &'a Graph,
    r: usize,
    lists: Option<&'a ColorLists>,
    config: BranchConfig,
    colors: Vec<usize>, // index v-1
    nodes: u64,
}

impl<'a> Searcher<'a> {
    fn allowed(&self, v: usize) -> Vec<usize> {
        match self.lists {
            Some(ls) => ls.list(v).iter().copied().collect(),
            None => (1..=self.r).collect(),
        }
    }

    fn list_violation(&self) -> Option<usize> {
        let ls = self.lists?;
        (1..=self.g.n()).find(|&v| !ls.allows(v, self.colors[v - 1]))
    }

    /// Conflict edges under the working coloring.
    fn conflicts(&self) -> Vec<(usize, usize)> {
        self.g
            .edges()
            .filter(|&(u, v)| self.colors[u - 1] == self.colors[v - 1])
            .collect()
    }

    fn greedy_matching(conflicts: &[(usize, usize)]) -> usize {
        let mut used = std::collections::BTreeSet::new();
        let mut size = 0;
        for &(u, v) in conflicts {
            if !used.contains(&u) && !used.contains(&v) {
                used.insert(u);
                used.insert(v);
                size += 1;
            }
        }
        size
    }

    fn search(&mut self, budget: usize) -> bool {
        let conflicts = self.conflicts();
        let violated = self.list_violation();
        if conflicts.is_empty() && violated.is_none() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        if self.config.prune && Self::greedy_matching(&conflicts) > budget {
            return false;
        }
        self.nodes += 1;

        if let Some(v) = violated {
            // v keeps an off-list color, so every repair recolors it
            for c in self.allowed(v) {
                if c == self.colors[v - 1] {
                    continue;
                }
                let old = self.colors[v - 1];
                self.colors[v - 1] = c;
                if self.search(budget - 1) {
                    return true;
                }
                self.colors[v - 1] = old;
            }
            return false;
        }

        // conflict edge with maximum combined conflict degree, lowest pair first
        let mut degree = std::collections::BTreeMap::new();
        for &(u, v) in &conflicts {
            *degree.entry(u).or_insert(0usize) += 1;
            *degree.entry(v).or_insert(0usize) += 1;
        }
        let (x, y) = *conflicts
            .iter()
            .max_by(|&&(a, b), &&(c, d)| {
                (degree[&a] + degree[&b])
                    .cmp(&(degree[&c] + degree[&d]))
                    .then((c, d).cmp(&(a, b)))
            })
            .unwrap();

        for v in [x, y] {
            for c in self.allowed(v) {
                if c == self.colors[v - 1] {
                    continue;
                }
                let old = self.colors[v - 1];
                self.colors[v - 1] = c;
                if self.search(budget - 1) {
                    return true;
                }
                self.colors[v - 1] = old;
            }
        }
        false
    }
}

/// Decides whether some proper (list-)coloring lies within `budget`
/// recolorings of `phi` and returns a witness if so.
pub fn fix_branching(
    g: &Graph,
    phi: &Coloring,
    budget: usize,
    lists: Option<&ColorLists>,
    config: BranchConfig,
) -> BranchOutcome {
    assert_eq!(phi.n(), g.n(), "coloring domain mismatch");
    let mut s = Searcher {
        g,
        r: phi.r(),
        lists,
        config,
        colors: phi.as_slice().to_vec(),
        nodes: 0,
    };
    let found = s.search(budget);
    BranchOutcome {
        witness: found.then(|| Coloring::new(s.colors, phi.r()).unwrap()),
        branch_nodes: s.nodes,
    }
}

/// Optimization wrapper: grows the budget from the matching lower bound
/// until the search succeeds.
pub fn solve_branching(
    g: &Graph,
    phi: &Coloring,
    lists: Option<&ColorLists>,
    config: BranchConfig,
) -> FixResult {
    let start = g.matching_lower_bound(phi);
    for k in start..=g.n() {
        let out = fix_branching(g, phi, k, lists, config);
        if let Some(witness) = out.witness {
            // the first successful budget is the optimum: success at a
            // smaller distance would already have surfaced at that budget
            debug_assert_eq!(phi.distance(&witness), k);
            return FixResult::Optimal { k_star: k, witness };
        }
    }
    FixResult::Infeasible
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_coloring, random_graph, random_lists};
    use crate::limits::Limits;
    use crate::oracle::solve_oracle;

    #[test]
    fn proper_input_succeeds_at_zero_budget() {
        let g = Graph::path(3);
        let phi = Coloring::new(vec![1, 2, 1], 2).unwrap();
        let out = fix_branching(&g, &phi, 0, None, BranchConfig::default());
        assert_eq!(out.witness.unwrap(), phi);
        assert_eq!(out.branch_nodes, 0);
    }

    #[test]
    fn triangle_budgets() {
        let g = Graph::complete(3);
        let phi = Coloring::uniform(3, 1, 3).unwrap();
        assert!(fix_branching(&g, &phi, 1, None, BranchConfig::default())
            .witness
            .is_none());
        let out = fix_branching(&g, &phi, 2, None, BranchConfig::default());
        let w = out.witness.unwrap();
        assert!(g.is_proper(&w, None));
        assert!(phi.distance(&w) <= 2);
    }

    #[test]
    fn hard_family_two_copies() {
        // two disjoint triangles, everything colored 1
        let (g, phi) = crate::fixing::hard_family(2, 3);
        let res = solve_branching(&g, &phi, None, BranchConfig::default());
        assert_eq!(res.k_star(), Some(4));
    }

    #[test]
    fn two_disjoint_conflict_edges() {
        let g = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        let phi = Coloring::uniform(4, 1, 2).unwrap();
        let res = solve_branching(&g, &phi, None, BranchConfig::default());
        assert_eq!(res.k_star(), Some(2));
        assert!(res.verify(&g, &phi, None));
    }

    #[test]
    fn agrees_with_oracle_on_random_instances() {
        let l = Limits::default();
        for seed in 0..60 {
            let n = 1 + (seed as usize % 8);
            let r = 2 + (seed as usize % 3);
            let g = random_graph(n, 0.4, seed);
            let phi = random_coloring(n, r, seed ^ 0x11);
            let lists = if seed % 4 == 0 {
                Some(random_lists(n, r, seed ^ 0x77))
            } else {
                None
            };
            let oracle = solve_oracle(&g, &phi, lists.as_ref(), &l).unwrap();
            let res = solve_branching(&g, &phi, lists.as_ref(), BranchConfig::default());
            assert_eq!(res.k_star(), oracle.k_star(), "seed {seed}");
            assert!(res.verify(&g, &phi, lists.as_ref()));
        }
    }

    #[test]
    fn pruning_never_changes_answers() {
        for seed in 0..40 {
            let n = 2 + (seed as usize % 6);
            let g = random_graph(n, 0.5, seed);
            let phi = random_coloring(n, 3, seed ^ 0x2f);
            for k in 0..=3 {
                let with = fix_branching(&g, &phi, k, None, BranchConfig { prune: true });
                let without = fix_branching(&g, &phi, k, None, BranchConfig { prune: false });
                assert_eq!(with.witness.is_some(), without.witness.is_some());
            }
        }
    }

    #[test]
    fn node_count_stays_within_envelope() {
        // 2(r-1) branches per node and depth k bound the branching nodes by
        // ((2(r-1))^k - 1) / (2(r-1) - 1); with the root that is within
        // (2(r-1))^k + 1 for every run, including failing ones
        for seed in 0..30 {
            let n = 2 + (seed as usize % 6);
            let r = 2 + (seed as usize % 3);
            let g = random_graph(n, 0.6, seed);
            let phi = random_coloring(n, r, seed ^ 0x3c);
            for k in 0..=4u32 {
                let out =
                    fix_branching(&g, &phi, k as usize, None, BranchConfig { prune: false });
                let bound = (2 * (r as u64 - 1)).pow(k) + 1;
                assert!(
                    out.branch_nodes <= bound,
                    "nodes {} exceed bound {bound} (seed {seed}, k {k})",
                    out.branch_nodes
                );
            }
        }
    }

    #[test]
    fn branch_soundness_on_small_instances() {
        // whenever a conflict instance is solvable with budget k, one of the
        // single-step recolorings of any conflict edge is solvable with k-1
        let l = Limits::default();
        for seed in 0..25 {
            let n = 2 + (seed as usize % 5);
            let r = 2 + (seed as usize % 2);
            let g = random_graph(n, 0.5, seed);
            let phi = random_coloring(n, r, seed ^ 0x5d);
            if g.is_proper(&phi, None) {
                continue;
            }
            let oracle = solve_oracle(&g, &phi, None, &l).unwrap();
            let Some(k) = oracle.k_star() else { continue };
            assert!(k >= 1);
            for (x, y) in g.conflict_graph(&phi).edges().iter().copied() {
                let mut child_yes = false;
                for v in [x, y] {
                    for c in 1..=r {
                        if c == phi.color(v) {
                            continue;
                        }
                        let child = phi.recolored(v, c).unwrap();
                        let sub = solve_oracle(&g, &child, None, &l).unwrap();
                        if sub.k_star().is_some_and(|s| s <= k - 1) {
                            child_yes = true;
                        }
                    }
                }
                assert!(child_yes, "no child solvable at k-1, seed {seed}");
            }
        }
    }
}
