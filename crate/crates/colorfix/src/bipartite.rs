//! Polynomial solver for two colors.
//!
//! A connected bipartite graph has exactly two proper 2-colorings, so per
//! component the optimum is the cheaper of the two orientations and the
//! total is the sum over components.

use crate::error::{Error, Result};
use crate::graph::{Coloring, FixResult, Graph};

/// One connected component with its two sides. `side_x` contains the
/// component's smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteComponent {
    pub vertices: Vec<usize>,
    pub side_x: Vec<usize>,
    pub side_y: Vec<usize>,
}

/// Result of the 2-coloring sweep: per-component sides, or an odd cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Bipartite(Vec<BipartiteComponent>),
    /// Certificate: a cycle of odd length, consecutive vertices adjacent,
    /// last adjacent to first.
    OddCycle(Vec<usize>),
}

/// BFS 2-coloring of every component.
pub fn bipartition_classes(g: &Graph) -> Bipartition {
    let n = g.n();
    let mut side = vec![usize::MAX; n + 1]; // 0 or 1 once visited
    let mut parent = vec![0usize; n + 1];
    let mut components = Vec::new();
    for start in 1..=n {
        if side[start] != usize::MAX {
            continue;
        }
        side[start] = 0;
        parent[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if side[w] == usize::MAX {
                    side[w] = side[u] ^ 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return Bipartition::OddCycle(odd_cycle(&parent, u, w));
                }
            }
        }
        comp.sort_unstable();
        let side_x: Vec<usize> = comp.iter().copied().filter(|&v| side[v] == 0).collect();
        let side_y: Vec<usize> = comp.iter().copied().filter(|&v| side[v] == 1).collect();
        components.push(BipartiteComponent {
            vertices: comp,
            side_x,
            side_y,
        });
    }
    Bipartition::Bipartite(components)
}

/// Closes the cycle through the BFS tree paths of `u` and `w` up to their
/// lowest common ancestor.
fn odd_cycle(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let path_to_root = |mut v: usize| {
        let mut path = vec![v];
        while parent[v] != 0 {
            v = parent[v];
            path.push(v);
        }
        path
    };
    let pu = path_to_root(u);
    let pw = path_to_root(w);
    // strip the common suffix down to the LCA
    let mut i = pu.len();
    let mut j = pw.len();
    while i > 0 && j > 0 && pu[i - 1] == pw[j - 1] {
        i -= 1;
        j -= 1;
    }
    // pu[..=i] ends at the LCA; append pw[..j] reversed
    let mut cycle: Vec<usize> = pu[..=i].to_vec();
    cycle.extend(pw[..j].iter().rev());
    debug_assert_eq!(cycle.len() % 2, 1);
    cycle
}

/// Exact solve for 2-colorings: per component, the cheaper of the two
/// orientations; ties go to the orientation recoloring the
/// lexicographically smallest vertex set.
pub fn solve_bipartite(g: &Graph, phi: &Coloring) -> Result<FixResult> {
    g.check_domain(phi)?;
    if let Some(v) = (1..=g.n()).find(|&v| phi.color(v) > 2) {
        return Err(Error::InvalidInput(format!(
            "vertex {v} uses color {} but the two-color solver needs colors in {{1, 2}}",
            phi.color(v)
        )));
    }
    let components = match bipartition_classes(g) {
        Bipartition::OddCycle(_) => return Ok(FixResult::Infeasible),
        Bipartition::Bipartite(c) => c,
    };
    let mut colors: Vec<usize> = phi.as_slice().to_vec();
    let mut k_star = 0;
    for comp in &components {
        // mismatches when side_x takes color 1 / color 2
        let wrong_a: Vec<usize> = comp
            .vertices
            .iter()
            .copied()
            .filter(|&v| {
                let in_x = comp.side_x.binary_search(&v).is_ok();
                (in_x && phi.color(v) != 1) || (!in_x && phi.color(v) != 2)
            })
            .collect();
        let wrong_b: Vec<usize> = comp
            .vertices
            .iter()
            .copied()
            .filter(|&v| {
                let in_x = comp.side_x.binary_search(&v).is_ok();
                (in_x && phi.color(v) != 2) || (!in_x && phi.color(v) != 1)
            })
            .collect();
        debug_assert_eq!(wrong_a.len() + wrong_b.len(), comp.vertices.len());
        let use_a = match wrong_a.len().cmp(&wrong_b.len()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => wrong_a <= wrong_b,
        };
        let (x_color, y_color, wrong) = if use_a {
            (1, 2, wrong_a)
        } else {
            (2, 1, wrong_b)
        };
        k_star += wrong.len();
        for &v in &comp.side_x {
            colors[v - 1] = x_color;
        }
        for &v in &comp.side_y {
            colors[v - 1] = y_color;
        }
    }
    let witness = Coloring::new(colors, phi.r()).unwrap();
    debug_assert_eq!(phi.distance(&witness), k_star);
    Ok(FixResult::Optimal { k_star, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_bipartite_graph, random_coloring};
    use crate::limits::Limits;
    use crate::oracle::solve_oracle;

    #[test]
    fn four_cycle_classes() {
        match bipartition_classes(&Graph::cycle(4)) {
            Bipartition::Bipartite(comps) => {
                assert_eq!(comps.len(), 1);
                assert_eq!(comps[0].side_x.len(), 2);
                assert_eq!(comps[0].side_y.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn triangle_yields_odd_cycle_certificate() {
        match bipartition_classes(&Graph::complete(3)) {
            Bipartition::OddCycle(cycle) => {
                assert_eq!(cycle.len(), 3);
                let g = Graph::complete(3);
                for i in 0..cycle.len() {
                    assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn two_disjoint_edges_classes() {
        let g = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        match bipartition_classes(&g) {
            Bipartition::Bipartite(comps) => {
                assert_eq!(comps.len(), 2);
                for c in comps {
                    assert_eq!((c.side_x.len(), c.side_y.len()), (1, 1));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn longer_odd_cycle_certificate() {
        let g = Graph::cycle(5);
        match bipartition_classes(&g) {
            Bipartition::OddCycle(cycle) => {
                assert!(cycle.len() % 2 == 1 && cycle.len() >= 3);
                for i in 0..cycle.len() {
                    assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_edge_one_flip() {
        let g = Graph::new(2, &[(1, 2)]).unwrap();
        let phi = Coloring::uniform(2, 1, 2).unwrap();
        let res = solve_bipartite(&g, &phi).unwrap();
        assert_eq!(res.k_star(), Some(1));
        assert!(res.verify(&g, &phi, None));
    }

    #[test]
    fn monochromatic_four_cycle() {
        let g = Graph::cycle(4);
        let phi = Coloring::uniform(4, 1, 2).unwrap();
        let oracle = solve_oracle(&g, &phi, None, &Limits::default()).unwrap();
        assert_eq!(oracle.k_star(), Some(2));
        assert_eq!(solve_bipartite(&g, &phi).unwrap().k_star(), Some(2));
    }

    #[test]
    fn components_add_up() {
        let g = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        let phi = Coloring::uniform(4, 1, 2).unwrap();
        assert_eq!(solve_bipartite(&g, &phi).unwrap().k_star(), Some(2));
    }

    #[test]
    fn odd_component_is_infeasible() {
        let mut edges: Vec<(usize, usize)> = vec![(1, 2)];
        edges.extend([(3, 4), (4, 5), (3, 5)]); // triangle on 3..5
        let g = Graph::new(5, &edges).unwrap();
        let phi = Coloring::uniform(5, 1, 2).unwrap();
        assert_eq!(solve_bipartite(&g, &phi).unwrap(), FixResult::Infeasible);
    }

    #[test]
    fn rejects_colors_outside_two() {
        let g = Graph::path(2);
        let phi = Coloring::new(vec![1, 3], 3).unwrap();
        assert!(solve_bipartite(&g, &phi).is_err());
    }

    #[test]
    fn per_component_cost_is_at_most_half() {
        for seed in 0..40 {
            let n = 2 + (seed as usize % 11);
            let g = random_bipartite_graph(n, 0.5, seed);
            let phi = random_coloring(n, 2, seed ^ 0xf0);
            let comps = match bipartition_classes(&g) {
                Bipartition::Bipartite(c) => c,
                _ => unreachable!(),
            };
            let mut total = 0;
            for comp in &comps {
                let a = comp
                    .vertices
                    .iter()
                    .filter(|&&v| {
                        let in_x = comp.side_x.binary_search(&v).is_ok();
                        (in_x && phi.color(v) != 1) || (!in_x && phi.color(v) != 2)
                    })
                    .count();
                let b = comp.vertices.len() - a;
                assert!(a.min(b) <= comp.vertices.len() / 2);
                total += a.min(b);
            }
            assert_eq!(
                solve_bipartite(&g, &phi).unwrap().k_star(),
                Some(total)
            );
        }
    }

    #[test]
    fn agrees_with_oracle_on_random_bipartite_graphs() {
        let l = Limits::default();
        for seed in 0..50 {
            let n = 1 + (seed as usize % 12);
            let g = random_bipartite_graph(n, 0.4, seed);
            let phi = random_coloring(n, 2, seed ^ 0xaa);
            let res = solve_bipartite(&g, &phi).unwrap();
            let oracle = solve_oracle(&g, &phi, None, &l).unwrap();
            assert_eq!(res.k_star(), oracle.k_star(), "seed {seed}");
            assert!(res.verify(&g, &phi, None));
        }
    }
}
