//! Brute-force reference solver.
//!
//! Enumerates subsets of vertices to recolor by increasing size, then all
//! ways to recolor them. It is the ground truth every other solver is tested
//! against, so it stays as simple as possible: deterministic enumeration
//! order, no shortcuts beyond the size guard.

use crate::error::{Error, Result};
use crate::graph::{ColorLists, Coloring, FixResult, Graph};
use crate::limits::Limits;

/// Exact solve by subset enumeration: for k = 0, 1, ... all k-element vertex
/// subsets (in colexicographic order) and all ways to give each chosen
/// vertex a different color. The first k with a success is optimal; the
/// returned witness is the lexicographically least among the optimal ones.
pub fn solve_oracle(
    g: &Graph,
    phi: &Coloring,
    lists: Option<&ColorLists>,
    limits: &Limits,
) -> Result<FixResult> {
    g.check_domain(phi)?;
    let n = g.n();
    if n > limits.oracle_max_n {
        return Err(Error::SizeGuard(format!(
            "oracle refuses n = {n} > {}",
            limits.oracle_max_n
        )));
    }
    let r = phi.r();

    // alternatives[v-1]: the colors vertex v may change to, ascending
    let alternatives: Vec<Vec<usize>> = (1..=n)
        .map(|v| {
            (1..=r)
                .filter(|&c| c != phi.color(v) && lists.map_or(true, |ls| ls.allows(v, c)))
                .collect()
        })
        .collect();

    for k in 0..=n {
        let mut best: Option<Vec<usize>> = None;
        for subset in KSubsets::new(n, k) {
            try_subset(g, phi, lists, &alternatives, &subset, &mut best);
        }
        if let Some(colors) = best {
            let witness = Coloring::new(colors, r).unwrap();
            debug_assert_eq!(phi.distance(&witness), k);
            return Ok(FixResult::Optimal { k_star: k, witness });
        }
    }
    Ok(FixResult::Infeasible)
}

/// Tries every recoloring of `subset` (mixed-radix counter over the
/// per-vertex alternatives) and keeps the lexicographically least proper one.
fn try_subset(
    g: &Graph,
    phi: &Coloring,
    lists: Option<&ColorLists>,
    alternatives: &[Vec<usize>],
    subset: &[usize],
    best: &mut Option<Vec<usize>>,
) {
    if subset.iter().any(|&v| alternatives[v - 1].is_empty()) {
        return;
    }
    let mut digits = vec![0usize; subset.len()];
    let mut colors: Vec<usize> = phi.as_slice().to_vec();
    loop {
        for (i, &v) in subset.iter().enumerate() {
            colors[v - 1] = alternatives[v - 1][digits[i]];
        }
        let cand = Coloring::new(colors.clone(), phi.r()).unwrap();
        if g.is_proper(&cand, lists) && best.as_ref().map_or(true, |b| colors < *b) {
            *best = Some(colors.clone());
        }
        // advance the counter
        let mut i = subset.len();
        loop {
            if i == 0 {
                return;
            }
            let v = subset[i - 1];
            if digits[i - 1] + 1 < alternatives[v - 1].len() {
                digits[i - 1] += 1;
                break;
            }
            digits[i - 1] = 0;
            i -= 1;
        }
    }
}

/// k-element subsets of {1..n} in colexicographic order (Gosper's hack).
struct KSubsets {
    n: usize,
    mask: u64,
    done: bool,
}

impl KSubsets {
    fn new(n: usize, k: usize) -> Self {
        assert!(n < 64);
        KSubsets {
            n,
            mask: if k == 0 { 0 } else { (1u64 << k) - 1 },
            done: false,
        }
    }
}

impl Iterator for KSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let m = self.mask;
        if m >= (1u64 << self.n) && m != 0 {
            self.done = true;
            return None;
        }
        let subset: Vec<usize> = (0..self.n).filter(|&i| m & (1 << i) != 0).map(|i| i + 1).collect();
        if m == 0 {
            self.done = true;
        } else {
            // Gosper's hack: next bitmask with the same popcount
            let c = m & m.wrapping_neg();
            let r = m + c;
            self.mask = (((r ^ m) >> 2) / c) | r;
        }
        Some(subset)
    }
}

/// All r^n colorings of n vertices in lexicographic order of their color
/// vectors (vertex 1 most significant).
pub fn enumerate_all_colorings(n: usize, r: usize, limits: &Limits) -> Result<ColoringIter> {
    if r == 0 && n > 0 {
        return Err(Error::InvalidInput("palette must be nonempty".into()));
    }
    let total = (r as u128).checked_pow(n as u32).ok_or_else(|| {
        Error::SizeGuard(format!("r^n overflows for r = {r}, n = {n}"))
    })?;
    if total > limits.enum_max_colorings {
        return Err(Error::SizeGuard(format!(
            "enumeration of {total} colorings exceeds limit {}",
            limits.enum_max_colorings
        )));
    }
    Ok(ColoringIter {
        r,
        current: Some(vec![1; n]),
    })
}

pub struct ColoringIter {
    r: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for ColoringIter {
    type Item = Coloring;

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.current.take()?;
        let out = Coloring::new(cur.clone(), self.r).unwrap();
        let mut next = cur;
        let mut i = next.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            if next[i - 1] < self.r {
                next[i - 1] += 1;
                self.current = Some(next);
                break;
            }
            next[i - 1] = 1;
            i -= 1;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naive;

    #[test]
    fn proper_input_is_already_fixed() {
        let g = Graph::path(3);
        let phi = Coloring::new(vec![1, 2, 1], 2).unwrap();
        let res = solve_oracle(&g, &phi, None, &Limits::default()).unwrap();
        assert_eq!(res.k_star(), Some(0));
        assert_eq!(res.witness().unwrap(), &phi);
    }

    #[test]
    fn triangle_needs_two_recolorings() {
        let g = Graph::complete(3);
        let phi = Coloring::uniform(3, 1, 3).unwrap();
        let res = solve_oracle(&g, &phi, None, &Limits::default()).unwrap();
        assert_eq!(res.k_star(), Some(2));
        assert!(res.verify(&g, &phi, None));
    }

    #[test]
    fn triangle_with_two_colors_is_infeasible() {
        let g = Graph::complete(3);
        let phi = Coloring::uniform(3, 1, 2).unwrap();
        let res = solve_oracle(&g, &phi, None, &Limits::default()).unwrap();
        assert_eq!(res, FixResult::Infeasible);
    }

    #[test]
    fn respects_lists() {
        let g = Graph::edgeless(1);
        let phi = Coloring::new(vec![1], 2).unwrap();
        let lists = ColorLists::new(vec![[2].into_iter().collect()], 2).unwrap();
        let res = solve_oracle(&g, &phi, Some(&lists), &Limits::default()).unwrap();
        assert_eq!(res.k_star(), Some(1));
        assert_eq!(res.witness().unwrap().color(1), 2);
    }

    #[test]
    fn size_guard_fires() {
        let g = Graph::edgeless(21);
        let phi = Coloring::uniform(21, 1, 2).unwrap();
        assert!(matches!(
            solve_oracle(&g, &phi, None, &Limits::default()),
            Err(Error::SizeGuard(_))
        ));
    }

    #[test]
    fn agrees_with_full_scan_on_small_instances() {
        // seeded sweep over tiny graphs and colorings
        use crate::gen::random_graph;
        use crate::gen::random_coloring;
        for seed in 0..40 {
            let n = 1 + (seed as usize % 5);
            let r = 2 + (seed as usize % 3);
            let g = random_graph(n, 0.5, seed);
            let phi = random_coloring(n, r, seed ^ 0xabc);
            let res = solve_oracle(&g, &phi, None, &Limits::default()).unwrap();
            let expect = naive::min_fix_by_full_scan(&g, &phi, None);
            assert_eq!(res.k_star(), expect, "n={n} r={r} seed={seed}");
            assert!(res.verify(&g, &phi, None));
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        let l = Limits::default();
        assert_eq!(enumerate_all_colorings(1, 2, &l).unwrap().count(), 2);
        assert_eq!(enumerate_all_colorings(2, 2, &l).unwrap().count(), 4);
        assert_eq!(enumerate_all_colorings(3, 3, &l).unwrap().count(), 27);
        let all: Vec<_> = enumerate_all_colorings(2, 2, &l)
            .unwrap()
            .map(|c| c.as_slice().to_vec())
            .collect();
        assert_eq!(all, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn enumeration_guard() {
        let tight = Limits {
            enum_max_colorings: 3,
            ..Limits::default()
        };
        assert!(enumerate_all_colorings(2, 2, &tight).is_err());
    }
}
