//! Exact solver via maximum-weight set partition.
//!
//! The instance is encoded as a partition problem on the vertex set: part i
//! collects the vertices that end up with color i, its weight is minus the
//! number of vertices that had to leave color class i, and any part that is
//! not independent (or violates a color list) is penalized with `-(r * n)`,
//! which is worse than every partition into independent sets. Maximizing the
//! total weight therefore minimizes the recoloring distance, and a maximum
//! at or below the penalty certifies infeasibility.
//!
//! Two modes compute the layer-by-layer table `dp_i(S)` = best weight of
//! partitioning `S` into parts for colors `1..=i`:
//!
//! * `Plain3n` evaluates every subset/complement split directly (3^n per
//!   layer).
//! * `Fast2n` runs the layer as a ranked subset convolution: the finite
//!   weights all lie in `{0, -1, ..., -n}`, so each layer is sliced by
//!   weight value and the disjoint-union products are computed with
//!   zeta/Moebius transforms per value pair (2^n times a polynomial factor).
//!
//! Both modes share the weight tables and the witness reconstruction, so
//! they return identical optima and identical witnesses.

use crate::error::{Error, Result};
use crate::graph::{ColorLists, Coloring, FixResult, Graph};
use crate::limits::Limits;

const INF: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionMode {
    Fast2n,
    Plain3n,
}

/// The weight family of the partition encoding: ground set = vertices,
/// one set function per color.
#[derive(Debug, Clone)]
pub struct PartitionWeights {
    n: usize,
    d: usize,
    /// bitmask of the vertices initially colored i (index i-1)
    class_mask: Vec<usize>,
    /// bitmask of the vertices whose list allows color i (index i-1)
    allowed_mask: Vec<usize>,
    /// packed table: bit S set iff S is independent
    indep: Vec<u64>,
}

impl PartitionWeights {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parts (the palette size).
    pub fn d(&self) -> usize {
        self.d
    }

    /// Weight of every non-independent (or list-violating) part.
    pub fn penalty(&self) -> i64 {
        -((self.d * self.n) as i64)
    }

    fn is_independent(&self, mask: usize) -> bool {
        self.indep[mask >> 6] & (1 << (mask & 63)) != 0
    }

    /// Recoloring cost of assigning exactly the vertices in `mask` to
    /// `color`, or `INF` when the part is penalized.
    fn cost(&self, color: usize, mask: usize) -> u8 {
        if !self.is_independent(mask) || mask & !self.allowed_mask[color - 1] != 0 {
            return INF;
        }
        (mask & !self.class_mask[color - 1]).count_ones() as u8
    }

    /// The set function of color i evaluated on a vertex set.
    pub fn weight(&self, color: usize, subset: &[usize]) -> i64 {
        assert!(color >= 1 && color <= self.d);
        let mut mask = 0usize;
        for &v in subset {
            assert!(v >= 1 && v <= self.n);
            mask |= 1 << (v - 1);
        }
        match self.cost(color, mask) {
            INF => self.penalty(),
            c => -(c as i64),
        }
    }

    /// True iff colors i and j have identical set functions.
    fn same_weights(&self, i: usize, j: usize) -> bool {
        self.class_mask[i - 1] == self.class_mask[j - 1]
            && self.allowed_mask[i - 1] == self.allowed_mask[j - 1]
    }
}

/// Builds the weight family for an instance. With lists, a part containing
/// a vertex whose list excludes the part's color is penalized exactly like a
/// non-independent part.
pub fn build_partition_weights(
    g: &Graph,
    phi: &Coloring,
    lists: Option<&ColorLists>,
) -> PartitionWeights {
    let n = g.n();
    let r = phi.r();
    let full = if n == 0 { 0 } else { (!0usize) >> (usize::BITS as usize - n) };
    let mut class_mask = vec![0usize; r];
    for v in 1..=n {
        class_mask[phi.color(v) - 1] |= 1 << (v - 1);
    }
    let allowed_mask: Vec<usize> = (1..=r)
        .map(|c| match lists {
            None => full,
            Some(ls) => {
                let mut m = 0;
                for v in 1..=n {
                    if ls.allows(v, c) {
                        m |= 1 << (v - 1);
                    }
                }
                m
            }
        })
        .collect();

    // S independent iff S minus its lowest vertex is independent and that
    // vertex has no neighbor inside S
    let mut adj_mask = vec![0usize; n + 1];
    for (u, v) in g.edges() {
        adj_mask[u] |= 1 << (v - 1);
        adj_mask[v] |= 1 << (u - 1);
    }
    let size = 1usize << n;
    let mut indep = vec![0u64; (size >> 6).max(1)];
    indep[0] |= 1; // empty set
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize + 1;
        let rest = mask & (mask - 1);
        let rest_ok = indep[rest >> 6] & (1 << (rest & 63)) != 0;
        if rest_ok && adj_mask[v] & rest == 0 {
            indep[mask >> 6] |= 1 << (mask & 63);
        }
    }
    PartitionWeights {
        n,
        d: r,
        class_mask,
        allowed_mask,
        indep,
    }
}

/// Maximizes the total weight over ordered partitions into `d` (possibly
/// empty) parts and reconstructs one optimal partition.
///
/// Ties are broken deterministically: the reconstruction peels colors from
/// d down to 1, giving each the smallest feasible part (as a bitmask), which
/// leaves low colors the largest sets.
pub fn max_weighted_partition(
    w: &PartitionWeights,
    mode: PartitionMode,
    limits: &Limits,
) -> Result<(i64, Vec<Vec<usize>>)> {
    let n = w.n;
    if n > limits.partition_max_n {
        return Err(Error::SizeGuard(format!(
            "partition solver refuses n = {n} > {}",
            limits.partition_max_n
        )));
    }
    let size = 1usize << n;
    let full = size - 1;
    let d = w.d;

    // dp[i][S]: minimum recoloring cost of partitioning S among colors 1..=i
    let mut dp: Vec<Vec<u8>> = Vec::with_capacity(d + 1);
    let mut layer0 = vec![INF; size];
    layer0[0] = 0;
    dp.push(layer0);
    for i in 1..=d {
        // identical consecutive weight functions that hit a fixpoint keep it
        if i >= 2 && w.same_weights(i, i - 1) && dp[i - 1] == dp[i - 2] {
            let copy = dp[i - 1].clone();
            dp.push(copy);
            continue;
        }
        let prev = &dp[i - 1];
        let layer = match mode {
            PartitionMode::Plain3n => plain_layer(w, i, prev),
            PartitionMode::Fast2n => ranked_layer(w, i, prev, n),
        };
        dp.push(layer);
    }

    if dp[d][full] == INF {
        // No partition avoids the penalty, so every partition scores at or
        // below it and the single-part split attains it exactly.
        let mut parts = vec![Vec::new(); d];
        parts[0] = (1..=n).collect();
        return Ok((w.penalty(), parts));
    }

    let value = -(dp[d][full] as i64);
    let mut parts = vec![Vec::new(); d];
    let mut s = full;
    for i in (1..=d).rev() {
        let target = dp[i][s];
        let mut t = 0usize;
        loop {
            let c = w.cost(i, t);
            if c != INF && dp[i - 1][s ^ t] != INF && c + dp[i - 1][s ^ t] == target {
                parts[i - 1] = (1..=n).filter(|&v| t & (1 << (v - 1)) != 0).collect();
                s ^= t;
                break;
            }
            assert!(t != s, "reconstruction failed");
            t = t.wrapping_sub(s) & s;
        }
    }
    assert_eq!(s, 0);
    Ok((value, parts))
}

/// Direct subset/complement evaluation of one layer.
fn plain_layer(w: &PartitionWeights, color: usize, prev: &[u8]) -> Vec<u8> {
    let size = prev.len();
    let mut layer = vec![INF; size];
    for s in 0..size {
        let mut best = INF;
        let mut t = 0usize;
        loop {
            if prev[s ^ t] != INF {
                let c = w.cost(color, t);
                if c != INF {
                    best = best.min(c + prev[s ^ t]);
                }
            }
            if t == s {
                break;
            }
            t = t.wrapping_sub(s) & s;
        }
        layer[s] = best;
    }
    layer
}

/// One layer as a ranked subset convolution over value slices.
fn ranked_layer(w: &PartitionWeights, color: usize, prev: &[u8], n: usize) -> Vec<u8> {
    let size = prev.len();
    let mut layer = vec![INF; size];

    // value slices actually present on each side
    let prev_values: Vec<u8> = {
        let mut seen = vec![false; n + 1];
        for &c in prev.iter() {
            if c != INF {
                seen[c as usize] = true;
            }
        }
        (0..=n as u8).filter(|&c| seen[c as usize]).collect()
    };
    let w_costs: Vec<u8> = {
        let mut seen = vec![false; n + 1];
        for t in 0..size {
            let c = w.cost(color, t);
            if c != INF {
                seen[c as usize] = true;
            }
        }
        (0..=n as u8).filter(|&c| seen[c as usize]).collect()
    };

    // ranked zeta transforms of every weight slice, reused across pairs
    let zw: Vec<Vec<Vec<u32>>> = w_costs
        .iter()
        .map(|&b| {
            let mut slice = vec![0u32; size];
            for t in 0..size {
                if w.cost(color, t) == b {
                    slice[t] = 1;
                }
            }
            ranked_zeta(&slice, n)
        })
        .collect();

    for &a in &prev_values {
        let mut slice = vec![0u32; size];
        for s in 0..size {
            if prev[s] == a {
                slice[s] = 1;
            }
        }
        let za = ranked_zeta(&slice, n);
        for (bi, &b) in w_costs.iter().enumerate() {
            // disjoint parts can never cost more than n vertices in total
            if (a as usize) + (b as usize) > n {
                continue;
            }
            let total = a + b;
            mark_disjoint_unions(&za, &zw[bi], n, |s| {
                if total < layer[s] {
                    layer[s] = total;
                }
            });
        }
    }
    layer
}

/// `out[j][S]` = number of subsets `T ⊆ S` with `|T| = j` and `f[T] = 1`.
fn ranked_zeta(f: &[u32], n: usize) -> Vec<Vec<u32>> {
    let size = f.len();
    let mut out: Vec<Vec<u32>> = (0..=n)
        .map(|j| {
            let mut table = vec![0u32; size];
            for s in 0..size {
                if f[s] == 1 && s.count_ones() as usize == j {
                    table[s] = 1;
                }
            }
            table
        })
        .collect();
    for table in out.iter_mut() {
        zeta_u32(table, n);
    }
    out
}

fn zeta_u32(f: &mut [u32], n: usize) {
    for i in 0..n {
        let bit = 1usize << i;
        for s in 0..f.len() {
            if s & bit != 0 {
                f[s] = f[s].wrapping_add(f[s ^ bit]);
            }
        }
    }
}

fn mobius_u64(f: &mut [u64], n: usize) {
    for i in 0..n {
        let bit = 1usize << i;
        for s in 0..f.len() {
            if s & bit != 0 {
                f[s] = f[s].wrapping_sub(f[s ^ bit]);
            }
        }
    }
}

/// Calls `hit(S)` for every S expressible as a disjoint union A ∪ B with A
/// in the first sliced family and B in the second: the rank-j component of
/// the cover product, Moebius-inverted, counts exactly the splits with
/// |A| + |B| = |S|.
fn mark_disjoint_unions(
    za: &[Vec<u32>],
    zb: &[Vec<u32>],
    n: usize,
    mut hit: impl FnMut(usize),
) {
    let size = za[0].len();
    for j in 0..=n {
        let mut c = vec![0u64; size];
        for j1 in 0..=j {
            let (fa, fb) = (&za[j1], &zb[j - j1]);
            for s in 0..size {
                c[s] = c[s].wrapping_add(fa[s] as u64 * fb[s] as u64);
            }
        }
        mobius_u64(&mut c, n);
        for s in 0..size {
            if s.count_ones() as usize == j && c[s] > 0 {
                hit(s);
            }
        }
    }
}

/// Exact solve through the partition encoding.
pub fn solve_partition(
    g: &Graph,
    phi: &Coloring,
    lists: Option<&ColorLists>,
    mode: PartitionMode,
    limits: &Limits,
) -> Result<FixResult> {
    g.check_domain(phi)?;
    if g.n() == 0 {
        return Ok(FixResult::Optimal {
            k_star: 0,
            witness: phi.clone(),
        });
    }
    let w = build_partition_weights(g, phi, lists);
    let (value, parts) = max_weighted_partition(&w, mode, limits)?;
    if value <= w.penalty() {
        return Ok(FixResult::Infeasible);
    }
    let mut colors = vec![0usize; g.n()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            colors[v - 1] = i + 1;
        }
    }
    let witness = Coloring::new(colors, phi.r()).unwrap();
    let k_star = (-value) as usize;
    debug_assert_eq!(phi.distance(&witness), k_star);
    Ok(FixResult::Optimal { k_star, witness })
}

/// Smallest palette size admitting a proper (list-free) coloring, found by
/// solving the partition encoding for growing palettes.
pub fn chromatic_number(g: &Graph, limits: &Limits) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    for r in 1..=g.n() {
        let phi = Coloring::uniform(g.n(), 1, r).unwrap();
        if solve_partition(g, &phi, None, PartitionMode::Fast2n, limits)?.is_optimal() {
            return Ok(r);
        }
    }
    unreachable!("every graph is n-colorable")
}
