/// Size guards for the exponential solvers.
///
/// The defaults keep accidental invocations on oversized instances from
/// running for hours or exhausting memory. Every limit can be raised (or
/// effectively disabled with [`Limits::unbounded`]); the algorithms stay
/// correct, only time and memory grow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum vertex count accepted by the subset-enumeration oracle.
    pub oracle_max_n: usize,
    /// Maximum vertex count accepted by the set-partition solver (bitmask
    /// tables of size 2^n).
    pub partition_max_n: usize,
    /// Maximum per-bag state count r^(width+1) accepted by the treewidth DP.
    pub tw_max_states: u64,
    /// Maximum number of colorings a full enumeration may visit.
    pub enum_max_colorings: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle_max_n: 20,
            partition_max_n: 26,
            tw_max_states: 10_000_000,
            enum_max_colorings: 100_000_000,
        }
    }
}

impl Limits {
    /// No guards at all. The caller takes responsibility for runtime.
    pub fn unbounded() -> Self {
        Limits {
            oracle_max_n: usize::MAX,
            partition_max_n: 63,
            tw_max_states: u64::MAX,
            enum_max_colorings: u128::MAX,
        }
    }
}
