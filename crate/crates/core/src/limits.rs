use crate::family::DEFAULT_CLOSURE_CAP;

/// Caps shared by the exponential operations. Hitting one is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of sets in a union closure.
    pub closure_cap: usize,
    /// Maximum vertex count accepted by maximal-stable-set enumeration (hard ceiling 128).
    pub vertex_cap: usize,
    /// Maximum number of maximal stable sets enumerated.
    pub set_count_cap: usize,
    /// Node budget for the swap-automorphism backtracking search.
    pub search_budget: u64,
}

pub const DEFAULT_VERTEX_CAP: usize = 40;
pub const DEFAULT_SET_COUNT_CAP: usize = 1 << 22;
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            closure_cap: DEFAULT_CLOSURE_CAP,
            vertex_cap: DEFAULT_VERTEX_CAP,
            set_count_cap: DEFAULT_SET_COUNT_CAP,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}
