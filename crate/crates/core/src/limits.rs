use serde::{Deserialize, Serialize};

/// Size thresholds for the exhaustive algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest `n` for which subset enumeration (brute-force κ, atoms) is attempted.
    pub brute_force_max_n: usize,
    /// Largest `n` accepted by the automorphism backtracker.
    pub symmetry_max_n: usize,
}

impl Limits {
    /// Subset enumeration works on 64-bit masks, so this is a hard ceiling.
    pub const BRUTE_FORCE_CEILING: usize = 40;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            brute_force_max_n: 22,
            symmetry_max_n: 64,
        }
    }
}
