use serde::{Deserialize, Serialize};

/// How batch work is scheduled. Without the `parallel` feature both
/// variants run sequentially.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

/// All size limits and knobs in one record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group (or search result) that may be materialised.
    pub group_cap: u64,
    /// Largest module handed to the decomposer.
    pub dim_cap: usize,
    /// Largest support for canonical forms and factorisation.
    pub support_cap: usize,
    /// Largest wreath exponent tried by the κ search.
    pub kappa_max_u: usize,
    /// Largest wreath-power dimension tried by the κ search.
    pub kappa_max_dim: usize,
    /// Largest `n` with `q·n` accepted by the oracle.
    pub oracle_max_degree: usize,
    /// Commutants with at most this many elements are searched exhaustively
    /// for idempotents when no cheaper certificate applies.
    pub exhaustive_limit: u64,
    /// Random splitting attempts per summand before certification.
    pub split_attempts: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_cap: 1_000_000,
            dim_cap: 400,
            support_cap: 12,
            kappa_max_u: 4,
            kappa_max_dim: 300,
            oracle_max_degree: 8,
            exhaustive_limit: 1 << 14,
            split_attempts: 48,
            seed: 0,
            exec: Exec::Parallel,
        }
    }
}

impl Caps {
    pub fn sequential(mut self) -> Self {
        self.exec = Exec::Sequential;
        self
    }
}
