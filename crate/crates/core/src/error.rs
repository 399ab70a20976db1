use std::fmt;

use thiserror::Error;

use crate::cube::VerifyReport;
use crate::detachment::RealizationFailure;
use crate::format::ParseError;

/// Counting witness for the necessity direction: the extension region
/// `[0,n)³ ∖ [0,m)³` must host `n − m` cells of every one of the `m²` corner
/// symbols inside the all-new block, which has only `(n − m)³` cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NecessityWitness {
    pub m: usize,
    pub n: usize,
    /// `(n − m)³`
    pub new_block_cells: u64,
    /// `m² (n − m)`
    pub required_cells: u64,
}

impl NecessityWitness {
    pub fn new(m: usize, n: usize) -> Self {
        let d = n.saturating_sub(m) as u64;
        let m = m as u64;
        NecessityWitness {
            m: m as usize,
            n,
            new_block_cells: d * d * d,
            required_cells: m * m * d,
        }
    }

    pub fn inequality_holds(&self) -> bool {
        self.new_block_cells >= self.required_cells
    }
}

impl fmt::Display for NecessityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.inequality_holds() { ">=" } else { "<" };
        write!(
            f,
            "(n-m)^3 = {} {} m^2(n-m) = {} for m = {}, n = {}; embedding requires n >= 2m = {}",
            self.new_block_cells,
            rel,
            self.required_cells,
            self.m,
            self.n,
            2 * self.m
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("cube is not layer-rainbow ({} violations)", .0.violations.len())]
    NotRainbow(VerifyReport),

    #[error("infeasible order: {0}")]
    InfeasibleOrder(NecessityWitness),

    #[error("not a bijection on 0..{size}: {reason}")]
    NotBijection { size: usize, reason: String },

    #[error("coloring stage undefined for m = {m} (requires m >= 2)")]
    StageUndefined { m: usize },

    #[error(transparent)]
    Realization(Box<RealizationFailure>),

    /// A construction step broke an invariant it is guaranteed to keep.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
