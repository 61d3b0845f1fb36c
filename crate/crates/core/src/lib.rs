//! Parity game engine built around an attractor-peeling solver.
//!
//! The crate has three layers:
//!
//! - the game model and the solving pipeline: [`game`], [`attractor`],
//!   [`dominion`], [`solver`];
//! - known-correct reference solvers used as ground truth: [`oracles`];
//! - tooling around them: [`io`] (PGSolver format, DOT), [`generate`]
//!   (seeded corpora), and [`harness`] (differential testing with
//!   counterexample minimization).
//!
//! The solver removes regions computed by a dominion-style attractor and
//! claims each removed region is won outright by one player. The harness
//! does not assume that claim: it cross-checks every removal and every
//! final partition against the oracles and, on disagreement, shrinks the
//! offending game to a 1-minimal witness.
//!
//! Winner convention is min-parity throughout: the winner of a play is the
//! player whose parity matches the lowest priority occurring infinitely
//! often. Max-parity inputs are converted on ingest (see [`io::convert_convention`]).

pub mod attractor;
pub mod dominion;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod game;
pub mod generate;
pub mod harness;
pub mod io;
pub mod oracles;
pub mod set;
pub mod solver;

pub use game::{GameView, Owner, ParityGame, Priority, VertexId, VertexSpec, WinnerPartition};
pub use set::VertexSet;

/// Execution mode for batch work (corpus evaluation, sharded enumeration).
///
/// `Rayon` is only available with the `parallel` feature (on by default).
/// Every batch entry point merges results in input order, so the output is
/// identical for any worker count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[cfg(feature = "parallel")]
    Rayon,
}

impl Default for Parallelism {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Parallelism::Rayon
        }
        #[cfg(not(feature = "parallel"))]
        {
            Parallelism::Sequential
        }
    }
}

/// Maps `f` over `0..count`, sequentially or on the rayon pool.
///
/// Results are returned in index order either way.
pub fn map_indexed<T, F>(count: usize, mode: Parallelism, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    match mode {
        Parallelism::Sequential => (0..count).map(f).collect(),
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
    }
}
