//! Random increasing k-trees and their connectivity profiles.
//!
//! Three mutually cross-checking pillars:
//!
//! * **Simulation** — grow trees by the clique-uniform process
//!   ([`ktree`]), measure distances, level profiles, height, width and
//!   degrees ([`profile`]), and aggregate over trials ([`montecarlo`]).
//! * **Exact computation** — expected level profiles from a coefficient
//!   recurrence in exact rationals or floats, plus the exact root-degree
//!   law ([`exact`]).
//! * **Asymptotics** — spectral roots and saddle-point estimates of the
//!   expected profile, the Gaussian level approximation, the height
//!   constant ([`asym`]), and the limit laws of bounded-depth counts
//!   ([`limit`]).
//!
//! All randomness flows from one 64-bit seed ([`rng`]); results are
//! independent of thread count.

pub mod asym;
pub mod error;
pub mod exact;
pub mod ktree;
pub mod limit;
pub mod montecarlo;
pub mod profile;
pub mod rng;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use ktree::{
    count_ktrees, enumerate_histories, from_tree_repr, grow_random, to_tree_repr, KTree, TreeRepr,
};
pub use montecarlo::{monte_carlo, MonteCarloConfig, SummaryStats};
pub use profile::{
    adjacency, bfs_distances, connectivity_profile, root_distances, sample_pair_distance, summary,
    DistanceTable, ProfileMatrix, TreeSummary,
};
pub use rng::RngFactory;
