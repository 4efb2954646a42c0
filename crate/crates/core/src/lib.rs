//! Top-r k-influential community search on vertex-weighted graphs.
//!
//! A k-influential community is a connected vertex set in which every member
//! has at least `k` neighbours inside the set, valued by an aggregation of
//! member weights, and not contained in a larger such set of equal value.

pub mod aggregation;
pub mod community;
pub mod constrained;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod kcore;
pub mod oracle;
pub mod pagerank;
mod pool;
pub mod synth;
pub mod unconstrained;

pub use aggregation::{evaluate, objective, rank_value, Aggregation, FunctionTraits, Hardness, StrategyKind};
pub use community::{Community, ResultList};
pub use constrained::{local_search, s_nearest, tic_exact, ExactOptions, SearchParams};
pub use error::{Error, Result};
pub use graph::{load_weights, parse_edge_list, WeightedGraph};
pub use kcore::{connected_components, core_numbers, degeneracy, k_core, remove_and_recore, SubgraphView};
pub use oracle::{brute_force_topr, check_approx_factor, ndcg, verify_community, Violation};
pub use pagerank::pagerank;
pub use synth::{estimate_core, generate_powerlaw, PowerLawSpec};
pub use unconstrained::{non_overlapping_unconstrained, sum_naive, tic_improved};
