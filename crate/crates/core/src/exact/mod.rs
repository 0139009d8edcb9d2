//! Exact, greedy and exhaustive solvers for budgeted weighted maximum coverage.

mod brute;
pub(crate) mod dp;
mod greedy;
mod hier;
mod selection;

pub use brute::{brute_force_hier, brute_force_wmc, brute_force_wmc_with, BRUTE_FORCE_TREE_CAP};
pub use dp::{solve_gwmc_dp, solve_gwmc_dp_with, solve_wmc_dp, DpOptions, DpStats};
pub use greedy::greedy_wmc;
pub use hier::{solve_hierarchical_dp, HierSelection};
pub use selection::{top_k_weight, Selection, WeightVector};
