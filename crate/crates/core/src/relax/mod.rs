//! Regularized linear relaxations and Pareto frontier analysis.

mod lp;
mod pareto;
pub mod simplex;

pub use lp::{
    brute_force_regularized, solve_regularized, solve_tree_regularized, solve_tu_lp, standard_form,
    BinaryLP, LpOutcome, INTEGRALITY_TOL,
};
pub use pareto::{
    hierarchical_frontier, hierarchical_frontier_with, hierarchical_lambda_sweep, hull_flags,
    lambda_sweep, lambda_sweep_with, pareto_frontier, pareto_frontier_with, FrontierRecord,
    FrontierSolver, ParetoFrontier, SweepPoint, HULL_TOL,
};
