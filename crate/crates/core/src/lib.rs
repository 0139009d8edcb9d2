//! Group-sparse model selection over overlapping group structures.
//!
//! Given a signal and a collection of (possibly overlapping) groups of indices,
//! pick at most `G` groups, and optionally at most `K` elements, whose union
//! captures as much of the signal's energy as possible. The crate provides:
//!
//! * [`structure`]: group structures, their overlap graph, classification and
//!   cover utilities;
//! * [`exact`]: exact dynamic programs for loopless pairwise overlapping groups
//!   and for rooted-connected tree selection, the classical greedy, and
//!   exhaustive oracles;
//! * [`relax`]: the λ-regularized linear relaxation, its simplex solver and
//!   the Pareto frontier analysis;
//! * [`convex`]: latent and hierarchical group lasso baselines;
//! * [`signals`]: Haar transform, signal generation and tree-derived group
//!   structures.
//!
//! ```
//! use groupsparse::exact::{solve_wmc_dp, WeightVector};
//! use groupsparse::fixtures;
//!
//! let s = fixtures::case_study();
//! let w = WeightVector::from_signal(&fixtures::case_study_signal());
//! let sel = solve_wmc_dp(&s, &w, 2).unwrap();
//! assert_eq!(sel.groups(), vec![0, 2]);
//! assert_eq!(sel.objective, 6.0);
//! ```

pub mod convex;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod par;
pub mod relax;
pub mod signals;
pub mod structure;
pub mod tree;

pub use error::{Error, Result};
pub use exact::{Selection, WeightVector};
pub use structure::GroupStructure;
pub use tree::TreeModel;
