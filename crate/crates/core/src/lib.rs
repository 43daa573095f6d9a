//! Reduced ordered BDDs with Shannon information measures.
//!
//! - [`bdd`]: the BDD manager (unique table, apply, cofactors, level swaps).
//! - [`measures`]: output probabilities, entropy and conditional entropy on a BDD.
//! - [`reorder`]: entropy-driven greedy reordering plus sifting and window baselines.
//! - [`oracle`]: truth-table ground truth and exhaustive order search.
//! - [`io`]: BLIF/PLA/truth-vector ingestion and report formatting.
//! - [`cli`]: the `infobdd` command line.

pub mod bdd;
pub mod cli;
pub mod io;
pub mod measures;
pub mod oracle;
pub mod par;
pub mod reorder;

pub use bdd::{BddError, BddManager, BoolOp, NodeRef, VarId};
pub use measures::{MeasureReport, ProbabilityProfile, VarProbabilities};
pub use oracle::TruthTable;
pub use reorder::{Method, ReorderTrace};
