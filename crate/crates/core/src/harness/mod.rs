//! Exhaustive verification over small graphs, searches and spot checks.

pub mod enumerate;
pub mod search;
pub mod verify;

pub use enumerate::{enumerate, enumerate_graphs, EnumSpec};
pub use search::{check_candidate, min_degree_two_spotchecks, search_counterexamples, search_minimal};
pub use verify::{verify_graphs, verify_theorem, verify_up_to, Target, VerificationReport};
