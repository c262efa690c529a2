//! The first geometric-arithmetic index `GA1` of simple graphs: its
//! degree-based lower bounds, the extremal graph families attaining them,
//! and an exhaustive harness that checks the bounds on small graphs.

pub mod bounds;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod index;
pub mod iso;
pub mod mask;
pub mod report;

pub use bounds::{best_lower_bound, best_lower_bound_for, BoundId, BoundResult, Gate};
pub use error::{Error, Result};
pub use families::FamilySpec;
pub use graph::{DegreeSummary, Graph};
pub use graph6::{parse_graph6, write_graph6};
pub use index::{classic_bounds, edge_weight, ga1, DEFAULT_TOLERANCE};
