//! Radio labelings of the graphs of order `n` and diameter `n - 2`.
//!
//! The family consists of spire graphs `S_{n,s}` (a path `v1 .. v(n-1)` with
//! an extra vertex `vn` joined to `vs`) and three variants where the spire
//! also touches `v(s-1)` and/or `v(s-2)`. The crate builds these graphs,
//! produces optimal radio labelings from explicit orderings, evaluates the
//! closed-form radio numbers, derives lower-bound certificates from edge
//! usage counting, and checks everything against an exact search.
//!
//! ```
//! use radiolab::{build_spire, construct, rn_formula, verify, SpireSpec};
//!
//! let spec = SpireSpec::plain(14, 2).unwrap();
//! let g = build_spire(&spec).unwrap();
//! let plan = construct(&spec).unwrap().plan;
//! assert!(verify(&g, &plan.labeling()).unwrap().is_empty());
//! assert_eq!(plan.span() as u64, rn_formula(&spec).unwrap());
//! ```

pub mod bounds;
pub mod construct;
pub mod graph;
pub mod labeling;
pub mod solver;
pub mod spire;
pub mod sweep;

pub use bounds::{
    bound_report, center_case_groups, edge_usage_caps, lower_bound_closed, lower_bound_distance,
    lower_bound_generic, rn_formula, BoundError, BoundReport, CutGroup, EdgeUsageBound, GroupRule,
};
pub use construct::{
    construct, plan_any, plan_variant_induced, Construction, PlanError, PlanSource,
};
pub use graph::{Graph, GraphError, GraphJson};
pub use labeling::{
    greedy_complete, slack, verify, LabelingError, OrderingPlan, RadioLabeling, SlackVector,
    Violation,
};
pub use solver::{
    rn_exact, rn_exact_with_symmetry, SolveError, SolveOptions, SolveResult, SolveStatus,
    DEFAULT_BUDGET,
};
pub use spire::{build_spire, classify, SpecError, SpireSpec, Variant};
pub use sweep::{sweep, SweepRow};
