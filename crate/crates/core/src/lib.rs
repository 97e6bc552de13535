//! Bubble radius of two-colored random-walk graphs and edge recommendations
//! that shrink it.
//!
//! The bubble radius of a node is the expected number of steps, capped at a
//! horizon `t`, that a random walk from it needs to reach a node of the other
//! color. Exact values come from a dynamic program over walk lengths;
//! seeded Monte Carlo estimators scale to larger graphs. The recommenders
//! pick cross-color edges that lower the radius of the worst-off nodes.
//!
//! All exact computation is generic over [`Scalar`], so the same code runs in
//! `f64`, `f32` or exact rationals:
//!
//! ```
//! use bubble_radius::{build_graph, exact_br, Color};
//! use num_rational::Rational64;
//!
//! let r = |n, d| Rational64::new(n, d);
//! let g = build_graph(
//!     vec![Color::Red, Color::Red, Color::Red, Color::Blue],
//!     &[(0, 1, r(1, 1)), (1, 2, r(1, 1)), (2, 0, r(1, 2)), (2, 3, r(1, 2)), (3, 0, r(1, 1))],
//! )
//! .unwrap();
//! let brs = exact_br(&g, 4).unwrap();
//! assert_eq!(brs.get(0), r(7, 2));
//! ```

pub mod bias;
pub mod config;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod mc;
pub mod plan;
pub mod recommender;
pub mod scalar;

pub use bias::{budget_allocation, classify, compute_brs, gain, parochial_of, structural_bias, BiasPartition};
pub use config::{Backend, WalkConfig};
pub use error::{Error, Result};
pub use exact::{
    brute_force_opt, exact_br, exact_bounded_hitting, exact_first_passage, exact_gain, exact_gamma, exact_return_mass,
    exact_rwcc, BrTable, Provenance,
};
pub use graph::{build_graph, weight_oracle, Color, ColoredGraph, EdgeInsertion};
pub use plan::InsertionPlan;
pub use recommender::{recommend, repbublik, repbublik_plus, select_target, Algorithm, TargetPolicy};
pub use scalar::Scalar;

/// Graph with `f64` weights, the default for estimation and experiments.
pub type Graph = ColoredGraph<f64>;
/// Graph with `f32` weights.
pub type Graph32 = ColoredGraph<f32>;
/// Graph with exact rational weights.
pub type ExactGraph = ColoredGraph<num_rational::Rational64>;
pub type Plan = InsertionPlan<f64>;
pub type ExactPlan = InsertionPlan<num_rational::Rational64>;
pub type Brs = BrTable<f64>;
pub type ExactBrs = BrTable<num_rational::Rational64>;
