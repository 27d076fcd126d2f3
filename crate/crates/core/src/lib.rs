//! Exact Kantorovich (1-Wasserstein) distances, optimal couplings and dual
//! Lipschitz potentials for probability measures on finite weighted graphs.
//!
//! Trees get closed forms through cumulative sums, general graphs go through
//! the minimum over spanning trees, cycles through a weighted-median formula,
//! and everything can be cross-checked against an exact min-cost-flow
//! transportation solver in [`oracle`]. All arithmetic is over
//! [`rational::Rational`].

pub mod articulation;
pub mod cut;
pub mod error;
pub mod graph;
pub mod graph_norm;
pub mod io;
pub mod lipschitz;
pub mod measure;
pub mod metric;
pub mod oracle;
pub mod plan;
pub mod quotient;
pub mod rational;
pub mod spanning;
pub mod tree;
pub mod tree_norm;

pub use error::{Error, ErrorClass, Result};
pub use cut::{CutFamily, VertexSet};
pub use graph::{VertexId, WeightedGraph};
pub use lipschitz::{LipschitzFunction, SignAssignment};
pub use measure::{Coupling, Measure, ProbabilityFunction, ZeroMassVector};
pub use metric::DistanceMatrix;
pub use rational::{Rational, Sign};
pub use quotient::QuotientMap;
pub use tree::RootedTree;
