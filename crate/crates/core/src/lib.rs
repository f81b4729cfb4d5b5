//! Finite fragments of set-homogeneous hypergraphs: carriers, derived
//! relations, reconstruction formulas, group actions, and the finite
//! verification harnesses.

pub mod casesolver;
pub mod cli;
pub mod census;
pub mod edges;
pub mod error;
pub mod groups;
pub mod homtest;
pub mod reconstruct;
pub mod relstruct;
pub mod subset;
pub mod treelike;

pub use edges::{Family, KHypergraph};
pub use error::{Error, Result};
pub use relstruct::{FinOrder, QuaternaryRel, TernaryRel, Tournament};

/// Circle configurations with exact rational positions.
pub type RationalCircle = treelike::CircleConfig<num_rational::Rational64>;
/// Circle configurations with floating-point positions.
pub type FloatCircle = treelike::CircleConfig<f64>;
