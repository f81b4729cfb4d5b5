//! Finite carriers: rooted planar leaf trees (C-relation with a compatible
//! order), unrooted leaf trees (D-relation), circle configurations (local
//! order), and induced-subtree topology.

mod circle;
mod closure;
mod random;
mod rooted;
mod topology;
mod unrooted;

pub use circle::{build_circle_config, CircleConfig, CircleDoc, CircleScalar};
pub use closure::{witness_closure, ClosedTree};
pub use random::{random_fragment, random_rooted, random_unrooted, Fragment};
pub use rooted::{build_leaf_tree, c_of_leaves, LeafTree, Shape};
pub use topology::{induced_topology, rooted_quartet_shape, QuartetShape, Topology};
pub use unrooted::{d_of_leaves, UnrootedDoc, UnrootedLeafTree};
