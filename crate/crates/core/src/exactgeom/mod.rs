//! Exact geometry primitives.

pub mod graph;
pub mod lp;
pub mod planar;
pub mod polytope;
pub mod rational;
pub mod scalar;

pub use graph::{edge_graph, is_edge, is_generic, orient, orient_edges, orient_weak, DirectedGraph};
pub use lp::{lp_maximize, max_margin, Bound, Constraint, LpResult, LpStatus, Margin, Relation};
pub use planar::{hull2d, project2d, upper_path, Hull2d};
pub use polytope::{NonVertexPolicy, Polytope};
pub use rational::{ParseRationalError, Rational};
pub use scalar::{Backend, Scalar, DEFAULT_TOLERANCE};
