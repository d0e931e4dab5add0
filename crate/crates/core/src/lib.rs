//! Euclidean (1+ε)-spanners.
//!
//! Builders (path-greedy, net-tree, greedy pruning), exact stretch
//! verification, sparsity/lightness metrics, and generators for point sets on
//! which the greedy spanner is far from optimal.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiment;
pub mod geom;
pub mod graph;
pub mod instances;
pub mod io;
pub mod nets;
pub mod prune;

pub use error::{Error, Result};
pub use instances::{GeneratedInstance, InstanceMeta};
pub use geom::{normalize, Point, PointSet, Region, Side};
pub use graph::{
    brute_force_optimal, emst_weight, metrics, path_greedy, shortest_dist, verify_stretch,
    MetricsReport, Objective, SpannerGraph,
};
