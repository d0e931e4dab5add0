//! Hierarchical nets, the net-tree spanner, and cluster-graph distance
//! approximations used by the fast pruning mode.

mod cluster;
mod hierarchy;
mod region;

pub use cluster::{build_cluster_graph, cluster_dist, ClusterGraph, DEFAULT_HOP_CAP};
pub use hierarchy::{
    approximate_edge, build_hierarchy, build_net_tree_spanner, build_net_tree_spanner_with, cross_factor,
    NetHierarchy,
};
pub(crate) use hierarchy::approximate_level;
pub(crate) use region::region_points_at;
pub use region::{dist_to_region, region_net_points, region_net_points_with};
