//! Groupie vertices in Erdős–Rényi graphs `B(n, p)` and random bipartite
//! graphs `B(n1, n2, p)`.
//!
//! A vertex is a *groupie* when the average degree of its neighbours is at
//! least the average degree `2e/n` of the whole graph. An isolated vertex is a
//! groupie only when the graph has no edges at all.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] and [`generate`]: the graph substrate and seeded samplers.
//! * [`groupie`]: the predicate, whole-graph reports and the conditioning
//!   statistics for a single vertex and an adjacent pair.
//! * [`moments`]: conditional means, variances and covariances of those
//!   statistics, both as closed forms and from the binomial decomposition.
//! * [`asymptotics`]: the normal CDF, the limiting groupie proportions and
//!   the auxiliary bounds.
//! * [`oracle`]: exhaustive enumeration of small labelled graphs and the
//!   exact verification suites built on it.
//! * [`montecarlo`]: the reproducible trial runner.

pub mod asymptotics;
pub mod error;
pub mod generate;
pub mod graph;
pub mod groupie;
pub mod moments;
pub mod montecarlo;
pub mod oracle;

pub use error::{Error, Result};
pub use generate::{gen_bipartite, gen_gnp, EdgeSampler, ModelParams, RngSeed};
pub use graph::{load_edge_list, Graph};
pub use groupie::{
    groupie_report, is_groupie, neighborhood_stats, pair_partition_stats, pair_statistics,
    single_vertex_statistic, GroupieReport, NeighborhoodStats, PairPartitionStats,
};
