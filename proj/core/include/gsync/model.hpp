#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gsync/block.hpp"
#include "gsync/group.hpp"

namespace gsync {

/// Edge set on [n] with implicit self-loops. The "extended" graph adds one
/// self-loop at every node, so r_i = deg(i) + 1 >= 1.
struct MeasurementGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted
    std::vector<std::vector<int>> adj;       // neighbors, excluding self
    std::vector<int> r;                      // extended degrees

    /// Builds adjacency and degrees from `n` and `edges`; throws on invalid
    /// or duplicate edges and on a disconnected graph.
    static MeasurementGraph from_edges(int n, std::vector<std::pair<int, int>> edges);

    bool is_connected() const;
};

/// Connectivity parameters of the extended measurement graph, built from
/// mu_jk = sum_i w_ij w_ik / r_i^2. All are zero on the complete graph.
struct ConnectivityStats {
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double kappa = 0.0;
    int argmax_j = -1;  // pair attaining kappa1
    int argmax_k = -1;
};

ConnectivityStats connectivity_stats(const MeasurementGraph& graph);

/// A synchronization problem instance: group, graph, per-edge observations
/// (aligned with graph.edges), optional ground truth, and the assembled
/// data matrix C.
struct Instance {
    GroupSpec spec;
    MeasurementGraph graph;
    std::vector<Eigen::MatrixXd> observations;  // one d x d block per edge
    std::optional<BlockColumn> ground_truth;
    BlockSymMatrix C;

    static Instance build(GroupSpec spec, MeasurementGraph graph,
                          std::vector<Eigen::MatrixXd> observations,
                          std::optional<BlockColumn> ground_truth);
};

/// Data matrix: observation blocks off-diagonal (transpose implicit),
/// identity blocks on the diagonal.
BlockSymMatrix assemble_C(const MeasurementGraph& graph,
                          const std::vector<Eigen::MatrixXd>& observations, int d);

/// Noise matrix: C_ij minus the ground-truth ratio on edges, zero elsewhere
/// (including the diagonal). Throws if the instance has no ground truth.
BlockSymMatrix delta_matrix(const Instance& instance);

/// Scales block i of Y by 1/r_i.
BlockColumn degree_inverse_apply(const MeasurementGraph& graph, const BlockColumn& Y);
Eigen::MatrixXd degree_inverse_apply(const MeasurementGraph& graph, const Eigen::MatrixXd& Y,
                                     int d);

}  // namespace gsync
