#include "gsync/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gsync {

MeasurementGraph MeasurementGraph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw std::invalid_argument("MeasurementGraph: need n >= 1");
    std::sort(edges.begin(), edges.end());
    std::set<std::pair<int, int>> seen;
    for (auto& [i, j] : edges) {
        if (i < 0 || j <= i || j >= n)
            throw std::invalid_argument("MeasurementGraph: edge indices must satisfy 0 <= i < j < n");
        if (!seen.insert({i, j}).second)
            throw std::invalid_argument("MeasurementGraph: duplicate edge");
    }
    MeasurementGraph g;
    g.n = n;
    g.edges = std::move(edges);
    g.adj.resize(n);
    for (auto& [i, j] : g.edges) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
    }
    g.r.resize(n);
    for (int i = 0; i < n; ++i) g.r[i] = static_cast<int>(g.adj[i].size()) + 1;
    if (!g.is_connected())
        throw std::invalid_argument("MeasurementGraph: graph is disconnected");
    return g;
}

bool MeasurementGraph::is_connected() const {
    if (n == 0) return false;
    std::vector<char> visited(n, false);
    std::vector<int> stack{0};
    visited[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
            if (!visited[w]) {
                visited[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

ConnectivityStats connectivity_stats(const MeasurementGraph& graph) {
    const int n = graph.n;
    if (n < 2) throw std::invalid_argument("connectivity_stats: need n >= 2");
    // Accumulate mu_jk = sum_i w_ij w_ik / r_i^2 over the extended
    // neighborhoods (self-loops included).
    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
    std::vector<int> nbrs;
    for (int i = 0; i < n; ++i) {
        nbrs.assign(graph.adj[i].begin(), graph.adj[i].end());
        nbrs.push_back(i);
        const double inv_r2 = 1.0 / (static_cast<double>(graph.r[i]) * graph.r[i]);
        for (size_t a = 0; a < nbrs.size(); ++a)
            for (size_t b = a; b < nbrs.size(); ++b) {
                mu(nbrs[a], nbrs[b]) += inv_r2;
                if (a != b) mu(nbrs[b], nbrs[a]) += inv_r2;
            }
    }
    ConnectivityStats stats;
    const double inv_n = 1.0 / n;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const double dev = std::abs(mu(j, k) - inv_n);
            if (n * dev > stats.kappa1) {
                stats.kappa1 = n * dev;
                stats.argmax_j = j;
                stats.argmax_k = k;
            }
        }
        stats.kappa2 = std::max(stats.kappa2, mu(j, j) - inv_n);
    }
    stats.kappa2 = std::max(stats.kappa2, 0.0);
    stats.kappa = stats.kappa1 + stats.kappa2;
    return stats;
}

BlockSymMatrix assemble_C(const MeasurementGraph& graph,
                          const std::vector<Eigen::MatrixXd>& observations, int d) {
    if (observations.size() != graph.edges.size())
        throw std::invalid_argument("assemble_C: one observation per edge required");
    BlockSymMatrix C(graph.n, d, /*identity_diagonal=*/true);
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        if (!observations[e].allFinite())
            throw std::invalid_argument("assemble_C: non-finite observation block");
        C.add_block(graph.edges[e].first, graph.edges[e].second, observations[e]);
    }
    return C;
}

Instance Instance::build(GroupSpec spec, MeasurementGraph graph,
                         std::vector<Eigen::MatrixXd> observations,
                         std::optional<BlockColumn> ground_truth) {
    Instance inst;
    inst.C = assemble_C(graph, observations, spec.d);
    if (ground_truth && (ground_truth->n != graph.n || ground_truth->d != spec.d))
        throw std::invalid_argument("Instance: ground truth shape mismatch");
    inst.spec = spec;
    inst.graph = std::move(graph);
    inst.observations = std::move(observations);
    inst.ground_truth = std::move(ground_truth);
    return inst;
}

BlockSymMatrix delta_matrix(const Instance& instance) {
    if (!instance.ground_truth)
        throw std::invalid_argument("delta_matrix: instance has no ground truth");
    const BlockColumn& G = *instance.ground_truth;
    const int d = instance.spec.d;
    BlockSymMatrix delta(instance.graph.n, d, /*identity_diagonal=*/false);
    for (size_t e = 0; e < instance.graph.edges.size(); ++e) {
        const auto [i, j] = instance.graph.edges[e];
        delta.add_block(i, j, instance.observations[e] - G.block(i) * G.block(j).transpose());
    }
    return delta;
}

Eigen::MatrixXd degree_inverse_apply(const MeasurementGraph& graph, const Eigen::MatrixXd& Y,
                                     int d) {
    if (Y.rows() != static_cast<Eigen::Index>(graph.n) * d)
        throw std::invalid_argument("degree_inverse_apply: dimension mismatch");
    Eigen::MatrixXd out = Y;
    for (int i = 0; i < graph.n; ++i) out.middleRows(i * d, d) /= static_cast<double>(graph.r[i]);
    return out;
}

BlockColumn degree_inverse_apply(const MeasurementGraph& graph, const BlockColumn& Y) {
    BlockColumn out = Y;
    out.data = degree_inverse_apply(graph, Y.data, Y.d);
    return out;
}

}  // namespace gsync
