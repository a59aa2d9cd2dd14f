#pragma once

#include <cstdint>

#include "gsync/model.hpp"
#include "gsync/rng.hpp"

namespace gsync {

struct GraphConfig {
    int n = 0;
    double p = 1.0;  // observation rate in (0, 1]
};

enum class NoiseModel {
    None,
    AdditiveGaussian,    // i.i.d. N(0, sigma^2) entries added to the ratio
    AdditiveUniform,     // i.i.d. U(-bound, bound) entries
    OutlierTimesLangevin,  // SO(3): ratio * outlier * Langevin
    OutlierOnly,           // Z_m: ratio * (I w.p. q, uniform Q_k otherwise)
    ProjectedAdditive,     // P(d): project(ratio + delta * Gaussian)
};

struct NoiseConfig {
    NoiseModel model = NoiseModel::None;
    double sigma = 0.0;  // AdditiveGaussian
    double bound = 0.0;  // AdditiveUniform
    double q = 1.0;      // non-corruption probability for outlier models
    double gamma = 0.0;  // Langevin concentration
    double delta = 0.0;  // ProjectedAdditive magnitude

    void validate() const;
};

/// Erdos-Renyi graph: each pair included independently with probability p,
/// resampled until connected (at most 100 attempts).
MeasurementGraph gen_graph(const GraphConfig& cfg, Rng& rng);

/// n i.i.d. uniform group elements.
BlockColumn gen_ground_truth(const GroupSpec& spec, int n, Rng& rng);

/// Per-edge observations under the selected noise model. Each edge draws
/// from its own RNG substream (indexed by edge position), so the noise is
/// independent of iteration order.
std::vector<Eigen::MatrixXd> gen_observations(const GroupSpec& spec,
                                              const MeasurementGraph& graph,
                                              const BlockColumn& ground_truth,
                                              const NoiseConfig& noise, const Rng& edge_streams);

/// Rotation with Haar-uniform axis and angle density proportional to
/// exp(2*gamma*cos(phi)) * (1 - cos(phi)) on [0, pi], realizing the matrix
/// Langevin density proportional to exp(gamma * Tr(R)) on SO(3).
Eigen::Matrix3d sample_langevin_so3(double gamma, Rng& rng);

/// Full seeded pipeline: graph, ground truth, observations, assembled C.
Instance gen_instance(const GroupSpec& spec, const GraphConfig& graph_cfg,
                      const NoiseConfig& noise, std::uint64_t seed);

}  // namespace gsync
