#include "gsync/gen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gsync {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix3d rotation_about_axis(const Eigen::Vector3d& axis, double angle) {
    return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

Eigen::Vector3d uniform_axis(Rng& rng) {
    // Marsaglia: uniform on S^2.
    for (;;) {
        const double x = rng.uniform(-1.0, 1.0);
        const double y = rng.uniform(-1.0, 1.0);
        const double s = x * x + y * y;
        if (s >= 1.0 || s == 0.0) continue;
        const double f = 2.0 * std::sqrt(1.0 - s);
        return {x * f, y * f, 1.0 - 2.0 * s};
    }
}

/// Haar angle on [0, pi]: density (1 - cos(phi)) / pi, sampled by rejection
/// from the uniform angle with acceptance (1 - cos(phi)) / 2.
double haar_angle(Rng& rng) {
    for (;;) {
        const double phi = rng.uniform(0.0, kPi);
        if (rng.uniform() < 0.5 * (1.0 - std::cos(phi))) return phi;
    }
}

}  // namespace

void NoiseConfig::validate() const {
    switch (model) {
        case NoiseModel::None:
            break;
        case NoiseModel::AdditiveGaussian:
            if (sigma < 0) throw std::invalid_argument("NoiseConfig: sigma must be >= 0");
            break;
        case NoiseModel::AdditiveUniform:
            if (bound < 0) throw std::invalid_argument("NoiseConfig: bound must be >= 0");
            break;
        case NoiseModel::OutlierTimesLangevin:
            if (gamma < 0) throw std::invalid_argument("NoiseConfig: gamma must be >= 0");
            [[fallthrough]];
        case NoiseModel::OutlierOnly:
            if (q <= 0 || q > 1) throw std::invalid_argument("NoiseConfig: q must be in (0, 1]");
            break;
        case NoiseModel::ProjectedAdditive:
            if (delta < 0) throw std::invalid_argument("NoiseConfig: delta must be >= 0");
            break;
    }
}

MeasurementGraph gen_graph(const GraphConfig& cfg, Rng& rng) {
    if (cfg.n < 2) throw std::invalid_argument("gen_graph: need n >= 2");
    if (cfg.p <= 0.0 || cfg.p > 1.0)
        throw std::invalid_argument("gen_graph: need p in (0, 1]");
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < cfg.n; ++i)
            for (int j = i + 1; j < cfg.n; ++j)
                if (cfg.p >= 1.0 || rng.uniform() < cfg.p) edges.emplace_back(i, j);
        try {
            return MeasurementGraph::from_edges(cfg.n, std::move(edges));
        } catch (const std::invalid_argument&) {
            // disconnected draw; resample
        }
    }
    throw std::runtime_error(
        "gen_graph: 100 consecutive disconnected draws; increase the observation rate p");
}

BlockColumn gen_ground_truth(const GroupSpec& spec, int n, Rng& rng) {
    BlockColumn G(n, spec.d);
    for (int i = 0; i < n; ++i) G.block(i) = sample_uniform(spec, rng).mat;
    return G;
}

Eigen::Matrix3d sample_langevin_so3(double gamma, Rng& rng) {
    if (gamma < 0) throw std::invalid_argument("sample_langevin_so3: gamma must be >= 0");
    // Rejection against the Haar angle law with envelope exp(2*gamma*(cos-1)) <= 1.
    double phi;
    for (;;) {
        phi = haar_angle(rng);
        if (gamma == 0.0) break;
        if (std::log(std::max(rng.uniform(), 1e-300)) < 2.0 * gamma * (std::cos(phi) - 1.0)) break;
    }
    return rotation_about_axis(uniform_axis(rng), phi);
}

std::vector<Eigen::MatrixXd> gen_observations(const GroupSpec& spec,
                                              const MeasurementGraph& graph,
                                              const BlockColumn& ground_truth,
                                              const NoiseConfig& noise, const Rng& edge_streams) {
    noise.validate();
    if (noise.model == NoiseModel::OutlierTimesLangevin &&
        !(spec.kind == GroupKind::SpecialOrthogonal && spec.d == 3))
        throw std::invalid_argument("gen_observations: OutlierTimesLangevin requires SO(3)");
    if (noise.model == NoiseModel::OutlierOnly && spec.kind != GroupKind::Cyclic)
        throw std::invalid_argument("gen_observations: OutlierOnly requires a cyclic group");
    if (noise.model == NoiseModel::ProjectedAdditive && spec.kind != GroupKind::Permutation)
        throw std::invalid_argument("gen_observations: ProjectedAdditive requires permutations");

    const int d = spec.d;
    std::vector<Eigen::MatrixXd> obs;
    obs.reserve(graph.edges.size());
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        const auto [i, j] = graph.edges[e];
        Rng rng = edge_streams.substream(e);
        const Eigen::MatrixXd ratio = ground_truth.block(i) * ground_truth.block(j).transpose();
        switch (noise.model) {
            case NoiseModel::None:
                obs.push_back(ratio);
                break;
            case NoiseModel::AdditiveGaussian: {
                Eigen::MatrixXd theta(d, d);
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) theta(a, b) = noise.sigma * rng.gaussian();
                obs.push_back(ratio + theta);
                break;
            }
            case NoiseModel::AdditiveUniform: {
                Eigen::MatrixXd theta(d, d);
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b)
                        theta(a, b) = rng.uniform(-noise.bound, noise.bound);
                obs.push_back(ratio + theta);
                break;
            }
            case NoiseModel::OutlierTimesLangevin: {
                Eigen::MatrixXd out = ratio;
                if (rng.uniform() >= noise.q) out = out * sample_uniform(spec, rng).mat;
                out = out * sample_langevin_so3(noise.gamma, rng);
                obs.push_back(out);
                break;
            }
            case NoiseModel::OutlierOnly: {
                Eigen::MatrixXd out = ratio;
                if (rng.uniform() >= noise.q) {
                    const int k = static_cast<int>(rng.uniform_int(spec.m));
                    out = out * cyclic_element(spec.m, k);
                }
                obs.push_back(out);
                break;
            }
            case NoiseModel::ProjectedAdditive: {
                Eigen::MatrixXd W(d, d);
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) W(a, b) = rng.gaussian();
                obs.push_back(project_permutation(ratio + noise.delta * W).mat);
                break;
            }
        }
    }
    return obs;
}

Instance gen_instance(const GroupSpec& spec, const GraphConfig& graph_cfg,
                      const NoiseConfig& noise, std::uint64_t seed) {
    Rng root(seed);
    Rng graph_rng = root.substream(0);
    Rng truth_rng = root.substream(1);
    Rng edge_streams = root.substream(2);
    MeasurementGraph graph = gen_graph(graph_cfg, graph_rng);
    BlockColumn truth = gen_ground_truth(spec, graph_cfg.n, truth_rng);
    auto obs = gen_observations(spec, graph, truth, noise, edge_streams);
    return Instance::build(spec, std::move(graph), std::move(obs), std::move(truth));
}

}  // namespace gsync
