#include <doctest.h>

#include "gsync/gen.hpp"
#include "gsync/model.hpp"

using namespace gsync;

namespace {

MeasurementGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return MeasurementGraph::from_edges(n, std::move(edges));
}

// O(n^3) triple-loop reference for the connectivity parameters.
ConnectivityStats brute_force_stats(const MeasurementGraph& graph) {
    const int n = graph.n;
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
    for (auto [i, j] : graph.edges) w(i, j) = w(j, i) = 1.0;
    Eigen::VectorXd r = w.rowwise().sum();
    ConnectivityStats stats;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            double mu = 0.0;
            for (int i = 0; i < n; ++i) mu += w(i, j) * w(i, k) / (r(i) * r(i));
            if (j < k) stats.kappa1 = std::max(stats.kappa1, n * std::abs(mu - 1.0 / n));
            if (j == k) stats.kappa2 = std::max(stats.kappa2, mu - 1.0 / n);
        }
    }
    stats.kappa2 = std::max(stats.kappa2, 0.0);
    stats.kappa = stats.kappa1 + stats.kappa2;
    return stats;
}

}  // namespace

TEST_CASE("graph construction and validation") {
    CHECK_THROWS_AS(MeasurementGraph::from_edges(3, {{0, 1}}), std::invalid_argument);  // disconnected
    CHECK_THROWS_AS(MeasurementGraph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MeasurementGraph::from_edges(3, {{0, 1}, {0, 1}, {1, 2}}),
                    std::invalid_argument);
    const MeasurementGraph g = MeasurementGraph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(g.r == std::vector<int>{2, 3, 2});
}

TEST_CASE("connectivity stats") {
    SUBCASE("complete graph has kappa at rounding level") {
        for (int n : {2, 3, 10, 25}) {
            const ConnectivityStats stats = connectivity_stats(complete_graph(n));
            CHECK(stats.kappa1 < 1e-13);
            CHECK(stats.kappa2 < 1e-13);
            CHECK(stats.kappa < 1e-13);
        }
    }
    SUBCASE("two-node path: mu_jk = 1/2 = 1/n, so kappa vanishes") {
        const ConnectivityStats stats =
            connectivity_stats(MeasurementGraph::from_edges(2, {{0, 1}}));
        CHECK(stats.kappa1 == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(stats.kappa2 == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("star graph matches the brute-force oracle") {
        const MeasurementGraph star = MeasurementGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
        const ConnectivityStats fast = connectivity_stats(star);
        const ConnectivityStats ref = brute_force_stats(star);
        CHECK(fast.kappa1 == doctest::Approx(ref.kappa1).epsilon(1e-12));
        CHECK(fast.kappa2 == doctest::Approx(ref.kappa2).epsilon(1e-12));
    }
    SUBCASE("random graphs up to n = 50 match the brute-force oracle") {
        Rng rng(5);
        for (int trial = 0; trial < 15; ++trial) {
            const int n = 5 + static_cast<int>(rng.uniform_int(46));
            GraphConfig cfg{n, 0.3 + 0.5 * rng.uniform()};
            const MeasurementGraph g = gen_graph(cfg, rng);
            const ConnectivityStats fast = connectivity_stats(g);
            const ConnectivityStats ref = brute_force_stats(g);
            CHECK(fast.kappa1 == doctest::Approx(ref.kappa1).epsilon(1e-12));
            CHECK(fast.kappa2 == doctest::Approx(ref.kappa2).epsilon(1e-12));
            CHECK(fast.kappa == doctest::Approx(ref.kappa).epsilon(1e-12));
        }
    }
}

TEST_CASE("assemble_C") {
    SUBCASE("two nodes, identity observation") {
        const MeasurementGraph g = MeasurementGraph::from_edges(2, {{0, 1}});
        const BlockSymMatrix C = assemble_C(g, {Eigen::MatrixXd::Identity(2, 2)}, 2);
        Eigen::MatrixXd expect(4, 4);
        expect << 1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1;
        CHECK((C.to_dense() - expect).norm() == 0.0);
    }
    SUBCASE("path graph leaves non-edge blocks zero") {
        const MeasurementGraph g = MeasurementGraph::from_edges(3, {{0, 1}, {1, 2}});
        Eigen::MatrixXd B = Eigen::MatrixXd::Constant(2, 2, 0.5);
        const BlockSymMatrix C = assemble_C(g, {B, B}, 2);
        const Eigen::MatrixXd dense = C.to_dense();
        CHECK(dense.block(0, 4, 2, 2).norm() == 0.0);
        CHECK(dense.block(4, 0, 2, 2).norm() == 0.0);
    }
    SUBCASE("observation count must match the edge count") {
        const MeasurementGraph g = MeasurementGraph::from_edges(3, {{0, 1}, {1, 2}});
        CHECK_THROWS_AS(assemble_C(g, {Eigen::MatrixXd::Identity(2, 2)}, 2),
                        std::invalid_argument);
    }
}

TEST_CASE("delta_matrix") {
    Rng rng(7);
    const GroupSpec spec = GroupSpec::special_orthogonal(3);
    SUBCASE("noiseless instance has zero delta") {
        const Instance inst = gen_instance(spec, {6, 1.0}, {}, 42);
        const BlockSymMatrix delta = delta_matrix(inst);
        CHECK(delta.to_dense().norm() == 0.0);
    }
    SUBCASE("additive noise: delta blocks equal the drawn noise exactly") {
        NoiseConfig noise;
        noise.model = NoiseModel::AdditiveGaussian;
        noise.sigma = 0.3;
        const Instance inst = gen_instance(spec, {6, 1.0}, noise, 43);
        const BlockSymMatrix delta = delta_matrix(inst);
        const BlockColumn& G = *inst.ground_truth;
        double sum_sq = 0.0;
        for (size_t e = 0; e < inst.graph.edges.size(); ++e) {
            const auto [i, j] = inst.graph.edges[e];
            const Eigen::MatrixXd theta =
                inst.observations[e] - G.block(i) * G.block(j).transpose();
            CHECK((delta.entries()[e].block - theta).norm() == 0.0);
            sum_sq += theta.squaredNorm();
        }
        // ||Delta||_F^2 = 2 * sum over edges (direct-summation oracle).
        CHECK(delta.to_dense().norm() == doctest::Approx(std::sqrt(2.0 * sum_sq)).epsilon(1e-12));
    }
    SUBCASE("requires ground truth") {
        Instance inst = gen_instance(spec, {5, 1.0}, {}, 44);
        inst.ground_truth.reset();
        CHECK_THROWS_AS(delta_matrix(inst), std::invalid_argument);
    }
    SUBCASE("C reconstructs as masked Gram plus delta") {
        NoiseConfig noise;
        noise.model = NoiseModel::AdditiveGaussian;
        noise.sigma = 0.2;
        const Instance inst = gen_instance(spec, {7, 0.7}, noise, 45);
        const BlockColumn& G = *inst.ground_truth;
        const int n = inst.graph.n, d = spec.d;
        Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
        for (auto [i, j] : inst.graph.edges) w(i, j) = w(j, i) = 1.0;
        Eigen::MatrixXd masked = Eigen::MatrixXd::Zero(n * d, n * d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (w(i, j) == 1.0)
                    masked.block(i * d, j * d, d, d) =
                        i == j ? Eigen::MatrixXd::Identity(d, d)
                               : Eigen::MatrixXd(G.block(i) * G.block(j).transpose());
        CHECK((inst.C.to_dense() - (delta_matrix(inst).to_dense() + masked)).norm() < 1e-12);
    }
}

TEST_CASE("degree_inverse_apply") {
    const MeasurementGraph path = MeasurementGraph::from_edges(3, {{0, 1}, {1, 2}});
    BlockColumn Y(3, 2);
    Y.data.setOnes();
    const BlockColumn out = degree_inverse_apply(path, Y);
    CHECK(out.block(0)(0, 0) == doctest::Approx(0.5));
    CHECK(out.block(1)(0, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(out.block(2)(0, 0) == doctest::Approx(0.5));

    // D^-1 D Y = Y.
    BlockColumn DY = Y;
    for (int i = 0; i < 3; ++i) DY.block(i) *= path.r[i];
    CHECK((degree_inverse_apply(path, DY).data - Y.data).norm() < 1e-15);

    // Complete graph scales uniformly by 1/n.
    const MeasurementGraph complete = complete_graph(4);
    BlockColumn Z(4, 2);
    Z.data.setConstant(2.0);
    CHECK((degree_inverse_apply(complete, Z).data -
           Eigen::MatrixXd::Constant(8, 2, 0.5)).norm() < 1e-15);
}
