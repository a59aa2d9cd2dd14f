#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <vector>

#include "gsync/group.hpp"

using namespace gsync;

namespace {

Eigen::MatrixXd random_matrix(int d, Rng& rng, double lo = -1.0, double hi = 1.0) {
    Eigen::MatrixXd X(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) X(i, j) = rng.uniform(lo, hi);
    return X;
}

Eigen::MatrixXd random_gaussian(int d, Rng& rng) {
    Eigen::MatrixXd X(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) X(i, j) = rng.gaussian();
    return X;
}

// Exhaustive assignment oracle: best permutation by inner product.
Eigen::MatrixXd brute_force_permutation(const Eigen::MatrixXd& X) {
    const int d = static_cast<int>(X.rows());
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> best_perm = perm;
    do {
        double val = 0.0;
        for (int j = 0; j < d; ++j) val += X(perm[j], j);
        if (val > best) {
            best = val;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(d, d);
    for (int j = 0; j < d; ++j) Q(best_perm[j], j) = 1.0;
    return Q;
}

double brute_force_cyclic_dist(const Eigen::MatrixXd& X, int m) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) best = std::min(best, (X - cyclic_element(m, k)).norm());
    return best;
}

Eigen::Matrix2d rotation2(double angle) {
    Eigen::Matrix2d R;
    R << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return R;
}

}  // namespace

TEST_CASE("rho constants") {
    CHECK(rho(GroupSpec::orthogonal(3)) == 1.0);
    CHECK(rho(GroupSpec::special_orthogonal(2)) == 1.0);
    CHECK(rho(GroupSpec::permutation(7)) == 1.0);
    CHECK(rho(GroupSpec::cyclic(1)) == 1.0);
    CHECK(rho(GroupSpec::cyclic(2)) == 1.0);
    CHECK(rho(GroupSpec::cyclic(6)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rho(GroupSpec::cyclic(4)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("project dispatch examples") {
    // Already-diagonal positive input: Procrustes factor is the identity.
    Eigen::MatrixXd D = Eigen::Vector2d(2.0, 3.0).asDiagonal();
    CHECK((project(GroupSpec::orthogonal(2), D).mat - Eigen::Matrix2d::Identity()).norm() < 1e-12);

    Eigen::MatrixXd X(2, 2);
    X << 0.1, 0.9, 0.8, 0.2;
    Eigen::MatrixXd swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK((project(GroupSpec::permutation(2), X).mat - swap).norm() == 0.0);

    const Eigen::Matrix2d rot40 = rotation2(40.0 * std::numbers::pi / 180.0);
    CHECK((project(GroupSpec::cyclic(4), rot40).mat - Eigen::Matrix2d::Identity()).norm() < 1e-12);

    Rng rng(5);
    CHECK((project(GroupSpec::cyclic(1), random_matrix(2, rng)).mat -
           Eigen::Matrix2d::Identity()).norm() < 1e-12);
}

TEST_CASE("project input validation") {
    CHECK_THROWS_AS(project(GroupSpec::orthogonal(3), Eigen::Matrix2d::Identity()),
                    std::invalid_argument);
    Eigen::MatrixXd bad = Eigen::Matrix2d::Identity();
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(project(GroupSpec::orthogonal(2), bad), std::invalid_argument);
}

TEST_CASE("orthogonal projection basics and scale invariance") {
    CHECK((project_orthogonal(Eigen::Matrix3d::Identity()).mat - Eigen::Matrix3d::Identity())
              .norm() < 1e-12);
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd Q = sample_uniform(GroupSpec::orthogonal(3), rng).mat;
        CHECK((project_orthogonal(5.0 * Q).mat - Q).norm() < 1e-10);
    }
}

TEST_CASE("orthogonal projection beats Haar samples") {
    Rng rng(13);
    const GroupSpec spec = GroupSpec::orthogonal(3);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::MatrixXd X = random_gaussian(3, rng);
        const Eigen::MatrixXd R = project_orthogonal(X).mat;
        const double best = (X.transpose() * R).trace();
        for (int s = 0; s < 20000; ++s) {
            const Eigen::MatrixXd Q = sample_uniform(spec, rng).mat;
            CHECK(best >= (X.transpose() * Q).trace() - 1e-9);
        }
    }
}

TEST_CASE("special orthogonal projection") {
    CHECK((project_special_orthogonal(Eigen::Matrix3d::Identity()).mat -
           Eigen::Matrix3d::Identity()).norm() < 1e-12);

    Rng rng(17);
    SUBCASE("member projects to itself") {
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::MatrixXd R = sample_uniform(GroupSpec::special_orthogonal(3), rng).mat;
            CHECK((project_special_orthogonal(R).mat - R).norm() < 1e-9);
        }
    }
    SUBCASE("determinant always +1") {
        for (int trial = 0; trial < 200; ++trial) {
            const Eigen::MatrixXd R = project_special_orthogonal(random_gaussian(3, rng)).mat;
            CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("matches 2D rotation grid oracle on a reflection-like input") {
        Eigen::MatrixXd X = Eigen::Vector2d(1.0, -2.0).asDiagonal();
        const Eigen::MatrixXd R = project_special_orthogonal(X).mat;
        double best_dist = std::numeric_limits<double>::infinity();
        Eigen::Matrix2d best = Eigen::Matrix2d::Identity();
        for (double a = 0.0; a < 2.0 * std::numbers::pi; a += 1e-4) {
            const Eigen::Matrix2d cand = rotation2(a);
            const double dist = (X - cand).norm();
            if (dist < best_dist) {
                best_dist = dist;
                best = cand;
            }
        }
        CHECK((X - R).norm() <= best_dist + 1e-7);
        CHECK((R - best).norm() < 1e-3);
    }
}

TEST_CASE("permutation projection matches exhaustive search") {
    Rng rng(19);
    for (int d = 2; d <= 5; ++d) {
        for (int trial = 0; trial < 50; ++trial) {
            const Eigen::MatrixXd X = random_gaussian(d, rng);
            const Eigen::MatrixXd Q = project_permutation(X).mat;
            const Eigen::MatrixXd Qref = brute_force_permutation(X);
            CHECK((X.transpose() * Q).trace() ==
                  doctest::Approx((X.transpose() * Qref).trace()).epsilon(1e-12));
        }
    }

    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(2, 2);
    X(0, 1) = X(1, 0) = 1.0;
    Eigen::MatrixXd swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK((project_permutation(X).mat - swap).norm() == 0.0);

    CHECK((project_permutation(Eigen::MatrixXd::Identity(4, 4)).mat -
           Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("permutation projection is deterministic on ties") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(3, 3);  // all permutations tie
    const Eigen::MatrixXd Q1 = project_permutation(X).mat;
    const Eigen::MatrixXd Q2 = project_permutation(X).mat;
    CHECK((Q1 - Q2).norm() == 0.0);
    CHECK(is_member(GroupSpec::permutation(3), Q1));
}

TEST_CASE("cyclic projection closed form") {
    SUBCASE("identity input") {
        for (int m : {1, 2, 3, 5, 8}) {
            CHECK((project_cyclic(Eigen::Matrix2d::Identity(), m).mat -
                   Eigen::Matrix2d::Identity()).norm() < 1e-12);
        }
    }
    SUBCASE("m=4 rotation by 40 degrees rounds to identity") {
        const Eigen::Matrix2d X = rotation2(40.0 * std::numbers::pi / 180.0);
        CHECK((project_cyclic(X, 4).mat - Eigen::Matrix2d::Identity()).norm() < 1e-12);
    }
    SUBCASE("agrees with brute force over random inputs") {
        Rng rng(23);
        for (int m = 1; m <= 12; ++m) {
            for (int trial = 0; trial < 100; ++trial) {
                const Eigen::MatrixXd X = random_matrix(2, rng);
                const GroupElement g = project_cyclic(X, m);
                CHECK((X - g.mat).norm() <=
                      doctest::Approx(brute_force_cyclic_dist(X, m)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("degenerate input flags and returns Q_0") {
        Eigen::MatrixXd X(2, 2);
        X << 1.0, 2.0, 2.0, -1.0;  // trace 0 and antisymmetric part 0
        const GroupElement g = project_cyclic(X, 5);
        CHECK(g.degenerate);
        CHECK((g.mat - Eigen::Matrix2d::Identity()).norm() < 1e-12);
    }
}

TEST_CASE("sampling distributions") {
    SUBCASE("Z_1 always the identity") {
        Rng rng(29);
        for (int s = 0; s < 10; ++s)
            CHECK((sample_uniform(GroupSpec::cyclic(1), rng).mat -
                   Eigen::Matrix2d::Identity()).norm() == 0.0);
    }
    SUBCASE("P(3) frequencies are uniform over the 6 permutations") {
        Rng rng(31);
        std::map<std::array<int, 3>, int> counts;
        const int draws = 60000;
        for (int s = 0; s < draws; ++s) {
            const Eigen::MatrixXd Q = sample_uniform(GroupSpec::permutation(3), rng).mat;
            std::array<int, 3> key{};
            for (int j = 0; j < 3; ++j)
                for (int i = 0; i < 3; ++i)
                    if (Q(i, j) == 1.0) key[j] = i;
            counts[key]++;
        }
        CHECK(counts.size() == 6);
        for (const auto& [key, count] : counts)
            CHECK(std::abs(static_cast<double>(count) / draws - 1.0 / 6.0) < 0.01);
    }
    SUBCASE("SO(3) Haar trace averages to zero") {
        Rng rng(37);
        double sum = 0.0;
        const int draws = 100000;
        for (int s = 0; s < draws; ++s)
            sum += sample_uniform(GroupSpec::special_orthogonal(3), rng).mat.trace();
        CHECK(std::abs(sum / draws) < 0.02);
    }
    SUBCASE("samples satisfy membership invariants") {
        Rng rng(41);
        const GroupSpec specs[] = {GroupSpec::orthogonal(4), GroupSpec::special_orthogonal(3),
                                   GroupSpec::permutation(6), GroupSpec::cyclic(7)};
        for (const GroupSpec& spec : specs)
            for (int s = 0; s < 100; ++s)
                CHECK(is_member(spec, sample_uniform(spec, rng).mat));
    }
}

TEST_CASE("projection properties across all groups") {
    Rng rng(43);
    const GroupSpec specs[] = {GroupSpec::orthogonal(3), GroupSpec::special_orthogonal(3),
                               GroupSpec::permutation(4), GroupSpec::cyclic(5)};
    for (const GroupSpec& spec : specs) {
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::MatrixXd X = random_gaussian(spec.d, rng);
            const Eigen::MatrixXd P = project(spec, X).mat;
            CAPTURE(spec.name());

            // Idempotence.
            CHECK((project(spec, P).mat - P).norm() < 1e-9);
            // Result is a group member.
            CHECK(is_member(spec, P));
            // Scale invariance.
            for (double eta : {1e-6, 1.0, 1e6})
                CHECK((project(spec, eta * X).mat - P).norm() < 1e-9);
        }
    }
}

TEST_CASE("rho inequality on convex-combination inputs") {
    Rng rng(47);
    const int n = 20;
    const GroupSpec specs[] = {GroupSpec::orthogonal(3), GroupSpec::special_orthogonal(3),
                               GroupSpec::permutation(5), GroupSpec::cyclic(3),
                               GroupSpec::cyclic(6), GroupSpec::cyclic(12)};
    for (const GroupSpec& spec : specs) {
        const double r = rho(spec);
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::MatrixXd AtB = Eigen::MatrixXd::Zero(spec.d, spec.d);
            for (int i = 0; i < n; ++i) {
                const Eigen::MatrixXd A = sample_uniform(spec, rng).mat;
                const Eigen::MatrixXd B = sample_uniform(spec, rng).mat;
                AtB += A.transpose() * B;
            }
            const Eigen::MatrixXd Q = project(spec, AtB).mat;
            const double lhs = (AtB - n * Q).norm();
            const double rhs = n * spec.d - (Q.transpose() * AtB).trace();
            CAPTURE(spec.name());
            CHECK(lhs <= r * rhs + 1e-6);
        }
    }
}
