#include "gsync/group.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gsync {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite_square(const Eigen::MatrixXd& X, int d) {
    if (X.rows() != d || X.cols() != d)
        throw std::invalid_argument("project: matrix dimensions do not match group spec");
    if (!X.allFinite())
        throw std::invalid_argument("project: matrix has non-finite entries");
}

}  // namespace

GroupSpec GroupSpec::orthogonal(int d) { return {GroupKind::Orthogonal, d, 0}; }
GroupSpec GroupSpec::special_orthogonal(int d) { return {GroupKind::SpecialOrthogonal, d, 0}; }
GroupSpec GroupSpec::permutation(int d) { return {GroupKind::Permutation, d, 0}; }
GroupSpec GroupSpec::cyclic(int m) { return {GroupKind::Cyclic, 2, m}; }

std::string GroupSpec::name() const {
    switch (kind) {
        case GroupKind::Orthogonal: return "O(" + std::to_string(d) + ")";
        case GroupKind::SpecialOrthogonal: return "SO(" + std::to_string(d) + ")";
        case GroupKind::Permutation: return "P(" + std::to_string(d) + ")";
        case GroupKind::Cyclic: return "Z_" + std::to_string(m);
    }
    return "?";
}

double rho(const GroupSpec& spec) {
    if (spec.kind == GroupKind::Cyclic && spec.m >= 3)
        return 1.0 / std::sin(kPi / spec.m);
    return 1.0;
}

Eigen::Matrix2d cyclic_element(int m, int k) {
    const double a = 2.0 * kPi * k / m;
    Eigen::Matrix2d Q;
    Q << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return Q;
}

bool is_member(const GroupSpec& spec, const Eigen::MatrixXd& mat, double tol) {
    if (mat.rows() != spec.d || mat.cols() != spec.d) return false;
    if (!mat.allFinite()) return false;
    const Eigen::MatrixXd gram = mat.transpose() * mat;
    if ((gram - Eigen::MatrixXd::Identity(spec.d, spec.d)).norm() > tol) return false;
    switch (spec.kind) {
        case GroupKind::Orthogonal:
            return true;
        case GroupKind::SpecialOrthogonal:
            return std::abs(mat.determinant() - 1.0) <= tol;
        case GroupKind::Permutation:
            for (int i = 0; i < spec.d; ++i)
                for (int j = 0; j < spec.d; ++j)
                    if (mat(i, j) != 0.0 && mat(i, j) != 1.0) return false;
            return true;
        case GroupKind::Cyclic: {
            if (std::abs(mat.determinant() - 1.0) > tol) return false;
            for (int k = 0; k < spec.m; ++k)
                if ((mat - cyclic_element(spec.m, k)).norm() <= tol) return true;
            return false;
        }
    }
    return false;
}

GroupElement project_orthogonal(const Eigen::MatrixXd& X) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.matrixU() * svd.matrixV().transpose(), false};
}

GroupElement project_special_orthogonal(const Eigen::MatrixXd& X) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::MatrixXd UVt = svd.matrixU() * svd.matrixV().transpose();
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(X.rows());
    diag(X.rows() - 1) = UVt.determinant() < 0 ? -1.0 : 1.0;
    return {svd.matrixU() * diag.asDiagonal() * svd.matrixV().transpose(), false};
}

GroupElement project_permutation(const Eigen::MatrixXd& X) {
    // Min-cost assignment on -X via the Hungarian algorithm with potentials.
    // Rows are introduced in index order, so ties resolve to the lowest row.
    const int d = static_cast<int>(X.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(d + 1, 0.0), v(d + 1, 0.0);
    std::vector<int> p(d + 1, 0), way(d + 1, 0);
    for (int i = 1; i <= d; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(d + 1, inf);
        std::vector<char> used(d + 1, false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= d; ++j) {
                if (used[j]) continue;
                const double cur = -X(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= d; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(d, d);
    for (int j = 1; j <= d; ++j) Q(p[j] - 1, j - 1) = 1.0;
    return {Q, false};
}

GroupElement project_cyclic(const Eigen::MatrixXd& X, int m) {
    const double a = X(0, 0) + X(1, 1);
    const double b = X(1, 0) - X(0, 1);
    const double norm = std::hypot(a, b);
    if (norm == 0.0) {
        // Angle undefined: every group element is equidistant. Q_0 by convention.
        return {cyclic_element(m, 0), true};
    }
    double theta = std::acos(std::clamp(b / norm, -1.0, 1.0));
    if (a < 0.0) theta = 2.0 * kPi - theta;
    long k;
    if (theta <= kPi / 2.0 + kPi / m) {
        k = std::lround(m / 4.0 - m * theta / (2.0 * kPi));
    } else {
        k = std::lround(5.0 * m / 4.0 - m * theta / (2.0 * kPi));
    }
    k = std::clamp(k, 0L, static_cast<long>(m - 1));
    return {cyclic_element(m, static_cast<int>(k)), false};
}

GroupElement project(const GroupSpec& spec, const Eigen::MatrixXd& X) {
    require_finite_square(X, spec.d);
    switch (spec.kind) {
        case GroupKind::Orthogonal: return project_orthogonal(X);
        case GroupKind::SpecialOrthogonal: return project_special_orthogonal(X);
        case GroupKind::Permutation: return project_permutation(X);
        case GroupKind::Cyclic: return project_cyclic(X, spec.m);
    }
    throw std::logic_error("project: unknown group kind");
}

GroupElement sample_uniform(const GroupSpec& spec, Rng& rng) {
    const int d = spec.d;
    switch (spec.kind) {
        case GroupKind::Orthogonal:
        case GroupKind::SpecialOrthogonal: {
            // Haar sample: QR of a Gaussian matrix with the R diagonal signs
            // absorbed into Q.
            Eigen::MatrixXd A(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) A(i, j) = rng.gaussian();
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
            Eigen::MatrixXd Q = qr.householderQ();
            const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
            for (int j = 0; j < d; ++j)
                if (R(j, j) < 0) Q.col(j) = -Q.col(j);
            if (spec.kind == GroupKind::SpecialOrthogonal && Q.determinant() < 0)
                Q.col(0) = -Q.col(0);
            return {Q, false};
        }
        case GroupKind::Permutation: {
            std::vector<int> perm(d);
            for (int i = 0; i < d; ++i) perm[i] = i;
            for (int i = d - 1; i > 0; --i) {
                const int j = static_cast<int>(rng.uniform_int(i + 1));
                std::swap(perm[i], perm[j]);
            }
            Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(d, d);
            for (int j = 0; j < d; ++j) Q(perm[j], j) = 1.0;
            return {Q, false};
        }
        case GroupKind::Cyclic: {
            const int k = static_cast<int>(rng.uniform_int(spec.m));
            return {cyclic_element(spec.m, k), false};
        }
    }
    throw std::logic_error("sample_uniform: unknown group kind");
}

}  // namespace gsync
