#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace gsync {

/// An n-stack of d x d blocks stored as one nd x d matrix.
struct BlockColumn {
    int n = 0;
    int d = 0;
    Eigen::MatrixXd data;  // nd x d

    BlockColumn() = default;
    BlockColumn(int n_, int d_) : n(n_), d(d_), data(Eigen::MatrixXd::Zero(n_ * d_, d_)) {}

    Eigen::Block<Eigen::MatrixXd> block(int i) { return data.middleRows(i * d, d); }
    Eigen::Block<const Eigen::MatrixXd> block(int i) const { return data.middleRows(i * d, d); }
};

/// Symmetric nd x nd block matrix stored sparsely: one d x d block per edge
/// (i < j), the (j, i) transpose implicit, and a diagonal that is either
/// I_d on every block or zero.
class BlockSymMatrix {
public:
    struct Entry {
        int i, j;             // i < j
        Eigen::MatrixXd block;  // the (i, j) block; (j, i) holds its transpose
    };

    BlockSymMatrix() = default;
    BlockSymMatrix(int n, int d, bool identity_diagonal)
        : n_(n), d_(d), identity_diagonal_(identity_diagonal) {}

    int n() const { return n_; }
    int d() const { return d_; }
    int dim() const { return n_ * d_; }
    bool identity_diagonal() const { return identity_diagonal_; }
    const std::vector<Entry>& entries() const { return entries_; }

    void add_block(int i, int j, const Eigen::MatrixXd& block);

    /// Y may have any number of columns (nd x c); returns the product as a
    /// dense nd x c matrix.
    Eigen::MatrixXd apply(const Eigen::MatrixXd& Y) const;

    Eigen::MatrixXd to_dense() const;

    /// Upper bound on the operator norm from block-row Frobenius sums.
    double gershgorin_bound() const;

private:
    int n_ = 0;
    int d_ = 0;
    bool identity_diagonal_ = false;
    std::vector<Entry> entries_;
};

Eigen::MatrixXd blockmatvec(const BlockSymMatrix& C, const Eigen::MatrixXd& Y);
BlockColumn blockmatvec(const BlockSymMatrix& C, const BlockColumn& Y);

struct EigResult {
    Eigen::VectorXd values;   // k algebraically largest, descending
    Eigen::MatrixXd vectors;  // nd x k, orthonormal
    int iterations = 0;
    double max_residual = 0.0;
    bool converged = false;
};

/// Top-k eigenpairs by algebraic value, via shifted subspace iteration with
/// Rayleigh-Ritz extraction on a (k+4)-dimensional subspace. Throws
/// std::runtime_error on non-convergence (message carries the residual).
EigResult top_eigenvectors(const BlockSymMatrix& C, int k, int max_iters = 5000,
                           double residual_tol = 1e-8);

/// Largest singular value of a linear map given by apply/transpose-apply
/// callbacks, via power iteration on A^T A to relative tolerance 1e-6.
double operator_norm(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                     const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply_t,
                     int dim, double rel_tol = 1e-6, int max_iters = 5000);

}  // namespace gsync
