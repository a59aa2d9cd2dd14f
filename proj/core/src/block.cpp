#include "gsync/block.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gsync/rng.hpp"

namespace gsync {

void BlockSymMatrix::add_block(int i, int j, const Eigen::MatrixXd& block) {
    if (i < 0 || j <= i || j >= n_)
        throw std::invalid_argument("BlockSymMatrix::add_block: need 0 <= i < j < n");
    if (block.rows() != d_ || block.cols() != d_)
        throw std::invalid_argument("BlockSymMatrix::add_block: block size mismatch");
    entries_.push_back({i, j, block});
}

Eigen::MatrixXd BlockSymMatrix::apply(const Eigen::MatrixXd& Y) const {
    if (Y.rows() != dim())
        throw std::invalid_argument("BlockSymMatrix::apply: dimension mismatch");
    Eigen::MatrixXd out = identity_diagonal_ ? Y : Eigen::MatrixXd::Zero(Y.rows(), Y.cols());
    for (const Entry& e : entries_) {
        out.middleRows(e.i * d_, d_).noalias() += e.block * Y.middleRows(e.j * d_, d_);
        out.middleRows(e.j * d_, d_).noalias() += e.block.transpose() * Y.middleRows(e.i * d_, d_);
    }
    return out;
}

Eigen::MatrixXd BlockSymMatrix::to_dense() const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim(), dim());
    if (identity_diagonal_) M.setIdentity();
    for (const Entry& e : entries_) {
        M.block(e.i * d_, e.j * d_, d_, d_) = e.block;
        M.block(e.j * d_, e.i * d_, d_, d_) = e.block.transpose();
    }
    return M;
}

double BlockSymMatrix::gershgorin_bound() const {
    std::vector<double> row_sum(n_, identity_diagonal_ ? 1.0 : 0.0);
    for (const Entry& e : entries_) {
        const double nb = e.block.norm();
        row_sum[e.i] += nb;
        row_sum[e.j] += nb;
    }
    double bound = 0.0;
    for (double s : row_sum) bound = std::max(bound, s);
    return bound;
}

Eigen::MatrixXd blockmatvec(const BlockSymMatrix& C, const Eigen::MatrixXd& Y) {
    return C.apply(Y);
}

BlockColumn blockmatvec(const BlockSymMatrix& C, const BlockColumn& Y) {
    if (Y.n != C.n() || Y.d != C.d())
        throw std::invalid_argument("blockmatvec: block structure mismatch");
    BlockColumn out(Y.n, Y.d);
    out.data = C.apply(Y.data);
    return out;
}

namespace {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& X) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    return Eigen::MatrixXd(qr.householderQ()).leftCols(X.cols());
}

}  // namespace

EigResult top_eigenvectors(const BlockSymMatrix& C, int k, int max_iters, double residual_tol) {
    const int nd = C.dim();
    if (k < 1 || k > nd)
        throw std::invalid_argument("top_eigenvectors: need 1 <= k <= nd");
    const int s = std::min(nd, k + 4);
    // Shift so the iterated matrix is PSD: the algebraically largest
    // eigenvalues of C then dominate in magnitude.
    const double shift = C.gershgorin_bound();

    Rng rng(0x5eedULL);
    Eigen::MatrixXd X(nd, s);
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < s; ++j) X(i, j) = rng.gaussian();
    X = orthonormalize(X);

    EigResult result;
    for (int iter = 1; iter <= max_iters; ++iter) {
        Eigen::MatrixXd CX = C.apply(X);
        // Rayleigh-Ritz on the current subspace.
        Eigen::MatrixXd M = X.transpose() * CX;
        M = 0.5 * (M + M.transpose().eval());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
        // SelfAdjointEigenSolver sorts ascending; take the top k descending.
        Eigen::MatrixXd W(s, k);
        Eigen::VectorXd vals(k);
        for (int j = 0; j < k; ++j) {
            W.col(j) = es.eigenvectors().col(s - 1 - j);
            vals(j) = es.eigenvalues()(s - 1 - j);
        }
        Eigen::MatrixXd V = X * W;
        Eigen::MatrixXd CV = CX * W;
        const double scale = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
        double max_res = 0.0;
        for (int j = 0; j < k; ++j)
            max_res = std::max(max_res, (CV.col(j) - vals(j) * V.col(j)).norm());
        result.iterations = iter;
        result.max_residual = max_res;
        if (max_res <= residual_tol * scale) {
            result.values = vals;
            result.vectors = orthonormalize(V);
            result.converged = true;
            return result;
        }
        // One shifted subspace-iteration step.
        X = orthonormalize(CX + shift * X);
    }
    std::ostringstream msg;
    msg << "top_eigenvectors: no convergence after " << max_iters
        << " iterations (residual " << result.max_residual << ")";
    throw std::runtime_error(msg.str());
}

double operator_norm(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                     const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply_t,
                     int dim, double rel_tol, int max_iters) {
    Rng rng(0xa17eULL);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.gaussian();
    v.normalize();
    double sigma = 0.0;
    for (int iter = 0; iter < max_iters; ++iter) {
        Eigen::VectorXd Av = apply(v);
        const double norm_av = Av.norm();
        if (norm_av == 0.0) return 0.0;
        Eigen::VectorXd w = apply_t(Av);
        const double norm_w = w.norm();
        if (norm_w == 0.0) return 0.0;
        const double new_sigma = std::sqrt(norm_w);
        v = w / norm_w;
        // Per-step change understates the remaining error near convergence,
        // so demand an order of magnitude below the requested tolerance.
        if (iter > 0 && std::abs(new_sigma - sigma) <= 0.1 * rel_tol * new_sigma) return new_sigma;
        sigma = new_sigma;
    }
    throw std::runtime_error("operator_norm: power iteration did not converge");
}

}  // namespace gsync
