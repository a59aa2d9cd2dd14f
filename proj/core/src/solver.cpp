#include "gsync/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsync {

namespace {

TraceRow make_trace_row(const Instance& instance, const BlockColumn& G, int iter,
                        double step_norm) {
    TraceRow row;
    row.iter = iter;
    row.step_norm = step_norm;
    const Eigen::MatrixXd CG = instance.C.apply(G.data);
    row.objective = (G.data.transpose() * CG).trace();
    if (instance.ground_truth) {
        const BlockColumn& Gstar = *instance.ground_truth;
        const Eigen::MatrixXd correlation = Gstar.data.transpose() * G.data;  // G*^T G
        const Eigen::MatrixXd Q = project(instance.spec, correlation).mat;
        row.epsilon = (G.data - Gstar.data * Q).norm();
        const int n = G.n;
        row.cond_i_lhs = (correlation - n * Q).norm();
        row.cond_i_rhs =
            n * instance.spec.d - (Q.transpose() * correlation).trace();
    } else {
        row.epsilon = std::numeric_limits<double>::quiet_NaN();
        row.cond_i_lhs = std::numeric_limits<double>::quiet_NaN();
        row.cond_i_rhs = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

}  // namespace

BlockColumn block_project_all(const GroupSpec& spec, const BlockColumn& Y,
                              bool* any_degenerate) {
    BlockColumn out(Y.n, Y.d);
    bool degenerate = false;
    for (int i = 0; i < Y.n; ++i) {
        GroupElement g = project(spec, Y.block(i));
        out.block(i) = g.mat;
        degenerate |= g.degenerate;
    }
    if (any_degenerate) *any_degenerate = degenerate;
    return out;
}

BlockColumn spectral_estimator(const Instance& instance) {
    const int d = instance.spec.d;
    EigResult eig = top_eigenvectors(instance.C, d);
    BlockColumn V;
    V.n = instance.graph.n;
    V.d = d;
    V.data = eig.vectors;
    const bool rotation_only = instance.spec.kind == GroupKind::SpecialOrthogonal ||
                               instance.spec.kind == GroupKind::Cyclic;
    const double split = eig.values(0) - eig.values(d - 1);
    if (rotation_only && split <= 1e-6 * std::abs(eig.values(0))) {
        // With a (numerically) degenerate top-d eigenvalue the basis is only
        // determined up to an arbitrary orthogonal factor, and a reflected
        // factor makes every block's nearest element of a rotation-only
        // group non-unique, so blockwise projection degrades into noise.
        // Blocks then carry negative determinants; flipping one column
        // restores the rotation gauge. With a genuine eigenvalue split the
        // basis is canonical and is used as-is.
        double det_sum = 0.0;
        for (int i = 0; i < V.n; ++i) det_sum += Eigen::MatrixXd(V.block(i)).determinant();
        if (det_sum < 0.0) V.data.col(d - 1) *= -1.0;
    }
    return block_project_all(instance.spec, V);
}

SolveResult gpm(const Instance& instance, const BlockColumn& G0, const SolveConfig& cfg) {
    if (cfg.max_iters < 1 || cfg.tol <= 0)
        throw std::invalid_argument("gpm: need max_iters >= 1 and tol > 0");
    if (G0.n != instance.graph.n || G0.d != instance.spec.d)
        throw std::invalid_argument("gpm: initial point shape mismatch");

    SolveResult result;
    BlockColumn G = G0;
    const double sqrt_n = std::sqrt(static_cast<double>(G.n));
    if (cfg.record_trace) result.trace.push_back(make_trace_row(instance, G, 0, 0.0));

    for (int t = 1; t <= cfg.max_iters; ++t) {
        bool degenerate = false;
        BlockColumn next = block_project_all(instance.spec, blockmatvec(instance.C, G), &degenerate);
        result.any_degenerate_projection |= degenerate;
        const double step = (next.data - G.data).norm() / sqrt_n;
        G = std::move(next);
        result.iterations = t;
        if (cfg.record_trace) result.trace.push_back(make_trace_row(instance, G, t, step));
        if (step <= cfg.tol) {
            result.converged = true;
            break;
        }
    }
    result.estimate = std::move(G);
    return result;
}

}  // namespace gsync
