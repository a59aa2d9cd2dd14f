#include "gsync/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace gsync {

AlignedError estimation_error(const GroupSpec& spec, const BlockColumn& G,
                              const BlockColumn& Gstar) {
    if (G.n != Gstar.n || G.d != Gstar.d)
        throw std::invalid_argument("estimation_error: shape mismatch");
    const Eigen::MatrixXd correlation = Gstar.data.transpose() * G.data;
    const Eigen::MatrixXd Q = project(spec, correlation).mat;
    return {(G.data - Gstar.data * Q).norm(), Q};
}

double recovery_rate(const GroupSpec& spec, const BlockColumn& G, const BlockColumn& Gstar) {
    const AlignedError aligned = estimation_error(spec, G, Gstar);
    int correct = 0;
    for (int i = 0; i < G.n; ++i)
        if ((G.block(i) - Gstar.block(i) * aligned.alignment).norm() <= 1e-6) ++correct;
    return static_cast<double>(correct) / G.n;
}

MasterReport master_report(const Instance& instance, const SolveResult& result) {
    if (!instance.ground_truth)
        throw std::invalid_argument("master_report: instance has no ground truth");
    if (result.trace.empty())
        throw std::invalid_argument("master_report: solve was run without a trace");

    const BlockColumn& Gstar = *instance.ground_truth;
    const int n = instance.graph.n;
    const int d = instance.spec.d;

    MasterReport report;
    report.rho = rho(instance.spec);
    report.kappa = connectivity_stats(instance.graph);

    const BlockSymMatrix delta = delta_matrix(instance);
    const auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return degree_inverse_apply(instance.graph, delta.apply(x), d);
    };
    const auto apply_t = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        return delta.apply(degree_inverse_apply(instance.graph, x, d));
    };
    report.op_norm_dinv_delta = operator_norm(apply, apply_t, n * d);
    report.frob_dinv_delta_gstar =
        degree_inverse_apply(instance.graph, delta.apply(Gstar.data), d).norm();

    report.eps0 = result.trace.front().epsilon;

    const double sqrt_n = std::sqrt(static_cast<double>(n));
    report.cond_ii = report.kappa.kappa <= 1.0 / 1024.0;
    report.cond_iii = report.op_norm_dinv_delta <= 1.0 / 32.0 &&
                      report.frob_dinv_delta_gstar <= sqrt_n / (32.0 * report.rho);
    report.cond_iv = report.eps0 <= sqrt_n / (2.0 * report.rho);

    report.cond_i = true;
    report.cond_i_per_iter.reserve(result.trace.size());
    for (const TraceRow& row : result.trace) {
        const bool holds = row.cond_i_lhs <= report.rho * row.cond_i_rhs + 1e-9;
        report.cond_i_per_iter.push_back(holds);
        report.cond_i = report.cond_i && holds;
    }
    report.all_conditions = report.cond_i && report.cond_ii && report.cond_iii && report.cond_iv;

    // Conclusion, checked for t >= 1 regardless of whether the hypotheses
    // hold; callers assert emptiness only under all_conditions.
    for (const TraceRow& row : result.trace) {
        if (row.iter < 1) continue;
        const double envelope = std::pow(5.0 / 8.0, row.iter + 1) * report.eps0 +
                                (16.0 / 3.0) * report.frob_dinv_delta_gstar;
        if (row.epsilon > envelope + 1e-9) report.envelope_violations.push_back(row.iter);
    }
    return report;
}

bool contraction_check(const GroupSpec& spec, int samples, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("contraction_check: need samples >= 1");
    const double scales[] = {0.1, 1.0, 10.0};
    const int d = spec.d;
    for (int s = 0; s < samples; ++s) {
        Eigen::MatrixXd X(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) X(a, b) = rng.gaussian();
        const Eigen::MatrixXd Q = sample_uniform(spec, rng).mat;
        const Eigen::MatrixXd PX = project(spec, X).mat;
        for (double r : scales)
            if ((PX - Q).norm() > 2.0 * (X / r - Q).norm() + 1e-9) return false;
    }
    return true;
}

}  // namespace gsync
