#pragma once

#include <vector>

#include "gsync/solver.hpp"

namespace gsync {

struct AlignedError {
    double epsilon = 0.0;
    Eigen::MatrixXd alignment;  // the optimal global right-multiplication Q
};

/// Gauge-invariant distance to ground truth: min_Q ||G - G* Q||_F, with the
/// minimizer obtained by projecting G*^T G onto the group.
AlignedError estimation_error(const GroupSpec& spec, const BlockColumn& G,
                              const BlockColumn& Gstar);

/// Fraction of blocks within 1e-6 (Frobenius) of ground truth after the
/// optimal global alignment. Exact-match semantics for discrete groups.
double recovery_rate(const GroupSpec& spec, const BlockColumn& G, const BlockColumn& Gstar);

/// Empirical evaluation of the convergence theorem's hypotheses and
/// conclusion on one recorded run.
struct MasterReport {
    double rho = 1.0;
    ConnectivityStats kappa;
    double op_norm_dinv_delta = 0.0;     // ||D^-1 Delta||
    double frob_dinv_delta_gstar = 0.0;  // ||D^-1 Delta G*||_F
    double eps0 = 0.0;
    std::vector<bool> cond_i_per_iter;  // checked at every recorded iterate
    bool cond_i = false;                // all recorded iterates
    bool cond_ii = false;               // kappa <= 1/1024
    bool cond_iii = false;              // both Delta bounds
    bool cond_iv = false;               // eps0 <= sqrt(n) / (2 rho)
    bool all_conditions = false;
    std::vector<int> envelope_violations;  // iterations t >= 1 exceeding the bound
};

/// Requires ground truth and a recorded trace.
MasterReport master_report(const Instance& instance, const SolveResult& result);

/// Checks the projection contraction inequality
/// ||P(X) - Q||_F <= 2 ||X/r - Q||_F + 1e-9 on `samples` random triples
/// (r in {0.1, 1, 10}, X Gaussian, Q uniform in the group).
bool contraction_check(const GroupSpec& spec, int samples, Rng& rng);

}  // namespace gsync
