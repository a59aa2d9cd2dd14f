#pragma once

#include <vector>

#include "gsync/model.hpp"

namespace gsync {

struct SolveConfig {
    int max_iters = 200;
    double tol = 1e-10;  // on ||G^{t+1} - G^t||_F / sqrt(n)
    bool record_trace = true;
};

/// One row per iterate, starting with the initial point at iter = 0.
/// epsilon and the condition-(i) quantities are NaN when the instance has
/// no ground truth.
struct TraceRow {
    int iter = 0;
    double epsilon = 0.0;
    double objective = 0.0;   // Tr(G^T C G)
    double step_norm = 0.0;   // ||G^t - G^{t-1}||_F / sqrt(n); 0 at iter 0
    double cond_i_lhs = 0.0;  // ||G*^T G^t - n Q^t||_F
    double cond_i_rhs = 0.0;  // Tr(n I - Q^t^T G*^T G^t)
};

struct SolveResult {
    BlockColumn estimate;
    std::vector<TraceRow> trace;
    int iterations = 0;
    bool converged = false;
    bool any_degenerate_projection = false;
};

/// Independent per-block projection onto the group.
BlockColumn block_project_all(const GroupSpec& spec, const BlockColumn& Y,
                              bool* any_degenerate = nullptr);

/// Blockwise projection of the top-d eigenvector matrix of C.
BlockColumn spectral_estimator(const Instance& instance);

/// Iterates G <- blockwise-projection(C G) from G0 until the relative step
/// norm drops below tol or max_iters is reached.
SolveResult gpm(const Instance& instance, const BlockColumn& G0, const SolveConfig& cfg);

}  // namespace gsync
