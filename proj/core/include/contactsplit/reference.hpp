#pragma once

#include "contactsplit/contact_problem.hpp"
#include "contactsplit/factorization.hpp"

#include <vector>

namespace contactsplit {

/// Reference solution of the saddle-point system, computed without the
/// fixed-point machinery.
struct OracleSolution {
    Vector displacement;
    Vector multiplier;
    std::vector<int> active_set;  // sorted indices with multiplier > 0
    bool ambiguous = false;       // brute force only: several candidate sets pass
};

/// Lagrange-multiplier saddle-point solve by an iterative active-set
/// strategy. Each outer iteration solves the equality-constrained system on
/// the current set through the Schur complement B_A K^{-1} B_A^T (columns of
/// K^{-1} B^T are cached against the shared factorization), then removes
/// indices with negative multipliers and adds penetrating ones.
/// Errors: CycleDetected (repeated active set), MaxOuterIterations.
OracleSolution solve_saddle_point_active_set(const ContactProblem& p, int max_outer = 200);

/// Exhaustive KKT enumeration over all active-set candidates; unique by
/// strict convexity. Requires N_lambda <= 20. Errors: NoKKTPoint. A
/// degenerate boundary (several candidates pass) sets `ambiguous` and
/// returns the smallest passing set.
OracleSolution brute_force_kkt(const ContactProblem& p);

/// Largest eigenvalue of the dual operator B K^{-1} B^T by power iteration;
/// 2 / lambda_max is the sharp divergence threshold of the unprojected
/// standard Uzawa iteration.
double dual_operator_norm(const ContactProblem& p, const Factorization& f, double tol = 1e-8,
                          std::uint64_t seed = 42);

} // namespace contactsplit
