#pragma once

#include "contactsplit/eigen_estimates.hpp"
#include "contactsplit/sparse.hpp"

namespace contactsplit {

/// Dual update family: Uzawa for the Lagrange-multiplier formulation,
/// penalty-split for the penalty formulation.
struct UpdateKind {
    enum class Family { Uzawa, PenaltySplit };
    Family family = Family::Uzawa;
    double parameter = 1.0;  // rho (Uzawa) or k_N (penalty), > 0

    static UpdateKind uzawa(double rho) { return {Family::Uzawa, rho}; }
    static UpdateKind penalty_split(double k_n) { return {Family::PenaltySplit, k_n}; }
};

/// Component-wise projection onto the non-negative orthant.
Vector project_nonneg(const Vector& x);
void project_nonneg_inplace(Vector& x);

/// lambda_hat = lambda + rho * gap, gap = B U - D. Unprojected.
Vector uzawa_update(const Vector& lambda, double rho, const Vector& gap);

/// lambda_hat = k_N * gap; ignores the previous multiplier.
Vector penalty_update(double k_n, const Vector& gap);

Vector uzawa_update(const Vector& lambda, const Vector& u, double rho, const SparseRect& b,
                    const Vector& d);
Vector penalty_update(const Vector& u, double k_n, const SparseRect& b, const Vector& d);

/// Sufficient convergence bound 2 mu_min(K) / ||B||_2 for the standard
/// (unaccelerated) dual update. With use_unit_b_norm the reporting
/// convention ||B||_2 = 1 is applied; otherwise the norm is estimated by
/// power iteration.
double uzawa_upper_bound(const SparseSym& k, const Factorization& f, const SparseRect& b,
                         bool use_unit_b_norm = true, std::uint64_t seed = kDefaultSeed);

} // namespace contactsplit
