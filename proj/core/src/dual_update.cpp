#include "contactsplit/dual_update.hpp"
#include "contactsplit/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace contactsplit {

Vector project_nonneg(const Vector& x) {
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::max(0.0, x[i]);
    return y;
}

void project_nonneg_inplace(Vector& x) {
    for (double& v : x) v = std::max(0.0, v);
}

Vector uzawa_update(const Vector& lambda, double rho, const Vector& gap) {
    if (!(rho > 0.0)) throw std::invalid_argument("uzawa_update: rho must be > 0");
    if (lambda.size() != gap.size()) throw DimensionMismatch("uzawa_update: size mismatch");
    Vector out(lambda.size());
    for (std::size_t j = 0; j < lambda.size(); ++j) out[j] = lambda[j] + rho * gap[j];
    return out;
}

Vector penalty_update(double k_n, const Vector& gap) {
    if (!(k_n > 0.0)) throw std::invalid_argument("penalty_update: k_N must be > 0");
    Vector out(gap.size());
    for (std::size_t j = 0; j < gap.size(); ++j) out[j] = k_n * gap[j];
    return out;
}

Vector uzawa_update(const Vector& lambda, const Vector& u, double rho, const SparseRect& b,
                    const Vector& d) {
    Vector gap = spmv(b, u);
    if (gap.size() != d.size()) throw DimensionMismatch("uzawa_update: gap vector size mismatch");
    for (std::size_t j = 0; j < gap.size(); ++j) gap[j] -= d[j];
    return uzawa_update(lambda, rho, gap);
}

Vector penalty_update(const Vector& u, double k_n, const SparseRect& b, const Vector& d) {
    Vector gap = spmv(b, u);
    if (gap.size() != d.size()) throw DimensionMismatch("penalty_update: gap vector size mismatch");
    for (std::size_t j = 0; j < gap.size(); ++j) gap[j] -= d[j];
    return penalty_update(k_n, gap);
}

double uzawa_upper_bound(const SparseSym& k, const Factorization& f, const SparseRect& b,
                         bool use_unit_b_norm, std::uint64_t seed) {
    const double mu_min = min_eigenvalue_estimate(k, f, 1e-6, 10000, seed);
    const double b_norm = use_unit_b_norm ? 1.0 : spectral_norm_estimate(b, 1e-6, 10000, seed);
    return 2.0 * mu_min / b_norm;
}

} // namespace contactsplit
