#include "contactsplit/eigen_estimates.hpp"
#include "contactsplit/errors.hpp"

#include <cmath>
#include <random>

namespace contactsplit {

namespace {

Vector random_unit(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector v(n);
    for (double& x : v) x = dist(rng);
    const double nrm = norm2(v);
    for (double& x : v) x /= nrm;
    return v;
}

} // namespace

double min_eigenvalue_estimate(const SparseSym& k, const Factorization& f, double tol,
                               int max_iter, std::uint64_t seed) {
    if (f.dim() != k.n) throw DimensionMismatch("min_eigenvalue_estimate: factorization mismatch");
    if (k.n == 0) throw DimensionMismatch("min_eigenvalue_estimate: empty matrix");
    Vector x = random_unit(k.n, seed);
    double est_prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vector y = f.solve(x);
        const double theta = dot(x, y);  // Rayleigh quotient of K^{-1}
        if (theta <= 0.0 || !std::isfinite(theta))
            throw NoConvergence("min_eigenvalue_estimate: indefinite or ill-posed K");
        const double est = 1.0 / theta;
        const double nrm = norm2(y);
        for (double& v : y) v /= nrm;
        x = std::move(y);
        if (it > 0 && std::fabs(est - est_prev) <= tol * std::fabs(est)) return est;
        est_prev = est;
    }
    throw NoConvergence("min_eigenvalue_estimate: no convergence after " +
                        std::to_string(max_iter) + " iterations");
}

double spectral_norm_estimate(const SparseRect& b, double tol, int max_iter, std::uint64_t seed) {
    if (b.rows == 0 || b.cols == 0)
        throw DimensionMismatch("spectral_norm_estimate: empty matrix");
    Vector x = random_unit(b.cols, seed);
    double sigma_prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vector w = spmv(b, spmv(b, x), /*transpose=*/true);  // B^T B x
        const double lam = dot(x, w);
        if (lam <= 0.0) {
            // x landed in (or collapsed into) the null space; restart.
            x = random_unit(b.cols, seed + static_cast<std::uint64_t>(it) + 1);
            continue;
        }
        const double sigma = std::sqrt(lam);
        const double nrm = norm2(w);
        if (nrm == 0.0) return 0.0;
        for (double& v : w) v /= nrm;
        x = std::move(w);
        if (it > 0 && std::fabs(sigma - sigma_prev) <= tol * std::fabs(sigma)) return sigma;
        sigma_prev = sigma;
    }
    throw NoConvergence("spectral_norm_estimate: no convergence after " +
                        std::to_string(max_iter) + " iterations");
}

} // namespace contactsplit
