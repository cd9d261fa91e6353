#pragma once

#include "contactsplit/factorization.hpp"
#include "contactsplit/sparse.hpp"

#include <cstdint>

namespace contactsplit {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Smallest eigenvalue of SPD K by inverse power iteration on the given
/// factorization. Relative tolerance on successive estimates; errors with
/// NoConvergence after max_iter.
double min_eigenvalue_estimate(const SparseSym& k, const Factorization& f, double tol = 1e-6,
                               int max_iter = 10000, std::uint64_t seed = kDefaultSeed);

/// Largest singular value of B by power iteration on B^T B.
double spectral_norm_estimate(const SparseRect& b, double tol = 1e-6, int max_iter = 10000,
                              std::uint64_t seed = kDefaultSeed);

} // namespace contactsplit
