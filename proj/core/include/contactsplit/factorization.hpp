#pragma once

#include "contactsplit/sparse.hpp"

#include <cstdint>
#include <vector>

namespace contactsplit {

/// Signed LDL^T factorization of a fixed SparseSym in envelope (profile)
/// storage under a reverse Cuthill-McKee ordering. Immutable after
/// construction; one factorization serves arbitrarily many solves.
class Factorization {
  public:
    int dim() const { return n_; }

    /// Solves K x = rhs using the stored factors plus one iterative
    /// refinement pass against the original matrix.
    Vector solve(const Vector& rhs) const;

    const std::vector<int>& permutation() const { return perm_; }

  private:
    friend Factorization factorize(const SparseSym& k);

    void solve_factored(const double* b, double* x) const;

    int n_ = 0;
    std::vector<int> perm_;   // permuted position -> original index
    std::vector<int> iperm_;  // original index -> permuted position
    std::vector<int> env_first_;  // first column of each permuted row's envelope
    std::vector<std::int64_t> env_start_;  // row start offsets into env_
    std::vector<double> env_;              // strictly-lower envelope of L
    std::vector<double> diag_;             // D
    SparseSym matrix_;                     // original K, kept for refinement
};

/// Errors with SingularMatrix when a pivot magnitude falls below
/// 1e-14 * max |diag(K)|.
Factorization factorize(const SparseSym& k);

Vector solve_with(const Factorization& f, const Vector& rhs);

/// Reverse Cuthill-McKee ordering of the matrix graph (all components).
std::vector<int> reverse_cuthill_mckee(const SparseSym& a);

/// Process-wide count of factorize() calls; lets tests pin down that a
/// solver run factorizes exactly once.
std::int64_t factorize_call_count();

} // namespace contactsplit
