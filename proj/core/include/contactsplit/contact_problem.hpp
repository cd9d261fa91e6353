#pragma once

#include "contactsplit/sparse.hpp"

#include <string>
#include <vector>

namespace contactsplit {

/// Discrete frictionless contact problem
///
///   K U + B^T lambda = F_ext
///   B U <= D,  lambda >= 0,  lambda (.) (B U - D) = 0
///
/// Row orientation: positive (BU - D)_j means penetration of pair j, and a
/// positive multiplier pushes the paired bodies apart.
struct ContactProblem {
    SparseSym stiffness;   // K, N x N
    SparseRect pairing;    // B, N_lambda x N
    Vector gaps;           // D, initial gaps (m)
    Vector external_load;  // F_ext (N)
    std::vector<std::string> pair_labels;  // optional, empty or N_lambda entries
    std::string description;

    int num_dofs() const { return stiffness.n; }
    int num_pairs() const { return pairing.rows; }
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

/// Checks dimensions, non-empty pairing rows, and K factorizability
/// (SPD up to signed-pivot detection). Negative initial gaps produce a
/// warning, not an error.
ValidationReport validate(const ContactProblem& p);

struct KktResidual {
    double equilibrium_res;      // ||K U + B^T lambda - F_ext||_2 / ||F_ext||_2
    double penetration_max;      // max(0, max_j (BU - D)_j)
    double negativity_max;       // max(0, max_j -lambda_j)
    double complementarity_max;  // max_j |lambda_j (BU - D)_j|
};

KktResidual residual_kkt(const ContactProblem& p, const Vector& u, const Vector& lambda);

/// Problem bundle directory: K.mtx, B.mtx, D.vec, F.vec, meta.txt
/// (key = value lines). Round-trips bit-exactly.
void write_bundle(const std::string& dir, const ContactProblem& p);
ContactProblem read_bundle(const std::string& dir);

} // namespace contactsplit
