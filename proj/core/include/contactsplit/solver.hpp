#pragma once

#include "contactsplit/acceleration.hpp"
#include "contactsplit/contact_problem.hpp"
#include "contactsplit/dual_update.hpp"
#include "contactsplit/factorization.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace contactsplit {

struct SolverConfig {
    UpdateKind update = UpdateKind::uzawa(1.0);
    AccelKind accel = AccelKind::make(AccelKind::Scheme::None);
    double epsilon = 1e-12;        // on r^i = ||dl||/||l||
    long max_iter = 500000;
    int minit_accel = 2;
    Vector lambda0;                // empty = zero vector
    double divergence_guard = 1e8; // r^i blowing up past guard * min r
    bool record_dual_history = false;
    bool disable_projection = false;  // testing hook (Barzilai-Borwein equivalence)
};

enum class SolveStatus { Converged, MaxIter, Diverged, LinearSolveFailure };

std::string to_string(SolveStatus s);

struct SolveReport {
    SolveStatus status = SolveStatus::MaxIter;
    Vector displacement;  // U at the last completed iteration
    Vector multiplier;    // lambda at the last completed iteration
    long iterations = 0;
    std::string message;

    // Per-iteration traces, each of length `iterations`.
    std::vector<double> residual_trace;
    std::vector<double> effective_gap_trace;
    std::vector<double> complementarity_trace;
    std::vector<int> active_count_trace;
    std::vector<double> beta_trace;
    std::vector<double> omega_trace;
    std::vector<double> tau_trace;
    std::vector<double> elapsed_trace;  // seconds, excluding factorization

    double t_first_iteration = 0.0;   // includes factorization time
    double t_mean_subsequent = 0.0;

    // Crossed-Secant residual-decrease audit.
    long cs_audit_checked = 0;
    long cs_audit_violations = 0;
    double cs_audit_max_excess = 0.0;
    double cs_audit_max_rel_excess = 0.0;  // excess / bound, diagnostics

    std::vector<Vector> dual_history;  // filled when record_dual_history
};

/// Relative iterate change ||l_i - l_prev|| / ||l_i||, with the zero rules:
/// a zero denominator falls back to ||l_prev||, and two zero iterates give 0.
double iterate_residual(const Vector& lambda_i, const Vector& lambda_prev);

bool check_convergence(const Vector& lambda_i, const Vector& lambda_prev, double epsilon);

/// The unified accelerated fixed-point loop: factorize K once, then per
/// iteration solve K U = F - B^T lambda, evaluate the dual update, apply the
/// configured acceleration and projections, and test convergence.
SolveReport run_fixed_point(const ContactProblem& p, const SolverConfig& cfg);

/// Same loop against a caller-owned (read-only, shareable) factorization.
SolveReport run_fixed_point(const ContactProblem& p, const SolverConfig& cfg,
                            const Factorization& shared);

/// CSV trace: iter,r,effective_gap,complementarity,active_count,beta,elapsed_s
void write_trace_csv(std::ostream& os, const SolveReport& rep);
void write_trace_csv(const std::string& path, const SolveReport& rep);

} // namespace contactsplit
