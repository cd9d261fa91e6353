#pragma once

#include "contactsplit/dense.hpp"

#include <string>
#include <vector>

namespace contactsplit {

struct AccuracyReport {
    double effective_gap_max = 0.0;     // m
    double complementarity_max = 0.0;   // N.m
    double e_force = 0.0;               // relative contact force error
    double e_disp = 0.0;                // relative displacement error
    double convergence_order_p = 0.0;

    std::string to_key_values() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

/// Max |gap| over the active contact zone {j : lambda_prev_j > 0};
/// zero when the zone is empty.
double effective_gap(const Vector& gap, const Vector& lambda_prev);

/// max_j |lambda_j * gap_j|
double complementarity_measure(const Vector& lambda, const Vector& gap);

/// ||q_ref - q||_2 / ||q_ref||_2; errors with ZeroReference.
double relative_error(const Vector& q_ref, const Vector& q);

/// Local convergence-order indicator p^i = ln(r^{i+1}/r^i) / ln(r^i/r^{i-1}),
/// summarized as the median over the decreasing steps of the final half of
/// the trace, skipping near-flat ratios (|ln| < 1e-3) and non-finite values.
/// Errors with InsufficientTrace for traces shorter than 3, non-positive
/// entries, or no usable step.
double convergence_order(const std::vector<double>& residual_trace);

/// Hertz sphere-on-halfspace solution for resultant normal force F.
struct HertzAnalytic {
    double contact_radius;     // a (m)
    double max_pressure;       // P_max (Pa)
    double effective_modulus;  // E* (Pa)

    double pressure(double r) const;  // P(r), 0 beyond the contact radius
};

HertzAnalytic hertz_analytic(double force, double radius, double e1, double nu1, double e2,
                             double nu2);

} // namespace contactsplit
