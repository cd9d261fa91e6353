#include "contactsplit/metrics.hpp"
#include "contactsplit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace contactsplit {

double effective_gap(const Vector& gap, const Vector& lambda_prev) {
    if (gap.size() != lambda_prev.size()) throw DimensionMismatch("effective_gap: size mismatch");
    double g = 0.0;
    for (std::size_t j = 0; j < gap.size(); ++j)
        if (lambda_prev[j] > 0.0) g = std::max(g, std::fabs(gap[j]));
    return g;
}

double complementarity_measure(const Vector& lambda, const Vector& gap) {
    if (gap.size() != lambda.size())
        throw DimensionMismatch("complementarity_measure: size mismatch");
    double c = 0.0;
    for (std::size_t j = 0; j < gap.size(); ++j) c = std::max(c, std::fabs(lambda[j] * gap[j]));
    return c;
}

double relative_error(const Vector& q_ref, const Vector& q) {
    const double ref_norm = norm2(q_ref);
    if (ref_norm == 0.0) throw ZeroReference("relative_error: reference has zero norm");
    return norm2(sub(q_ref, q)) / ref_norm;
}

double convergence_order(const std::vector<double>& residual_trace) {
    const std::size_t n = residual_trace.size();
    if (n < 3) throw InsufficientTrace("convergence_order: need at least 3 residuals");
    for (double r : residual_trace)
        if (!(r > 0.0) || !std::isfinite(r))
            throw InsufficientTrace("convergence_order: residuals must be positive and finite");
    std::vector<double> ps;
    for (std::size_t i = std::max<std::size_t>(1, n / 2); i + 1 < n; ++i) {
        const double num = std::log(residual_trace[i + 1] / residual_trace[i]);
        const double den = std::log(residual_trace[i] / residual_trace[i - 1]);
        // Keep locally decreasing triplets only; accelerated traces
        // oscillate, and the upward spikes carry no order information.
        if (den >= 0.0 || num >= 0.0) continue;
        if (std::fabs(den) < 1e-3) continue;
        const double p = num / den;
        if (std::isfinite(p)) ps.push_back(p);
    }
    if (ps.empty())
        throw InsufficientTrace("convergence_order: no usable step in the trace tail");
    std::nth_element(ps.begin(), ps.begin() + ps.size() / 2, ps.end());
    double med = ps[ps.size() / 2];
    if (ps.size() % 2 == 0) {
        const double hi = med;
        std::nth_element(ps.begin(), ps.begin() + ps.size() / 2 - 1, ps.end());
        med = 0.5 * (ps[ps.size() / 2 - 1] + hi);
    }
    return med;
}

double HertzAnalytic::pressure(double r) const {
    const double t = 1.0 - (r / contact_radius) * (r / contact_radius);
    return t <= 0.0 ? 0.0 : max_pressure * std::sqrt(t);
}

HertzAnalytic hertz_analytic(double force, double radius, double e1, double nu1, double e2,
                             double nu2) {
    if (!(force > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("hertz_analytic: force and radius must be positive");
    HertzAnalytic h;
    h.effective_modulus = 1.0 / ((1.0 - nu1 * nu1) / e1 + (1.0 - nu2 * nu2) / e2);
    h.contact_radius = std::cbrt(3.0 * force * radius / (4.0 * h.effective_modulus));
    h.max_pressure = 3.0 * force / (2.0 * std::numbers::pi * h.contact_radius * h.contact_radius);
    return h;
}

std::string AccuracyReport::to_key_values() const {
    std::ostringstream os;
    os << "effective_gap_max = " << format_double(effective_gap_max) << '\n'
       << "complementarity_max = " << format_double(complementarity_max) << '\n'
       << "e_force = " << format_double(e_force) << '\n'
       << "e_disp = " << format_double(e_disp) << '\n'
       << "convergence_order_p = " << format_double(convergence_order_p) << '\n';
    return os.str();
}

std::string AccuracyReport::csv_header() {
    return "effective_gap_max,complementarity_max,e_force,e_disp,convergence_order_p";
}

std::string AccuracyReport::to_csv_row() const {
    std::ostringstream os;
    os << format_double(effective_gap_max) << ',' << format_double(complementarity_max) << ','
       << format_double(e_force) << ',' << format_double(e_disp) << ','
       << format_double(convergence_order_p);
    return os.str();
}

} // namespace contactsplit
