#include "contactsplit/acceleration.hpp"
#include "contactsplit/errors.hpp"

#include <cmath>

namespace contactsplit {

namespace {
constexpr double kDegenerate = 1e-300;
}

std::string to_string(AccelKind::Scheme s) {
    switch (s) {
        case AccelKind::Scheme::None: return "none";
        case AccelKind::Scheme::FistaAR: return "fista_ar";
        case AccelKind::Scheme::Anderson1: return "anderson1";
        case AccelKind::Scheme::Anderson1AR: return "anderson1_ar";
        case AccelKind::Scheme::CrossedSecant: return "crossed_secant";
    }
    return "?";
}

std::string to_string(AccelKind::Placement p) {
    return p == AccelKind::Placement::ProjectBeforeAndAfter ? "before_and_after" : "after_only";
}

AccelState AccelState::init(const Vector& lambda0, int minit) {
    AccelState st;
    st.lambda_hat_prev = lambda0;  // lhat^0 = lambda^0
    st.lambda_prev = lambda0;
    st.delta_prev.assign(lambda0.size(), 0.0);
    st.tau_prev = 1.0;
    st.iteration = 0;
    st.minit_accel = minit;
    return st;
}

// The update climbs the dual function along the generalized gradient
// g = B U - D, so momentum is productive while the multiplier step stays
// aligned with g; a reversal (strictly negative dot) signals overshoot and
// resets the momentum. The boundary case keeps accelerating.
bool restart_test(const Vector& gap, const Vector& lambda_hat, const Vector& lambda_hat_prev) {
    return dot(gap, sub(lambda_hat, lambda_hat_prev)) >= 0.0;
}

namespace {

// Shared bookkeeping: every iteration defines delta^i = lhat^i - lambda^{i-1}
// and exposes lhat^i to the next iteration, whichever branch produced lambda.
void advance_history(AccelState& st, const Vector& lambda_hat, Vector delta) {
    st.delta_prev = std::move(delta);
    st.lambda_hat_prev = lambda_hat;
    ++st.iteration;
}

} // namespace

StepResult fista_ar_step(AccelState& st, const Vector& lambda_hat, const Vector& gap) {
    StepResult r;
    if (restart_test(gap, lambda_hat, st.lambda_hat_prev)) {
        r.tau = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * st.tau_prev * st.tau_prev));
        r.beta = (st.tau_prev - 1.0) / r.tau;
        r.lambda = lambda_hat;
        axpy(r.beta, sub(lambda_hat, st.lambda_hat_prev), r.lambda);
    } else {
        r.tau = 1.0;
        r.lambda = lambda_hat;
        r.restarted = true;
    }
    st.tau_prev = r.tau;
    advance_history(st, lambda_hat, sub(lambda_hat, st.lambda_prev));
    return r;
}

StepResult anderson1_step(AccelState& st, const Vector& lambda_hat) {
    StepResult r;
    Vector delta = sub(lambda_hat, st.lambda_prev);
    Vector ddiff = sub(delta, st.delta_prev);
    r.delta_norm = norm2(delta);
    r.delta_diff_norm = norm2(ddiff);
    r.delta_dot_prev = dot(delta, st.delta_prev);
    r.delta_prev_norm = norm2(st.delta_prev);
    if (r.delta_diff_norm < kDegenerate) {
        r.degenerate = true;
        r.lambda = lambda_hat;
    } else {
        r.beta = -dot(ddiff, delta) / (r.delta_diff_norm * r.delta_diff_norm);
        r.lambda = lambda_hat;
        axpy(r.beta, sub(lambda_hat, st.lambda_hat_prev), r.lambda);
    }
    advance_history(st, lambda_hat, std::move(delta));
    return r;
}

StepResult anderson1_ar_step(AccelState& st, const Vector& lambda_hat, const Vector& gap) {
    if (restart_test(gap, lambda_hat, st.lambda_hat_prev)) return anderson1_step(st, lambda_hat);
    StepResult r;
    r.restarted = true;
    r.lambda = lambda_hat;
    advance_history(st, lambda_hat, sub(lambda_hat, st.lambda_prev));
    return r;
}

StepResult crossed_secant_step(AccelState& st, const Vector& lambda_hat) {
    StepResult r;
    Vector delta = sub(lambda_hat, st.lambda_prev);
    Vector ddiff = sub(delta, st.delta_prev);
    r.delta_norm = norm2(delta);
    r.delta_diff_norm = norm2(ddiff);
    r.delta_dot_prev = dot(delta, st.delta_prev);
    r.delta_prev_norm = norm2(st.delta_prev);
    if (r.delta_diff_norm < kDegenerate) {
        r.degenerate = true;
        r.lambda = lambda_hat;
    } else {
        r.beta = dot(sub(lambda_hat, st.lambda_hat_prev), ddiff) /
                 (r.delta_diff_norm * r.delta_diff_norm);
        r.omega = 1.0 - r.beta;
        // lambda = lhat - beta*delta, evaluated in the relaxation form
        // lambda^{i-1} + omega*delta; identical algebraically, but free of
        // the lhat-scale cancellation when the update parameter is huge.
        r.lambda = st.lambda_prev;
        axpy(r.omega, delta, r.lambda);
    }
    advance_history(st, lambda_hat, std::move(delta));
    return r;
}

void accel_pass_through(AccelState& st, const Vector& lambda_hat) {
    advance_history(st, lambda_hat, sub(lambda_hat, st.lambda_prev));
}

void accel_commit(AccelState& st, const Vector& lambda_final) { st.lambda_prev = lambda_final; }

BbResult barzilai_borwein_step(const Vector& lambda_prev, const Vector& lambda_prev2,
                               const Vector& g_i, const Vector& g_prev) {
    BbResult r;
    const Vector y = sub(g_i, g_prev);
    const double yn = norm2(y);
    if (yn < kDegenerate) {
        r.degenerate = true;
        r.lambda = lambda_prev;
        return r;
    }
    r.alpha = dot(sub(lambda_prev, lambda_prev2), y) / (yn * yn);
    r.lambda = lambda_prev;
    axpy(-r.alpha, g_i, r.lambda);
    return r;
}

} // namespace contactsplit
