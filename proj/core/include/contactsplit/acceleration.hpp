#pragma once

#include "contactsplit/dense.hpp"

#include <string>

namespace contactsplit {

/// Acceleration operator selection plus projection placement.
///
/// ProjectBeforeAndAfter accelerates the projected update (Pi o A o Pi);
/// ProjectAfterOnly accelerates the raw update (Pi o A). Recommended
/// defaults: momentum schemes (FISTA, Anderson-1 with/without restart) use
/// the double projection, Crossed-Secant projects after only.
struct AccelKind {
    enum class Scheme { None, FistaAR, Anderson1, Anderson1AR, CrossedSecant };
    enum class Placement { ProjectBeforeAndAfter, ProjectAfterOnly };

    Scheme scheme = Scheme::None;
    Placement placement = Placement::ProjectBeforeAndAfter;

    static Placement recommended_placement(Scheme s) {
        return s == Scheme::CrossedSecant ? Placement::ProjectAfterOnly
                                          : Placement::ProjectBeforeAndAfter;
    }
    static AccelKind make(Scheme s) { return {s, recommended_placement(s)}; }
    static AccelKind make(Scheme s, Placement p) { return {s, p}; }
};

std::string to_string(AccelKind::Scheme s);
std::string to_string(AccelKind::Placement p);

/// Per-solve acceleration history. Steps are transitions: they consume the
/// stored previous iterates and write the new ones; the caller commits the
/// finally-projected multiplier afterwards.
struct AccelState {
    Vector lambda_hat_prev;  // update output as seen by the accelerator
    Vector lambda_prev;      // last committed (projected) multiplier
    Vector delta_prev;       // fixed-point residual of the previous iteration
    double tau_prev = 1.0;   // FISTA momentum
    int iteration = 0;       // completed iterations
    int minit_accel = 2;

    static AccelState init(const Vector& lambda0, int minit = 2);
};

struct StepResult {
    Vector lambda;     // accelerated iterate, before the final projection
    double beta = 0.0;
    double omega = 1.0;     // Crossed-Secant relaxation factor, 1 - beta
    double tau = 1.0;       // FISTA only
    bool restarted = false;
    bool degenerate = false;
    // Crossed-Secant audit quantities (Eq. chain on the residual decrease).
    double delta_norm = 0.0;
    double delta_diff_norm = 0.0;
    double delta_dot_prev = 0.0;
    double delta_prev_norm = 0.0;
};

/// Adaptive-restart test: keep accelerating iff gap . (lhat - lhat_prev) >= 0,
/// i.e. while the multiplier step stays aligned with the dual-ascent
/// direction; a strict reversal restarts the momentum.
bool restart_test(const Vector& gap, const Vector& lambda_hat, const Vector& lambda_hat_prev);

StepResult fista_ar_step(AccelState& st, const Vector& lambda_hat, const Vector& gap);
StepResult anderson1_step(AccelState& st, const Vector& lambda_hat);
StepResult anderson1_ar_step(AccelState& st, const Vector& lambda_hat, const Vector& gap);
StepResult crossed_secant_step(AccelState& st, const Vector& lambda_hat);

/// Bookkeeping for iterations that skip acceleration (i < minit_accel or
/// acceleration disabled): advances lambda_hat_prev and delta_prev.
void accel_pass_through(AccelState& st, const Vector& lambda_hat);

/// Stores the finally-projected multiplier of the iteration.
void accel_commit(AccelState& st, const Vector& lambda_final);

struct BbResult {
    Vector lambda;
    double alpha = 0.0;
    bool degenerate = false;
};

/// Barzilai-Borwein iterate on the generalized gradient g = B U - D;
/// the Crossed-Secant equivalence oracle on unprojected Uzawa sequences.
BbResult barzilai_borwein_step(const Vector& lambda_prev, const Vector& lambda_prev2,
                               const Vector& g_i, const Vector& g_prev);

} // namespace contactsplit
