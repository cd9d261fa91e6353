#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contactsplit/acceleration.hpp"
#include "contactsplit/dual_update.hpp"
#include "contactsplit/factorization.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace contactsplit;
namespace ts = testsupport;

namespace {

// State with explicit history: delta_prev = lhat_prev - lambda_prev2.
AccelState state_of(const Vector& lambda_prev, const Vector& lambda_hat_prev,
                    const Vector& delta_prev) {
    AccelState st = AccelState::init(lambda_prev);
    st.lambda_hat_prev = lambda_hat_prev;
    st.delta_prev = delta_prev;
    st.iteration = 1;
    return st;
}

} // namespace

TEST_CASE("restart_test: aligned steps accelerate, reversals restart") {
    CHECK(restart_test({1.0}, {1.0}, {0.0}));         // aligned with the ascent
    CHECK_FALSE(restart_test({-1.0}, {1.0}, {0.0}));  // reversal -> restart
    CHECK(restart_test({0.0, 1.0}, {1.0, 0.0}, {0.0, 0.0}));  // orthogonal boundary
}

TEST_CASE("fista_ar_step: zero momentum on the first accelerated step") {
    AccelState st = state_of({0.5}, {1.0}, {0.1});
    st.tau_prev = 1.0;
    const StepResult r = fista_ar_step(st, {2.0}, {1.0});
    CHECK(r.tau == doctest::Approx(0.5 * (1.0 + std::sqrt(5.0))));
    CHECK(r.beta == doctest::Approx(0.0));
    CHECK(r.lambda[0] == doctest::Approx(2.0));
    CHECK_FALSE(r.restarted);
}

TEST_CASE("fista_ar_step: restart branch resets the momentum clock") {
    AccelState st = state_of({0.5}, {1.0}, {0.1});
    st.tau_prev = 3.0;
    const StepResult r = fista_ar_step(st, {2.0}, {-1.0});  // reversal
    CHECK(r.restarted);
    CHECK(r.tau == 1.0);
    CHECK(r.lambda[0] == 2.0);
    CHECK(st.tau_prev == 1.0);
}

TEST_CASE("fista_ar_step: second accelerated step follows the recurrence") {
    const double tau1 = 0.5 * (1.0 + std::sqrt(5.0));
    const double tau2 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tau1 * tau1));
    const double beta2 = (tau1 - 1.0) / tau2;

    AccelState st = state_of({0.9}, {1.0}, {0.1});
    st.tau_prev = tau1;
    const StepResult r = fista_ar_step(st, {2.0}, {1.0});
    CHECK(r.tau == doctest::Approx(tau2).epsilon(1e-14));
    CHECK(r.beta == doctest::Approx(beta2).epsilon(1e-14));
    CHECK(r.lambda[0] == doctest::Approx(2.0 + beta2 * (2.0 - 1.0)).epsilon(1e-14));
    CHECK(r.beta == doctest::Approx(0.2817).epsilon(1e-3));
}

TEST_CASE("anderson1_step: hand case and degenerate fallback") {
    // delta_prev = (2), delta = (1) via lambda_prev = 2, lhat = 3.
    AccelState st = state_of({2.0}, {2.0}, {2.0});
    const StepResult r = anderson1_step(st, {3.0});
    CHECK(r.beta == doctest::Approx(1.0));
    CHECK(r.lambda[0] == doctest::Approx(4.0));

    AccelState st2 = state_of({2.0}, {2.0}, {1.0});  // delta = lhat - 2 = 1 = delta_prev
    const StepResult r2 = anderson1_step(st2, {3.0});
    CHECK(r2.degenerate);
    CHECK(r2.lambda[0] == 3.0);
}

TEST_CASE("anderson1_step: orthogonal difference gives beta = 0") {
    // delta = (1,0), delta_prev = (1,1): (delta_prev - delta) . delta = 0.
    AccelState st = state_of({0.0, 0.5}, {1.5, 0.5}, {1.0, 1.0});
    const StepResult r = anderson1_step(st, {1.0, 0.5});
    CHECK(r.beta == doctest::Approx(0.0));
    CHECK(r.lambda[0] == doctest::Approx(1.0));
    CHECK(r.lambda[1] == doctest::Approx(0.5));
}

TEST_CASE("anderson1_ar_step branches on the restart test") {
    const Vector lambda_prev{2.0}, lhat_prev{2.0}, delta_prev{2.0}, lhat{3.0};

    AccelState accel_branch = state_of(lambda_prev, lhat_prev, delta_prev);
    const StepResult ra = anderson1_ar_step(accel_branch, lhat, {1.0});
    AccelState plain = state_of(lambda_prev, lhat_prev, delta_prev);
    const StepResult rp = anderson1_step(plain, lhat);
    CHECK(ra.lambda[0] == rp.lambda[0]);
    CHECK(ra.beta == rp.beta);

    AccelState restart_branch = state_of(lambda_prev, lhat_prev, delta_prev);
    const StepResult rr = anderson1_ar_step(restart_branch, lhat, {-1.0});
    CHECK(rr.restarted);
    CHECK(rr.lambda[0] == 3.0);  // exactly lhat

    // Flipping the gap sign flips the branch.
    AccelState again = state_of(lambda_prev, lhat_prev, delta_prev);
    CHECK_FALSE(anderson1_ar_step(again, lhat, {1.0}).restarted);
}

TEST_CASE("crossed_secant_step: hand case, identity fallback, relaxation form") {
    // delta_prev = (1), delta = (3): lambda_prev = 2, lhat = 5, lhat_prev = 1.
    AccelState st = state_of({2.0}, {1.0}, {1.0});
    const StepResult r = crossed_secant_step(st, {5.0});
    CHECK(r.beta == doctest::Approx(2.0));
    CHECK(r.lambda[0] == doctest::Approx(-1.0));

    // lhat == lhat_prev -> beta = 0 -> lambda = lhat.
    AccelState st2 = state_of({2.0}, {5.0}, {1.0});
    const StepResult r2 = crossed_secant_step(st2, {5.0});
    CHECK(r2.beta == doctest::Approx(0.0));
    CHECK(r2.lambda[0] == doctest::Approx(5.0));

    // Relaxation identity on random data.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        Vector lp(4), lh(4), lhp(4), dp(4);
        for (auto* v : {&lp, &lh, &lhp, &dp})
            for (double& x : *v) x = dist(rng);
        AccelState s = state_of(lp, lhp, dp);
        const StepResult rr = crossed_secant_step(s, lh);
        if (rr.degenerate) continue;
        for (int j = 0; j < 4; ++j) {
            const double relax = rr.omega * lh[j] + (1.0 - rr.omega) * lp[j];
            CHECK(std::fabs(rr.lambda[j] - relax) <= 1e-14 * (1.0 + std::fabs(relax)));
        }
    }
}

TEST_CASE("crossed_secant residual-decrease bound under the obtuse condition") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    int checked = 0;
    for (int rep = 0; rep < 400; ++rep) {
        Vector lambda_prev2(5), lambda_prev(5), lhat_prev(5), lhat(5);
        for (auto* v : {&lambda_prev2, &lambda_prev, &lhat_prev, &lhat})
            for (double& x : *v) x = dist(rng);
        const Vector delta_prev = sub(lhat_prev, lambda_prev2);
        AccelState st = state_of(lambda_prev, lhat_prev, delta_prev);
        const StepResult r = crossed_secant_step(st, lhat);
        if (r.degenerate) continue;
        if (2.0 * r.delta_dot_prev < r.delta_prev_norm * r.delta_prev_norm) {
            ++checked;
            const double lhs = norm2(sub(r.lambda, lambda_prev));
            const double rhs = (r.delta_norm / r.delta_diff_norm) *
                               norm2(sub(lambda_prev, lambda_prev2));
            CHECK(lhs <= rhs + 1e-12);
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("momentum schemes stay on the extrapolation line") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        Vector lp(4), lh(4), lhp(4), dp(4), gap(4);
        for (auto* v : {&lp, &lh, &lhp, &dp, &gap})
            for (double& x : *v) x = dist(rng);

        AccelState sa = state_of(lp, lhp, dp);
        const StepResult ra = anderson1_step(sa, lh);
        AccelState sf = state_of(lp, lhp, dp);
        sf.tau_prev = 1.0 + std::fabs(dist(rng));
        const StepResult rf = fista_ar_step(sf, lh, gap);
        for (const StepResult* r : {&ra, &rf}) {
            if (r->degenerate) continue;
            for (int j = 0; j < 4; ++j) {
                const double line = lh[j] + r->beta * (lh[j] - lhp[j]);
                CHECK(std::fabs(r->lambda[j] - line) <= 1e-12 * (1.0 + std::fabs(line)));
            }
        }
    }
}

TEST_CASE("barzilai_borwein_step: one-step exactness on a scalar quadratic") {
    // Fixed point of g(lambda) = c - w*lambda; the BB step after one plain
    // Uzawa step lands exactly on lambda* = c / w.
    const double w = 0.8, c = 1.6, rho = 0.3;
    const double lambda0 = 0.0;
    const double g1 = c - w * lambda0;
    const double lambda1 = lambda0 + rho * g1;
    const double g2 = c - w * lambda1;
    const BbResult r = barzilai_borwein_step({lambda1}, {lambda0}, {g2}, {g1});
    REQUIRE(!r.degenerate);
    CHECK(r.lambda[0] == doctest::Approx(c / w).epsilon(1e-12));

    const BbResult deg = barzilai_borwein_step({1.0}, {0.5}, {0.25}, {0.25});
    CHECK(deg.degenerate);
}

TEST_CASE("crossed-secant equals Barzilai-Borwein on an unprojected Uzawa sequence") {
    // All-active instance: K random SPD, B = I, D far below the
    // unconstrained solution; projection disabled throughout.
    const int n = 6;
    const SparseSym k = ts::random_spd(n, 404, 1.0, 3.0);
    const Factorization f = factorize(k);
    std::vector<Triplet> bt;
    for (int i = 0; i < n; ++i) bt.push_back({i, i, 1.0});
    const SparseRect b = SparseRect::from_triplets(n, n, std::move(bt));
    const Vector d(n, -1.0);
    const Vector load = ts::random_vector(n, 405, 0.5, 1.5);
    const double rho = 0.4;

    auto gap_of = [&](const Vector& lambda) {
        Vector rhs = load;
        axpy(-1.0, spmv(b, lambda, true), rhs);
        const Vector u = f.solve(rhs);
        Vector gap = spmv(b, u);
        for (int j = 0; j < n; ++j) gap[j] -= d[j];
        return gap;
    };

    // Crossed-Secant path via the accel-state transitions.
    std::vector<Vector> cs_history;
    {
        Vector lambda(n, 0.0);
        AccelState st = AccelState::init(lambda);
        for (int it = 1; it <= 12; ++it) {
            const Vector lhat = uzawa_update(lambda, rho, gap_of(lambda));
            Vector next;
            if (it >= st.minit_accel) {
                next = crossed_secant_step(st, lhat).lambda;
            } else {
                next = lhat;
                accel_pass_through(st, lhat);
            }
            accel_commit(st, next);
            lambda = next;
            cs_history.push_back(lambda);
        }
    }
    // Barzilai-Borwein path on the generalized gradient.
    {
        Vector lambda_prev2(n, 0.0);
        Vector g_prev = gap_of(lambda_prev2);
        Vector lambda_prev = uzawa_update(lambda_prev2, rho, g_prev);
        CHECK(norm2(sub(cs_history[0], lambda_prev)) <= 1e-14 * norm2(lambda_prev));
        for (int it = 2; it <= 12; ++it) {
            const Vector g = gap_of(lambda_prev);
            const BbResult r = barzilai_borwein_step(lambda_prev, lambda_prev2, g, g_prev);
            REQUIRE(!r.degenerate);
            lambda_prev2 = lambda_prev;
            lambda_prev = r.lambda;
            g_prev = g;
            const Vector& cs = cs_history[it - 1];
            CHECK(norm2(sub(cs, lambda_prev)) <= 1e-12 * std::max(1e-30, norm2(lambda_prev)));
        }
    }
}
