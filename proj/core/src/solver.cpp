#include "contactsplit/solver.hpp"
#include "contactsplit/errors.hpp"
#include "contactsplit/metrics.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

namespace contactsplit {

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIter: return "max_iter";
        case SolveStatus::Diverged: return "diverged";
        case SolveStatus::LinearSolveFailure: return "linear_solve_failure";
    }
    return "?";
}

double iterate_residual(const Vector& lambda_i, const Vector& lambda_prev) {
    const double dn = norm2(sub(lambda_i, lambda_prev));
    const double ni = norm2(lambda_i);
    if (ni > 0.0) return dn / ni;
    const double np = norm2(lambda_prev);
    if (np > 0.0) return dn / np;
    return 0.0;  // both iterates zero: separated bodies
}

bool check_convergence(const Vector& lambda_i, const Vector& lambda_prev, double epsilon) {
    return iterate_residual(lambda_i, lambda_prev) <= epsilon;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

SolveReport run_loop(const ContactProblem& p, const SolverConfig& cfg, const Factorization& f,
                     double factor_time) {
    const int n_pairs = p.num_pairs();
    SolveReport rep;

    Vector lambda_prev = cfg.lambda0.empty() ? Vector(n_pairs, 0.0) : cfg.lambda0;
    if (static_cast<int>(lambda_prev.size()) != n_pairs)
        throw DimensionMismatch("run_fixed_point: lambda0 length mismatch");
    if (!(cfg.epsilon >= 0.0)) throw std::invalid_argument("run_fixed_point: epsilon < 0");
    if (cfg.max_iter < 1) throw std::invalid_argument("run_fixed_point: max_iter < 1");

    AccelState accel = AccelState::init(lambda_prev, cfg.minit_accel);
    const bool accelerating = cfg.accel.scheme != AccelKind::Scheme::None;
    const bool pre_project =
        accelerating && cfg.accel.placement == AccelKind::Placement::ProjectBeforeAndAfter &&
        !cfg.disable_projection;
    const bool is_cs = cfg.accel.scheme == AccelKind::Scheme::CrossedSecant;

    double min_r = std::numeric_limits<double>::infinity();
    double prev_step_norm = 0.0;  // ||lambda^{i-1} - lambda^{i-2}||

    for (long it = 1; it <= cfg.max_iter; ++it) {
        const auto t0 = Clock::now();

        // Solve step: K U = F_ext - B^T lambda^{i-1}, factorization reused.
        Vector rhs = spmv(p.pairing, lambda_prev, /*transpose=*/true);
        for (int i = 0; i < p.num_dofs(); ++i) rhs[i] = p.external_load[i] - rhs[i];
        Vector u = f.solve(rhs);

        // Shared gap vector B U - D for update, restart test and metrics.
        Vector gap = spmv(p.pairing, u);
        for (int j = 0; j < n_pairs; ++j) gap[j] -= p.gaps[j];

        Vector lambda_hat = cfg.update.family == UpdateKind::Family::Uzawa
                                ? uzawa_update(lambda_prev, cfg.update.parameter, gap)
                                : penalty_update(cfg.update.parameter, gap);
        if (pre_project) project_nonneg_inplace(lambda_hat);

        Vector lambda;
        StepResult sr;
        bool stepped = false;
        if (accelerating && it >= cfg.minit_accel) {
            switch (cfg.accel.scheme) {
                case AccelKind::Scheme::FistaAR:
                    sr = fista_ar_step(accel, lambda_hat, gap);
                    break;
                case AccelKind::Scheme::Anderson1:
                    sr = anderson1_step(accel, lambda_hat);
                    break;
                case AccelKind::Scheme::Anderson1AR:
                    sr = anderson1_ar_step(accel, lambda_hat, gap);
                    break;
                case AccelKind::Scheme::CrossedSecant:
                    sr = crossed_secant_step(accel, lambda_hat);
                    break;
                default:
                    break;
            }
            lambda = std::move(sr.lambda);
            stepped = true;
        } else {
            lambda = lambda_hat;
            accel_pass_through(accel, lambda_hat);
        }
        if (!cfg.disable_projection) project_nonneg_inplace(lambda);
        accel_commit(accel, lambda);

        const double step_norm = norm2(sub(lambda, lambda_prev));

        // Crossed-Secant decrease audit (obtuse-residual condition). The
        // inequality is exact in real arithmetic (Cauchy-Schwarz on the same
        // vectors), so the allowance is the stated absolute slack plus the
        // double-precision resolution of the compared norms.
        if (is_cs && stepped && !sr.degenerate && !sr.restarted) {
            if (2.0 * sr.delta_dot_prev < sr.delta_prev_norm * sr.delta_prev_norm) {
                ++rep.cs_audit_checked;
                const double bound =
                    sr.delta_diff_norm > 0.0
                        ? (sr.delta_norm / sr.delta_diff_norm) * prev_step_norm
                        : std::numeric_limits<double>::infinity();
                const double excess = step_norm - bound;
                const double slack =
                    1e-12 * (1.0 + bound + step_norm + norm2(lambda_prev));
                if (excess > slack) {
                    ++rep.cs_audit_violations;
                    rep.cs_audit_max_excess = std::max(rep.cs_audit_max_excess, excess);
                    if (bound > 0.0)
                        rep.cs_audit_max_rel_excess =
                            std::max(rep.cs_audit_max_rel_excess, excess / bound);
                }
            }
        }

        const double ni = norm2(lambda);
        const double np = norm2(lambda_prev);
        const double denom = ni > 0.0 ? ni : np;
        const double r = denom > 0.0 ? step_norm / denom : 0.0;

        rep.residual_trace.push_back(r);
        rep.effective_gap_trace.push_back(effective_gap(gap, lambda_prev));
        rep.complementarity_trace.push_back(complementarity_measure(lambda, gap));
        int active = 0;
        for (double l : lambda)
            if (l > 0.0) ++active;
        rep.active_count_trace.push_back(active);
        rep.beta_trace.push_back(stepped ? sr.beta : 0.0);
        rep.omega_trace.push_back(stepped ? sr.omega : 1.0);
        rep.tau_trace.push_back(stepped ? sr.tau : accel.tau_prev);
        rep.elapsed_trace.push_back(seconds_since(t0));
        if (cfg.record_dual_history) rep.dual_history.push_back(lambda);
        rep.iterations = it;

        const bool finite = all_finite(lambda) && all_finite(u);
        if (!finite) {
            rep.status = SolveStatus::Diverged;
            rep.message = "non-finite iterate at iteration " + std::to_string(it);
            rep.displacement = std::move(u);
            rep.multiplier = std::move(lambda);
            break;
        }
        if (r <= cfg.epsilon) {
            rep.status = SolveStatus::Converged;
            rep.displacement = std::move(u);
            rep.multiplier = std::move(lambda);
            break;
        }
        if (std::isfinite(min_r) && r >= cfg.divergence_guard * min_r) {
            rep.status = SolveStatus::Diverged;
            rep.message = "residual grew past " + std::to_string(cfg.divergence_guard) +
                          " times its running minimum at iteration " + std::to_string(it);
            rep.displacement = std::move(u);
            rep.multiplier = std::move(lambda);
            break;
        }
        min_r = std::min(min_r, r);
        prev_step_norm = step_norm;
        lambda_prev = std::move(lambda);
        if (it == cfg.max_iter) {
            rep.status = SolveStatus::MaxIter;
            rep.displacement = std::move(u);
            rep.multiplier = std::move(lambda_prev);
            rep.message = "iteration limit reached";
        }
    }

    if (!rep.elapsed_trace.empty()) {
        rep.t_first_iteration = factor_time + rep.elapsed_trace.front();
        if (rep.elapsed_trace.size() > 1) {
            double s = 0.0;
            for (std::size_t i = 1; i < rep.elapsed_trace.size(); ++i) s += rep.elapsed_trace[i];
            rep.t_mean_subsequent = s / static_cast<double>(rep.elapsed_trace.size() - 1);
        }
    }
    return rep;
}

} // namespace

SolveReport run_fixed_point(const ContactProblem& p, const SolverConfig& cfg) {
    const auto t0 = Clock::now();
    std::optional<Factorization> f;
    try {
        f.emplace(factorize(p.stiffness));
    } catch (const SingularMatrix& e) {
        SolveReport rep;
        rep.status = SolveStatus::LinearSolveFailure;
        rep.message = e.what();
        return rep;
    }
    return run_loop(p, cfg, *f, seconds_since(t0));
}

SolveReport run_fixed_point(const ContactProblem& p, const SolverConfig& cfg,
                            const Factorization& shared) {
    if (shared.dim() != p.num_dofs())
        throw DimensionMismatch("run_fixed_point: shared factorization dimension mismatch");
    return run_loop(p, cfg, shared, 0.0);
}

void write_trace_csv(std::ostream& os, const SolveReport& rep) {
    os << "iter,r,effective_gap,complementarity,active_count,beta,elapsed_s\n";
    for (long i = 0; i < rep.iterations; ++i)
        os << (i + 1) << ',' << format_double(rep.residual_trace[i]) << ','
           << format_double(rep.effective_gap_trace[i]) << ','
           << format_double(rep.complementarity_trace[i]) << ',' << rep.active_count_trace[i]
           << ',' << format_double(rep.beta_trace[i]) << ','
           << format_double(rep.elapsed_trace[i]) << '\n';
}

void write_trace_csv(const std::string& path, const SolveReport& rep) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_trace_csv(os, rep);
    if (!os) throw IoError("write failed: " + path);
}

} // namespace contactsplit
