#include "contactsplit/commands.hpp"
#include "contactsplit/config.hpp"
#include "contactsplit/contact_problem.hpp"
#include "contactsplit/generators.hpp"
#include "contactsplit/metrics.hpp"
#include "contactsplit/reference.hpp"
#include "contactsplit/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

namespace contactsplit {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitMaxIter = 3;
constexpr int kExitConfig = 4;
constexpr int kExitSolveFailure = 5;

const std::vector<std::string> kProblemKeys = {
    "source", "bundle", "generator", "seed",
    // spring chain
    "n", "stiffness", "load", "gap",
    // hertz
    "dim", "refinement", "radius", "e1", "nu1", "e2", "nu2", "u_d", "g_min", "scale",
    // multibody
    "bodies", "body_elems", "body_width", "body_height", "base_height", "g_min_base",
    // random_small
    "n_dofs", "n_pairs", "instances"};
const std::vector<std::string> kSolverKeys = {"update",   "parameter",   "accel",
                                              "placement", "epsilon",    "max_iter",
                                              "minit_accel", "divergence_guard"};
const std::vector<std::string> kOutputKeys = {"dir", "write_trace", "write_bundle",
                                              "compare_oracle"};
const std::vector<std::string> kSweepKeys = {"updates", "accels", "placements", "parameters",
                                             "jobs", "compare_oracle"};
const std::vector<std::string> kValidateKeys = {"oracle", "max_e_force", "max_e_disp"};

void check_sections(const Config& cfg, const std::vector<std::string>& allowed) {
    for (const std::string& s : cfg.sections())
        if (std::find(allowed.begin(), allowed.end(), s) == allowed.end())
            throw ConfigError("unknown section [" + s + "]", cfg.section_line(s));
}

std::uint64_t resolve_seed(const Config& cfg) {
    std::uint64_t seed =
        static_cast<std::uint64_t>(cfg.get_long("problem", "seed", 42));
    if (const char* env = std::getenv("CONTACT_SPLIT_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') seed = v;
    }
    return seed;
}

struct ProblemInstance {
    ContactProblem problem;
    std::string kind;
    std::optional<HertzGeometry> hertz;
    std::optional<double> lambda_star;  // spring chain closed form
};

ProblemInstance build_problem(const Config& cfg, std::uint64_t seed) {
    ProblemInstance inst;
    std::string source = cfg.get_string("problem", "source", "");
    if (source.empty()) source = cfg.has("problem", "bundle") ? "bundle" : "generator";
    if (source == "bundle") {
        inst.kind = "bundle";
        inst.problem = read_bundle(cfg.get_string("problem", "bundle"));
        return inst;
    }
    if (source != "generator")
        throw ConfigError("problem source must be 'generator' or 'bundle', got '" + source + "'",
                          cfg.has("problem", "source") ? cfg.line_of("problem", "source") : 0);
    const std::string gen = cfg.get_string("problem", "generator");
    inst.kind = gen;
    if (gen == "spring_chain") {
        SpringChainResult r = gen_spring_chain(
            cfg.get_int("problem", "n", 5), cfg.get_double("problem", "stiffness", 1.0),
            cfg.get_double("problem", "load", 2.0), cfg.get_double("problem", "gap", 1.0));
        inst.problem = std::move(r.problem);
        inst.lambda_star = r.lambda_star;
    } else if (gen == "hertz") {
        HertzParams prm;
        prm.dim = cfg.get_int("problem", "dim", 2);
        prm.refinement = cfg.get_int("problem", "refinement", 16);
        prm.radius = cfg.get_double("problem", "radius", prm.radius);
        prm.e_lower = cfg.get_double("problem", "e1", prm.e_lower);
        prm.nu_lower = cfg.get_double("problem", "nu1", prm.nu_lower);
        prm.e_upper = cfg.get_double("problem", "e2", prm.e_upper);
        prm.nu_upper = cfg.get_double("problem", "nu2", prm.nu_upper);
        prm.u_d = cfg.get_double("problem", "u_d", prm.u_d);
        prm.g_min = cfg.get_double("problem", "g_min", prm.g_min);
        prm.scale = cfg.get_double("problem", "scale", 1.0);
        HertzResult r = gen_hertz(prm);
        inst.problem = std::move(r.problem);
        inst.hertz = std::move(r.geometry);
    } else if (gen == "multibody") {
        MultibodyParams prm;
        prm.n_bodies = cfg.get_int("problem", "bodies", 3);
        prm.body_elems = cfg.get_int("problem", "body_elems", 8);
        prm.body_width = cfg.get_double("problem", "body_width", prm.body_width);
        prm.body_height = cfg.get_double("problem", "body_height", prm.body_height);
        prm.base_height = cfg.get_double("problem", "base_height", prm.base_height);
        prm.radius = cfg.get_double("problem", "radius", prm.radius);
        prm.e_base = cfg.get_double("problem", "e1", prm.e_base);
        prm.e_body = cfg.get_double("problem", "e2", prm.e_body);
        prm.nu = cfg.get_double("problem", "nu1", prm.nu);
        prm.u_d = cfg.get_double("problem", "u_d", prm.u_d);
        prm.g_min_base = cfg.get_double("problem", "g_min_base", prm.g_min_base);
        prm.scale = cfg.get_double("problem", "scale", 1.0);
        inst.problem = gen_multibody(prm).problem;
    } else if (gen == "random_small") {
        RandomSmallParams prm;
        prm.n_dofs = cfg.get_int("problem", "n_dofs", 10);
        prm.n_pairs = cfg.get_int("problem", "n_pairs", 5);
        prm.seed = seed;
        inst.problem = gen_random_small(prm);
    } else {
        throw ConfigError("unknown generator '" + gen + "'", cfg.line_of("problem", "generator"));
    }
    return inst;
}

UpdateKind::Family parse_update(const Config& cfg) {
    const std::string s = cfg.get_string("solver", "update", "uzawa");
    if (s == "uzawa") return UpdateKind::Family::Uzawa;
    if (s == "penalty") return UpdateKind::Family::PenaltySplit;
    throw ConfigError("unknown update '" + s + "' (uzawa|penalty)",
                      cfg.has("solver", "update") ? cfg.line_of("solver", "update") : 0);
}

AccelKind::Scheme parse_scheme(const std::string& s, int line) {
    if (s == "none") return AccelKind::Scheme::None;
    if (s == "fista_ar") return AccelKind::Scheme::FistaAR;
    if (s == "anderson1") return AccelKind::Scheme::Anderson1;
    if (s == "anderson1_ar") return AccelKind::Scheme::Anderson1AR;
    if (s == "crossed_secant") return AccelKind::Scheme::CrossedSecant;
    throw ConfigError("unknown accel '" + s +
                          "' (none|fista_ar|anderson1|anderson1_ar|crossed_secant)",
                      line);
}

AccelKind parse_accel(const std::string& scheme_name, const std::string& placement_name,
                      int line) {
    const AccelKind::Scheme scheme = parse_scheme(scheme_name, line);
    if (placement_name == "default") return AccelKind::make(scheme);
    if (placement_name == "before_and_after")
        return AccelKind::make(scheme, AccelKind::Placement::ProjectBeforeAndAfter);
    if (placement_name == "after_only")
        return AccelKind::make(scheme, AccelKind::Placement::ProjectAfterOnly);
    throw ConfigError("unknown placement '" + placement_name +
                          "' (default|before_and_after|after_only)",
                      line);
}

double resolve_parameter(const Config& cfg, const ContactProblem& p, const Factorization& f,
                         std::uint64_t seed) {
    const std::string s = cfg.get_string("solver", "parameter", "auto");
    if (s == "auto") {
        // In-range by construction: safely inside the sharp unprojected
        // divergence threshold 2 / lambda_max(B K^{-1} B^T).
        return 1.0 / dual_operator_norm(p, f, 1e-8, seed);
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError("parameter must be a number or 'auto', got '" + s + "'",
                          cfg.has("solver", "parameter") ? cfg.line_of("solver", "parameter") : 0);
    return v;
}

SolverConfig build_solver(const Config& cfg, UpdateKind::Family family, double parameter) {
    SolverConfig sc;
    sc.update = {family, parameter};
    const int accel_line = cfg.has("solver", "accel") ? cfg.line_of("solver", "accel") : 0;
    sc.accel = parse_accel(cfg.get_string("solver", "accel", "crossed_secant"),
                           cfg.get_string("solver", "placement", "default"), accel_line);
    sc.epsilon = cfg.get_double("solver", "epsilon", 1e-12);
    sc.max_iter = cfg.get_long("solver", "max_iter", 500000);
    sc.minit_accel = cfg.get_int("solver", "minit_accel", 2);
    sc.divergence_guard = cfg.get_double("solver", "divergence_guard", 1e8);
    return sc;
}

int status_exit_code(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return kExitOk;
        case SolveStatus::Diverged: return kExitDiverged;
        case SolveStatus::MaxIter: return kExitMaxIter;
        case SolveStatus::LinearSolveFailure: return kExitSolveFailure;
    }
    return kExitSolveFailure;
}

// Relative error with an absolute fallback for a zero reference (separated
// bodies carry no contact force at all).
double error_vs(const Vector& ref, const Vector& computed) {
    if (norm2(ref) == 0.0) return norm2(computed);
    return relative_error(ref, computed);
}

AccuracyReport accuracy_vs_oracle(const ContactProblem& p, const OracleSolution& oracle,
                                  const SolveReport& rep) {
    AccuracyReport acc;
    acc.effective_gap_max =
        rep.effective_gap_trace.empty() ? 0.0 : rep.effective_gap_trace.back();
    acc.complementarity_max =
        rep.complementarity_trace.empty() ? 0.0 : rep.complementarity_trace.back();
    acc.e_force = error_vs(spmv(p.pairing, oracle.multiplier, true),
                           spmv(p.pairing, rep.multiplier, true));
    acc.e_disp = error_vs(oracle.displacement, rep.displacement);
    try {
        acc.convergence_order_p = convergence_order(rep.residual_trace);
    } catch (const InsufficientTrace&) {
        acc.convergence_order_p = std::numeric_limits<double>::quiet_NaN();
    }
    return acc;
}

void write_summary(const std::string& path, const Config& cfg, const ProblemInstance& inst,
                   const SolverConfig& sc, const SolveReport& rep, std::uint64_t seed) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "status = " << to_string(rep.status) << '\n';
    os << "iterations = " << rep.iterations << '\n';
    os << "update = "
       << (sc.update.family == UpdateKind::Family::Uzawa ? "uzawa" : "penalty") << '\n';
    os << "parameter = " << format_double(sc.update.parameter) << '\n';
    os << "accel = " << to_string(sc.accel.scheme) << '\n';
    os << "placement = " << to_string(sc.accel.placement) << '\n';
    os << "epsilon = " << format_double(sc.epsilon) << '\n';
    os << "seed = " << seed << '\n';
    os << "problem = " << inst.kind << '\n';
    os << "n_dofs = " << inst.problem.num_dofs() << '\n';
    os << "n_pairs = " << inst.problem.num_pairs() << '\n';
    os << "r_final = "
       << format_double(rep.residual_trace.empty() ? 0.0 : rep.residual_trace.back()) << '\n';
    os << "t_first_s = " << format_double(rep.t_first_iteration) << '\n';
    os << "t_iter_mean_s = " << format_double(rep.t_mean_subsequent) << '\n';
    const double lam_norm = norm2(rep.multiplier);
    const double egap = rep.effective_gap_trace.empty() ? 0.0 : rep.effective_gap_trace.back();
    os << "effective_gap = " << format_double(egap) << '\n';
    os << "complementarity = "
       << format_double(rep.complementarity_trace.empty() ? 0.0
                                                          : rep.complementarity_trace.back())
       << '\n';
    // Diagnostic only: at a settled active zone this ratio is bounded by
    // epsilon / parameter for the plain Uzawa update.
    os << "gap_over_lambda = " << format_double(lam_norm > 0.0 ? egap / lam_norm : 0.0) << '\n';
    os << "cs_audit_checked = " << rep.cs_audit_checked << '\n';
    os << "cs_audit_violations = " << rep.cs_audit_violations << '\n';
    if (!rep.message.empty()) os << "message = " << rep.message << '\n';
    if (inst.lambda_star)
        os << "lambda_star_closed_form = " << format_double(*inst.lambda_star) << '\n';
    (void)cfg;
}

} // namespace

int cmd_solve(const std::string& config_path) {
    try {
        const Config cfg = Config::parse_file(config_path);
        check_sections(cfg, {"problem", "solver", "output"});
        cfg.check_known("problem", kProblemKeys);
        cfg.check_known("solver", kSolverKeys);
        cfg.check_known("output", kOutputKeys);

        const std::uint64_t seed = resolve_seed(cfg);
        ProblemInstance inst = build_problem(cfg, seed);
        const ValidationReport vr = validate(inst.problem);
        for (const std::string& w : vr.warnings) std::cerr << "warning: " << w << '\n';
        if (!vr.ok()) {
            for (const std::string& e : vr.errors) std::cerr << "error: " << e << '\n';
            return kExitConfig;
        }

        std::optional<Factorization> f;
        try {
            f.emplace(factorize(inst.problem.stiffness));
        } catch (const SingularMatrix& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitSolveFailure;
        }
        const double parameter = resolve_parameter(cfg, inst.problem, *f, seed);
        const SolverConfig sc = build_solver(cfg, parse_update(cfg), parameter);

        const SolveReport rep = run_fixed_point(inst.problem, sc, *f);

        const std::string dir = cfg.get_string("output", "dir", "out");
        fs::create_directories(dir);
        write_summary(dir + "/summary.txt", cfg, inst, sc, rep, seed);
        if (cfg.get_bool("output", "write_trace", true))
            write_trace_csv(dir + "/trace.csv", rep);
        if (cfg.get_bool("output", "write_bundle", false))
            write_bundle(dir + "/bundle", inst.problem);
        if (cfg.get_bool("output", "compare_oracle", false)) {
            const OracleSolution oracle = solve_saddle_point_active_set(inst.problem);
            const AccuracyReport acc = accuracy_vs_oracle(inst.problem, oracle, rep);
            std::ofstream at(dir + "/accuracy.txt");
            at << acc.to_key_values();
            std::ofstream ac(dir + "/accuracy.csv");
            ac << AccuracyReport::csv_header() << '\n' << acc.to_csv_row() << '\n';
        }
        std::cout << to_string(rep.status) << " after " << rep.iterations << " iterations ("
                  << dir << "/summary.txt)\n";
        return status_exit_code(rep.status);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolveFailure;
    }
}

int cmd_sweep(const std::string& config_path) {
    try {
        const Config cfg = Config::parse_file(config_path);
        check_sections(cfg, {"problem", "solver", "output", "sweep"});
        cfg.check_known("problem", kProblemKeys);
        cfg.check_known("solver", kSolverKeys);
        cfg.check_known("output", kOutputKeys);
        cfg.check_known("sweep", kSweepKeys);

        const std::uint64_t seed = resolve_seed(cfg);
        ProblemInstance inst = build_problem(cfg, seed);
        const ValidationReport vr = validate(inst.problem);
        if (!vr.ok()) {
            for (const std::string& e : vr.errors) std::cerr << "error: " << e << '\n';
            return kExitConfig;
        }
        const Factorization f = factorize(inst.problem.stiffness);

        std::vector<std::string> updates = cfg.has("sweep", "updates")
                                               ? cfg.get_list("sweep", "updates")
                                               : std::vector<std::string>{"uzawa"};
        std::vector<std::string> accels = cfg.has("sweep", "accels")
                                              ? cfg.get_list("sweep", "accels")
                                              : std::vector<std::string>{"none"};
        std::vector<std::string> placements = cfg.has("sweep", "placements")
                                                  ? cfg.get_list("sweep", "placements")
                                                  : std::vector<std::string>{"default"};
        const std::vector<double> parameters = cfg.get_double_list("sweep", "parameters");
        if (updates.empty() || accels.empty() || placements.empty() || parameters.empty())
            throw ConfigError("empty sweep grid", cfg.section_line("sweep"));

        struct Row {
            std::string update, accel, placement;
            double parameter;
            SolveReport rep;
        };
        std::vector<Row> rows;
        std::set<std::string> seen;
        for (const auto& u : updates)
            for (const auto& a : accels)
                for (const auto& pl : placements)
                    for (double prm : parameters) {
                        const std::string key =
                            u + '|' + a + '|' + pl + '|' + format_double(prm);
                        if (!seen.insert(key).second) {
                            std::cerr << "warning: duplicate grid point (" << key
                                      << "), keeping first\n";
                            continue;
                        }
                        rows.push_back({u, a, pl, prm, {}});
                    }
        if (rows.empty()) throw ConfigError("empty sweep grid", cfg.section_line("sweep"));

        // Validate names up front so a typo fails before any solve.
        for (const Row& r : rows) {
            if (r.update != "uzawa" && r.update != "penalty")
                throw ConfigError("unknown update '" + r.update + "' in sweep", 0);
            parse_accel(r.accel, r.placement, 0);
        }

        const int jobs = std::max(1, cfg.get_int("sweep", "jobs", 1));
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= rows.size()) break;
                Row& r = rows[i];
                SolverConfig sc = build_solver(cfg, r.update == "uzawa"
                                                        ? UpdateKind::Family::Uzawa
                                                        : UpdateKind::Family::PenaltySplit,
                                               r.parameter);
                sc.accel = parse_accel(r.accel, r.placement, 0);
                r.rep = run_fixed_point(inst.problem, sc, f);
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        std::optional<OracleSolution> oracle;
        if (cfg.get_bool("sweep", "compare_oracle", true))
            oracle = solve_saddle_point_active_set(inst.problem);

        const std::string dir = cfg.get_string("output", "dir", "out");
        fs::create_directories(dir);
        const std::string path = dir + "/sweep.csv";
        std::ofstream os(path);
        if (!os) throw IoError("cannot open for writing: " + path);
        os << "# contact-split sweep\n";
        os << "# seed=" << seed << "\n";
        os << "# jobs=" << jobs << "\n";
        os << "update,accel,placement,parameter,status,iterations,e_force,e_disp,"
              "effective_gap,complementarity\n";
        for (const Row& r : rows) {
            os << r.update << ',' << r.accel << ',' << r.placement << ','
               << format_double(r.parameter) << ',' << to_string(r.rep.status) << ','
               << r.rep.iterations << ',';
            if (oracle && !r.rep.multiplier.empty()) {
                const AccuracyReport acc = accuracy_vs_oracle(inst.problem, *oracle, r.rep);
                os << format_double(acc.e_force) << ',' << format_double(acc.e_disp) << ',';
            } else {
                os << ",,";
            }
            os << format_double(r.rep.effective_gap_trace.empty()
                                    ? 0.0
                                    : r.rep.effective_gap_trace.back())
               << ','
               << format_double(r.rep.complementarity_trace.empty()
                                    ? 0.0
                                    : r.rep.complementarity_trace.back())
               << '\n';
        }
        std::cout << "sweep: " << rows.size() << " rows -> " << path << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolveFailure;
    }
}

int cmd_validate(const std::string& config_path) {
    try {
        const Config cfg = Config::parse_file(config_path);
        check_sections(cfg, {"problem", "solver", "output", "validate"});
        cfg.check_known("problem", kProblemKeys);
        cfg.check_known("solver", kSolverKeys);
        cfg.check_known("output", kOutputKeys);
        cfg.check_known("validate", kValidateKeys);

        const std::uint64_t seed = resolve_seed(cfg);
        const std::string oracle_sel = cfg.get_string("validate", "oracle", "both");
        if (oracle_sel != "active_set" && oracle_sel != "brute_force" && oracle_sel != "both")
            throw ConfigError("oracle must be active_set|brute_force|both",
                              cfg.has("validate", "oracle") ? cfg.line_of("validate", "oracle")
                                                            : 0);
        const double max_e_force = cfg.get_double("validate", "max_e_force", 1e-8);
        const double max_e_disp = cfg.get_double("validate", "max_e_disp", 1e-8);
        const int instances =
            cfg.get_string("problem", "generator", "") == "random_small"
                ? cfg.get_int("problem", "instances", 1)
                : 1;

        const std::string dir = cfg.get_string("output", "dir", "out");
        fs::create_directories(dir);
        std::ofstream os(dir + "/validate.txt");

        bool violated = false;
        double worst_force = 0.0, worst_disp = 0.0;
        for (int k = 0; k < instances; ++k) {
            ProblemInstance inst;
            if (instances > 1) {
                RandomSmallParams prm;
                prm.n_dofs = cfg.get_int("problem", "n_dofs", 10);
                prm.n_pairs = cfg.get_int("problem", "n_pairs", 5);
                prm.seed = seed + static_cast<std::uint64_t>(k);
                inst.kind = "random_small";
                inst.problem = gen_random_small(prm);
            } else {
                inst = build_problem(cfg, seed);
            }
            const bool want_brute = oracle_sel != "active_set";
            if (want_brute && inst.problem.num_pairs() > 20)
                throw ConfigError("problem too large for the brute-force oracle (" +
                                      std::to_string(inst.problem.num_pairs()) + " pairs)",
                                  0);
            const Factorization f = factorize(inst.problem.stiffness);
            const double parameter = resolve_parameter(cfg, inst.problem, f, seed);
            const SolverConfig sc = build_solver(cfg, parse_update(cfg), parameter);
            const SolveReport rep = run_fixed_point(inst.problem, sc, f);

            std::vector<std::pair<std::string, OracleSolution>> oracles;
            if (oracle_sel != "brute_force")
                oracles.emplace_back("active_set", solve_saddle_point_active_set(inst.problem));
            if (want_brute) oracles.emplace_back("brute_force", brute_force_kkt(inst.problem));

            for (const auto& [name, sol] : oracles) {
                const AccuracyReport acc = accuracy_vs_oracle(inst.problem, sol, rep);
                const bool ok = rep.status == SolveStatus::Converged &&
                                acc.e_force <= max_e_force && acc.e_disp <= max_e_disp;
                if (!ok) violated = true;
                worst_force = std::max(worst_force, acc.e_force);
                worst_disp = std::max(worst_disp, acc.e_disp);
                os << "instance " << k << " vs " << name << ": status "
                   << to_string(rep.status) << ", e_force " << format_double(acc.e_force)
                   << ", e_disp " << format_double(acc.e_disp) << (ok ? "" : "  [FAIL]")
                   << '\n';
            }
        }
        os << "max_e_force = " << format_double(worst_force) << '\n';
        os << "max_e_disp = " << format_double(worst_disp) << '\n';
        os << "thresholds = " << format_double(max_e_force) << " / "
           << format_double(max_e_disp) << '\n';
        os << "result = " << (violated ? "FAIL" : "PASS") << '\n';
        std::cout << (violated ? "FAIL" : "PASS") << ": max e_force "
                  << format_double(worst_force) << ", max e_disp " << format_double(worst_disp)
                  << " over " << instances << " instance(s)\n";
        return violated ? kExitValidationFailed : kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolveFailure;
    }
}

int cmd_gen(const std::string& config_path) {
    try {
        const Config cfg = Config::parse_file(config_path);
        check_sections(cfg, {"problem", "output"});
        cfg.check_known("problem", kProblemKeys);
        cfg.check_known("output", kOutputKeys);
        const std::uint64_t seed = resolve_seed(cfg);
        ProblemInstance inst = build_problem(cfg, seed);
        const ValidationReport vr = validate(inst.problem);
        for (const std::string& w : vr.warnings) std::cerr << "warning: " << w << '\n';
        if (!vr.ok()) {
            for (const std::string& e : vr.errors) std::cerr << "error: " << e << '\n';
            return kExitConfig;
        }
        const std::string dir = cfg.get_string("output", "dir", "bundle");
        write_bundle(dir, inst.problem);
        std::cout << "wrote problem bundle (" << inst.problem.num_dofs() << " dofs, "
                  << inst.problem.num_pairs() << " pairs) to " << dir << '\n';
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolveFailure;
    }
}

namespace {

struct TraceData {
    std::string stem;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

TraceData read_trace_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open trace: " + path, 0);
    TraceData td;
    td.stem = fs::path(path).stem().string();
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string item;
        if (td.columns.empty()) {
            while (std::getline(ss, item, ',')) td.columns.push_back(item);
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, item, ',')) row.push_back(std::strtod(item.c_str(), nullptr));
        if (row.size() != td.columns.size())
            throw ConfigError("ragged row in " + path, line_no);
        td.rows.push_back(std::move(row));
    }
    if (td.columns.empty() || td.rows.empty())
        throw ConfigError("empty trace file: " + path, 0);
    return td;
}

} // namespace

int cmd_report(const std::vector<std::string>& trace_paths, const std::string& out_dir) {
    try {
        if (trace_paths.empty()) throw ConfigError("no trace files given", 0);
        const std::vector<std::string> required = {"iter", "r", "effective_gap",
                                                   "complementarity"};
        std::vector<TraceData> traces;
        for (const std::string& path : trace_paths) {
            TraceData td = read_trace_csv(path);
            std::vector<std::string> missing;
            for (const std::string& col : required)
                if (std::find(td.columns.begin(), td.columns.end(), col) == td.columns.end())
                    missing.push_back(col);
            if (!missing.empty()) {
                std::string names;
                for (const std::string& m : missing) names += (names.empty() ? "" : ", ") + m;
                throw ConfigError("trace " + path + " lacks column(s): " + names, 0);
            }
            traces.push_back(std::move(td));
        }
        fs::create_directories(out_dir);

        // Disambiguate repeated stems.
        std::set<std::string> used;
        for (TraceData& td : traces) {
            std::string stem = td.stem;
            int suffix = 2;
            while (!used.insert(stem).second) stem = td.stem + "_" + std::to_string(suffix++);
            td.stem = stem;
        }

        for (const TraceData& td : traces) {
            std::ofstream os(out_dir + "/" + td.stem + ".dat");
            if (!os) throw IoError("cannot write " + out_dir + "/" + td.stem + ".dat");
            os << "#";
            for (const std::string& c : td.columns) os << ' ' << c;
            os << '\n';
            for (const auto& row : td.rows) {
                for (std::size_t c = 0; c < row.size(); ++c)
                    os << (c ? " " : "") << format_double(row[c]);
                os << '\n';
            }
        }

        auto column_index = [](const TraceData& td, const std::string& name) {
            return static_cast<int>(
                std::find(td.columns.begin(), td.columns.end(), name) - td.columns.begin());
        };
        auto write_script = [&](const std::string& name, const std::string& ylabel,
                                const std::string& column) {
            std::ofstream os(out_dir + "/" + name + ".gp");
            if (!os) throw IoError("cannot write " + out_dir + "/" + name + ".gp");
            os << "set terminal pngcairo size 960,640\n";
            os << "set output '" << name << ".png'\n";
            os << "set logscale y\n";
            os << "set xlabel 'iteration'\n";
            os << "set ylabel '" << ylabel << "'\n";
            os << "set key outside\n";
            os << "plot \\\n";
            for (std::size_t t = 0; t < traces.size(); ++t) {
                const int xi = column_index(traces[t], "iter") + 1;
                const int yi = column_index(traces[t], column) + 1;
                os << "  '" << traces[t].stem << ".dat' using " << xi << ':' << yi
                   << " with lines title '" << traces[t].stem << "'"
                   << (t + 1 < traces.size() ? ", \\\n" : "\n");
            }
        };
        write_script("residual", "convergence criterion", "r");
        write_script("effective_gap", "effective gap (m)", "effective_gap");
        std::cout << "report: " << traces.size() << " trace(s) -> " << out_dir
                  << "/{residual,effective_gap}.gp\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "report error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolveFailure;
    }
}

} // namespace contactsplit
