#include "contactsplit/reference.hpp"
#include "contactsplit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace contactsplit {

namespace {

// Dense symmetric solve by Gaussian elimination with partial pivoting;
// sizes here are the active-set cardinality, tiny at desk scale.
Vector dense_solve(std::vector<Vector> a, Vector b) {
    const int n = static_cast<int>(b.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        if (std::fabs(a[piv][c]) < 1e-300)
            throw SingularMatrix("dense_solve: singular reduced system");
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (int r = c + 1; r < n; ++r) {
            const double m = a[r][c] / a[c][c];
            if (m == 0.0) continue;
            for (int k = c; k < n; ++k) a[r][k] -= m * a[c][k];
            b[r] -= m * b[c];
        }
    }
    Vector x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
        x[r] = s / a[r][r];
    }
    return x;
}

// Shared Schur-complement data: U_free = K^{-1} F and the columns of
// K^{-1} B^T, so each candidate active set costs one small dense solve.
struct SchurData {
    Vector u_free;
    Vector bu_free;                 // B u_free
    std::vector<Vector> v_cols;     // K^{-1} B^T e_j
    std::vector<Vector> w;          // W = B K^{-1} B^T, dense rows

    explicit SchurData(const ContactProblem& p) {
        const Factorization f = factorize(p.stiffness);
        u_free = f.solve(p.external_load);
        bu_free = spmv(p.pairing, u_free);
        const int np = p.num_pairs();
        v_cols.resize(np);
        for (int j = 0; j < np; ++j) {
            Vector e(np, 0.0);
            e[j] = 1.0;
            v_cols[j] = f.solve(spmv(p.pairing, e, /*transpose=*/true));
        }
        w.assign(np, Vector(np, 0.0));
        for (int j = 0; j < np; ++j) {
            const Vector bv = spmv(p.pairing, v_cols[j]);
            for (int i = 0; i < np; ++i) w[i][j] = bv[i];
        }
    }

    // Multiplier on the active set, (U, full lambda, gap) recovered from it.
    void solve_on(const ContactProblem& p, const std::vector<int>& active, Vector& u,
                  Vector& lambda, Vector& gap) const {
        const int na = static_cast<int>(active.size());
        const int np = p.num_pairs();
        lambda.assign(np, 0.0);
        if (na > 0) {
            std::vector<Vector> waa(na, Vector(na));
            Vector rhs(na);
            for (int r = 0; r < na; ++r) {
                for (int c = 0; c < na; ++c) waa[r][c] = w[active[r]][active[c]];
                rhs[r] = bu_free[active[r]] - p.gaps[active[r]];
            }
            const Vector la = dense_solve(std::move(waa), std::move(rhs));
            for (int r = 0; r < na; ++r) lambda[active[r]] = la[r];
        }
        u = u_free;
        for (int r = 0; r < na; ++r) axpy(-lambda[active[r]], v_cols[active[r]], u);
        gap = spmv(p.pairing, u);
        for (int j = 0; j < np; ++j) gap[j] -= p.gaps[j];
    }
};

std::vector<int> reported_active(const Vector& lambda) {
    std::vector<int> a;
    for (std::size_t j = 0; j < lambda.size(); ++j)
        if (lambda[j] > 0.0) a.push_back(static_cast<int>(j));
    return a;
}

} // namespace

OracleSolution solve_saddle_point_active_set(const ContactProblem& p, int max_outer) {
    const SchurData schur(p);
    const int np = p.num_pairs();
    double gap_scale = norm_inf(p.gaps);
    gap_scale = std::max({gap_scale, norm_inf(schur.bu_free), 1e-30});
    const double add_tol = 1e-12 * gap_scale;

    std::vector<int> active;
    std::set<std::vector<int>> visited;
    OracleSolution sol;
    for (int outer = 0; outer < max_outer; ++outer) {
        if (!visited.insert(active).second)
            throw CycleDetected("active-set iteration revisited a set of size " +
                                std::to_string(active.size()));
        Vector u, lambda, gap;
        schur.solve_on(p, active, u, lambda, gap);

        std::vector<int> next;
        for (int j : active)
            if (lambda[j] >= 0.0) next.push_back(j);  // drop negative multipliers
        bool changed = next.size() != active.size();
        for (int j = 0; j < np; ++j) {
            if (std::binary_search(active.begin(), active.end(), j)) continue;
            if (gap[j] > add_tol) {
                next.push_back(j);
                changed = true;
            }
        }
        std::sort(next.begin(), next.end());
        if (!changed) {
            sol.displacement = std::move(u);
            sol.multiplier = std::move(lambda);
            sol.active_set = reported_active(sol.multiplier);
            return sol;
        }
        active = std::move(next);
    }
    throw MaxOuterIterations("active-set solver did not settle within " +
                             std::to_string(max_outer) + " outer iterations");
}

OracleSolution brute_force_kkt(const ContactProblem& p) {
    const int np = p.num_pairs();
    if (np > 20)
        throw std::invalid_argument("brute_force_kkt: enumeration limited to 20 pairs");
    const SchurData schur(p);

    double gap_scale = std::max({norm_inf(p.gaps), norm_inf(schur.bu_free), 1e-30});

    std::vector<unsigned> masks;
    masks.reserve(1u << np);
    for (unsigned m = 0; m < (1u << np); ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    OracleSolution sol;
    bool found = false;
    for (unsigned mask : masks) {
        std::vector<int> active;
        for (int j = 0; j < np; ++j)
            if (mask & (1u << j)) active.push_back(j);
        Vector u, lambda, gap;
        try {
            schur.solve_on(p, active, u, lambda, gap);
        } catch (const SingularMatrix&) {
            continue;  // linearly dependent candidate rows
        }
        const double lam_tol = 1e-10 * (1.0 + norm_inf(lambda));
        const double g_tol = 1e-10 * (1.0 + gap_scale);
        bool ok = true;
        for (int j : active)
            if (lambda[j] < -lam_tol) ok = false;
        for (int j = 0; j < np && ok; ++j)
            if (!(mask & (1u << j)) && gap[j] > g_tol) ok = false;
        if (!ok) continue;
        if (!found) {
            sol.displacement = std::move(u);
            sol.multiplier = std::move(lambda);
            sol.active_set = reported_active(sol.multiplier);
            found = true;
        } else {
            sol.ambiguous = true;
            break;
        }
    }
    if (!found) throw NoKKTPoint("brute_force_kkt: no candidate satisfies the KKT conditions");
    return sol;
}

double dual_operator_norm(const ContactProblem& p, const Factorization& f, double tol,
                          std::uint64_t seed) {
    const int np = p.num_pairs();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector x(np);
    for (double& v : x) v = dist(rng);
    double nrm = norm2(x);
    for (double& v : x) v /= nrm;
    double est_prev = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Vector y = spmv(p.pairing, f.solve(spmv(p.pairing, x, /*transpose=*/true)));
        const double est = dot(x, y);
        nrm = norm2(y);
        if (nrm == 0.0) return 0.0;
        for (double& v : y) v /= nrm;
        x = std::move(y);
        if (it > 0 && std::fabs(est - est_prev) <= tol * std::fabs(est)) return est;
        est_prev = est;
    }
    throw NoConvergence("dual_operator_norm: power iteration did not converge");
}

} // namespace contactsplit
