#include "contactsplit/factorization.hpp"
#include "contactsplit/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <queue>

namespace contactsplit {

namespace {

std::atomic<std::int64_t> g_factorize_calls{0};

std::vector<int> bfs_levels(const SparseSym& a, int start, std::vector<int>& order) {
    std::vector<int> level(a.n, -1);
    order.clear();
    std::queue<int> q;
    q.push(start);
    level[start] = 0;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        order.push_back(u);
        std::vector<int> nbrs;
        for (int k = a.row_offsets[u]; k < a.row_offsets[u + 1]; ++k) {
            const int v = a.col_indices[k];
            if (v != u && level[v] < 0) {
                level[v] = level[u] + 1;
                nbrs.push_back(v);
            }
        }
        std::sort(nbrs.begin(), nbrs.end(), [&](int x, int y) {
            return a.row_offsets[x + 1] - a.row_offsets[x] < a.row_offsets[y + 1] - a.row_offsets[y];
        });
        for (int v : nbrs) q.push(v);
    }
    return level;
}

} // namespace

std::vector<int> reverse_cuthill_mckee(const SparseSym& a) {
    std::vector<int> order;
    order.reserve(a.n);
    std::vector<bool> seen(a.n, false);
    for (int seed = 0; seed < a.n; ++seed) {
        if (seen[seed]) continue;
        // Pseudo-peripheral start: min-degree node of the component, then
        // walk to the deepest BFS level twice.
        int start = seed;
        {
            std::vector<int> comp;
            bfs_levels(a, seed, comp);
            int best = comp[0];
            for (int u : comp) {
                const int du = a.row_offsets[u + 1] - a.row_offsets[u];
                const int db = a.row_offsets[best + 1] - a.row_offsets[best];
                if (du < db) best = u;
            }
            start = best;
            for (int pass = 0; pass < 2; ++pass) {
                std::vector<int> ord;
                bfs_levels(a, start, ord);
                start = ord.back();
            }
        }
        std::vector<int> comp_order;
        bfs_levels(a, start, comp_order);
        for (int u : comp_order) {
            seen[u] = true;
            order.push_back(u);
        }
    }
    std::reverse(order.begin(), order.end());
    return order;
}

Factorization factorize(const SparseSym& k) {
    ++g_factorize_calls;
    const int n = k.n;
    Factorization f;
    f.n_ = n;
    f.matrix_ = k;
    f.perm_ = reverse_cuthill_mckee(k);
    f.iperm_.assign(n, 0);
    for (int i = 0; i < n; ++i) f.iperm_[f.perm_[i]] = i;

    // Envelope structure of the permuted matrix.
    f.env_first_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        const int oi = f.perm_[i];
        int first = i;
        for (int kk = k.row_offsets[oi]; kk < k.row_offsets[oi + 1]; ++kk)
            first = std::min(first, f.iperm_[k.col_indices[kk]]);
        f.env_first_[i] = first;
    }
    f.env_start_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) f.env_start_[i + 1] = f.env_start_[i] + (i - f.env_first_[i]);
    f.env_.assign(static_cast<std::size_t>(f.env_start_[n]), 0.0);
    f.diag_.assign(n, 0.0);

    // Scatter permuted A into the envelope.
    for (int i = 0; i < n; ++i) {
        const int oi = f.perm_[i];
        for (int kk = k.row_offsets[oi]; kk < k.row_offsets[oi + 1]; ++kk) {
            const int j = f.iperm_[k.col_indices[kk]];
            if (j < i)
                f.env_[f.env_start_[i] + (j - f.env_first_[i])] = k.values[kk];
            else if (j == i)
                f.diag_[i] = k.values[kk];
        }
    }

    const double pivot_floor = 1e-14 * k.max_abs_diag();

    // Row-wise profile LDL^T, in place.
    for (int i = 0; i < n; ++i) {
        const int fi = f.env_first_[i];
        double* li = f.env_.data() + (f.env_start_[i] - fi);  // li[j] = L(i,j)
        for (int j = fi; j < i; ++j) {
            const int fj = f.env_first_[j];
            const double* lj = f.env_.data() + (f.env_start_[j] - fj);
            double s = li[j];
            for (int m = std::max(fi, fj); m < j; ++m) s -= li[m] * f.diag_[m] * lj[m];
            li[j] = s / f.diag_[j];
        }
        double d = f.diag_[i];
        for (int m = fi; m < i; ++m) d -= li[m] * li[m] * f.diag_[m];
        if (std::fabs(d) <= pivot_floor || !std::isfinite(d))
            throw SingularMatrix("factorize: pivot " + std::to_string(d) + " at permuted row " +
                                 std::to_string(i) + " (original " + std::to_string(f.perm_[i]) +
                                 ")");
        f.diag_[i] = d;
    }
    return f;
}

void Factorization::solve_factored(const double* b, double* x) const {
    const int n = n_;
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = b[perm_[i]];
    // L z = b
    for (int i = 0; i < n; ++i) {
        const int fi = env_first_[i];
        const double* li = env_.data() + (env_start_[i] - fi);
        double s = z[i];
        for (int m = fi; m < i; ++m) s -= li[m] * z[m];
        z[i] = s;
    }
    for (int i = 0; i < n; ++i) z[i] /= diag_[i];
    // L^T y = z
    for (int i = n - 1; i >= 0; --i) {
        const int fi = env_first_[i];
        const double* li = env_.data() + (env_start_[i] - fi);
        const double xi = z[i];
        for (int m = fi; m < i; ++m) z[m] -= li[m] * xi;
    }
    for (int i = 0; i < n; ++i) x[perm_[i]] = z[i];
}

Vector Factorization::solve(const Vector& rhs) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw DimensionMismatch("solve: rhs length " + std::to_string(rhs.size()) +
                                ", matrix dimension " + std::to_string(n_));
    Vector x(n_);
    solve_factored(rhs.data(), x.data());
    // One refinement pass keeps residuals near machine level on harder K.
    Vector r = spmv(matrix_, x);
    for (int i = 0; i < n_; ++i) r[i] = rhs[i] - r[i];
    Vector dx(n_);
    solve_factored(r.data(), dx.data());
    for (int i = 0; i < n_; ++i) x[i] += dx[i];
    return x;
}

Vector solve_with(const Factorization& f, const Vector& rhs) { return f.solve(rhs); }

std::int64_t factorize_call_count() { return g_factorize_calls.load(); }

} // namespace contactsplit
