#pragma once

// Test-side oracles, independent of the library's factorization and
// iteration paths: dense elimination, dense eigen-decomposition (Eigen),
// and small deterministic generators.

#include "contactsplit/contact_problem.hpp"
#include "contactsplit/sparse.hpp"

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace testsupport {

using contactsplit::ContactProblem;
using contactsplit::SparseRect;
using contactsplit::SparseSym;
using contactsplit::Triplet;
using contactsplit::Vector;

inline Eigen::MatrixXd dense_of(const SparseSym& a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.n, a.n);
    for (int i = 0; i < a.n; ++i)
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            m(i, a.col_indices[k]) = a.values[k];
    return m;
}

inline Eigen::MatrixXd dense_of(const SparseRect& a) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            m(i, a.col_indices[k]) = a.values[k];
    return m;
}

// Plain Gaussian elimination with partial pivoting, written directly on
// std::vector rows; the linear-solve oracle.
inline Vector gauss_solve(std::vector<Vector> a, Vector b) {
    const int n = static_cast<int>(b.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (int r = c + 1; r < n; ++r) {
            const double m = a[r][c] / a[c][c];
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

inline std::vector<Vector> dense_rows(const SparseSym& a) {
    std::vector<Vector> m(a.n, Vector(a.n, 0.0));
    for (int i = 0; i < a.n; ++i)
        for (int k = a.row_offsets[i]; k < a.row_offsets[i + 1]; ++k)
            m[i][a.col_indices[k]] = a.values[k];
    return m;
}

inline double min_eigenvalue_dense(const SparseSym& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_of(a));
    return es.eigenvalues().minCoeff();
}

inline double spectral_norm_dense(const SparseRect& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense_of(a));
    return svd.singularValues()(0);
}

// Largest eigenvalue of the dual operator B K^{-1} B^T, dense route.
inline double dual_norm_dense(const ContactProblem& p) {
    const Eigen::MatrixXd k = dense_of(p.stiffness);
    const Eigen::MatrixXd b = dense_of(p.pairing);
    const Eigen::MatrixXd w = b * k.ldlt().solve(b.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (w + w.transpose()));
    return es.eigenvalues().maxCoeff();
}

inline SparseSym spring_chain_matrix(int n, double k) {
    std::vector<Triplet> t;
    for (int i = 0; i < n; ++i) {
        t.push_back({i, i, i + 1 < n ? 2.0 * k : k});
        if (i + 1 < n) {
            t.push_back({i, i + 1, -k});
            t.push_back({i + 1, i, -k});
        }
    }
    return SparseSym::from_triplets(n, std::move(t));
}

inline SparseSym random_spd(int n, std::uint64_t seed, double eig_lo = 1.0, double eig_hi = 4.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::VectorXd eigs(n);
    for (int i = 0; i < n; ++i)
        eigs(i) = eig_lo + (eig_hi - eig_lo) * (n == 1 ? 0.0 : double(i) / (n - 1));
    const Eigen::MatrixXd m = q * eigs.asDiagonal() * q.transpose();
    std::vector<Triplet> t;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            t.push_back({i, j, v});
            if (i != j) t.push_back({j, i, v});
        }
    return SparseSym::from_triplets(n, std::move(t));
}

inline Vector random_vector(int n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Vector v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

} // namespace testsupport
