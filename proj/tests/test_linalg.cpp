#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contactsplit/eigen_estimates.hpp"
#include "contactsplit/errors.hpp"
#include "contactsplit/factorization.hpp"
#include "contactsplit/sparse.hpp"
#include "support.hpp"

#include <cmath>
#include <filesystem>
#include <random>

using namespace contactsplit;
namespace ts = testsupport;

namespace {

SparseSym diag_matrix(std::vector<double> d) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < d.size(); ++i)
        t.push_back({static_cast<int>(i), static_cast<int>(i), d[i]});
    return SparseSym::from_triplets(static_cast<int>(d.size()), std::move(t));
}

} // namespace

TEST_CASE("factorize and solve: identity and diagonal") {
    const Factorization fi = factorize(diag_matrix({1, 1, 1}));
    const Vector b{5.0, -3.0, 2.0};
    const Vector x = solve_with(fi, b);
    for (int i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-14));

    const Factorization fd = factorize(diag_matrix({2, 4}));
    const Vector y = solve_with(fd, {2.0, 8.0});
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(2.0).epsilon(1e-14));

    CHECK(solve_with(fi, {5.0, -3.0, 2.0})[1] == doctest::Approx(-3.0));
}

TEST_CASE("factorize: spring chain solve matches dense elimination oracle") {
    const SparseSym k = ts::spring_chain_matrix(5, 1.0);
    const Factorization f = factorize(k);
    const Vector b = ts::random_vector(5, 7);
    const Vector x = solve_with(f, b);
    const Vector x_ref = ts::gauss_solve(ts::dense_rows(k), b);
    for (int i = 0; i < 5; ++i)
        CHECK(std::fabs(x[i] - x_ref[i]) <= 1e-12 * std::fabs(x_ref[i]) + 1e-14);
}

TEST_CASE("factorize: singular matrix reported") {
    // 2-dof body with no support: zero row/column block.
    std::vector<Triplet> t{{0, 0, 1.0}, {1, 1, 0.0}};
    CHECK_THROWS_AS(factorize(SparseSym::from_triplets(2, std::move(t))), SingularMatrix);
}

TEST_CASE("solve_with: dimension mismatch and random SPD accuracy") {
    const SparseSym k = ts::random_spd(8, 11);
    const Factorization f = factorize(k);
    CHECK_THROWS_AS(solve_with(f, Vector(5, 1.0)), DimensionMismatch);
    const Vector b = ts::random_vector(8, 13);
    const Vector x = solve_with(f, b);
    const Vector x_ref = ts::gauss_solve(ts::dense_rows(k), b);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 8; ++i) {
        num += (x[i] - x_ref[i]) * (x[i] - x_ref[i]);
        den += x_ref[i] * x_ref[i];
    }
    CHECK(std::sqrt(num / den) <= 1e-11);
}

TEST_CASE("solve residual invariant over 100 random right-hand sides") {
    for (int inst = 0; inst < 3; ++inst) {
        const SparseSym k = inst == 0 ? ts::spring_chain_matrix(40, 3.0)
                                      : ts::random_spd(12 + 5 * inst, 100 + inst);
        const Factorization f = factorize(k);
        std::mt19937_64 rng(500 + inst);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int rep = 0; rep < 100; ++rep) {
            Vector b(k.n);
            for (double& v : b) v = dist(rng);
            const Vector x = solve_with(f, b);
            const Vector kx = spmv(k, x);
            CHECK(norm2(sub(kx, b)) <= 1e-10 * norm2(b));
        }
    }
}

TEST_CASE("spmv: pairs and transpose") {
    const SparseRect eye = SparseRect::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
    const Vector v = spmv(eye, {3.0, 4.0});
    CHECK(v[0] == 3.0);
    CHECK(v[1] == 4.0);

    const SparseRect pair = SparseRect::from_triplets(1, 2, {{0, 0, 1.0}, {0, 1, -1.0}});
    CHECK(spmv(pair, {2.0, 5.0})[0] == -3.0);
    const Vector forces = spmv(pair, {7.0}, /*transpose=*/true);
    CHECK(forces[0] == 7.0);
    CHECK(forces[1] == -7.0);

    CHECK_THROWS_AS(spmv(pair, {1.0, 2.0, 3.0}), DimensionMismatch);
    CHECK_THROWS_AS(spmv(pair, {1.0, 2.0}, true), DimensionMismatch);
}

TEST_CASE("spmv adjoint identity on random sparse matrices") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_int_distribution<int> cols(0, 9);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Triplet> t;
        for (int r = 0; r < 6; ++r)
            for (int k = 0; k < 3; ++k) t.push_back({r, cols(rng), dist(rng)});
        const SparseRect b = SparseRect::from_triplets(6, 10, std::move(t));
        Vector x(10), y(6);
        for (double& v : x) v = dist(rng);
        for (double& v : y) v = dist(rng);
        const double lhs = dot(spmv(b, x), y);
        const double rhs = dot(x, spmv(b, y, true));
        CHECK(std::fabs(lhs - rhs) <= 1e-13 * (std::fabs(lhs) + std::fabs(rhs) + 1.0));
    }
}

TEST_CASE("min_eigenvalue_estimate: diagonal and 2x2 spectra") {
    const SparseSym d = diag_matrix({2, 5, 9});
    const Factorization fd = factorize(d);
    CHECK(min_eigenvalue_estimate(d, fd) == doctest::Approx(2.0).epsilon(1e-6));

    const SparseSym m =
        SparseSym::from_triplets(2, {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
    const Factorization fm = factorize(m);
    CHECK(min_eigenvalue_estimate(m, fm) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("min_eigenvalue_estimate: spring chain vs dense eigen-decomposition oracle") {
    const SparseSym k = ts::spring_chain_matrix(10, 1.0);
    const Factorization f = factorize(k);
    const double est = min_eigenvalue_estimate(k, f);
    const double ref = ts::min_eigenvalue_dense(k);
    CHECK(std::fabs(est - ref) <= 1e-5 * ref);
}

TEST_CASE("min_eigenvalue_estimate stays below Rayleigh quotients") {
    const SparseSym k = ts::random_spd(15, 77, 0.5, 9.0);
    const Factorization f = factorize(k);
    const double est = min_eigenvalue_estimate(k, f);
    for (int rep = 0; rep < 50; ++rep) {
        const Vector x = ts::random_vector(15, 900 + rep);
        const double rayleigh = dot(x, spmv(k, x)) / dot(x, x);
        CHECK(est <= rayleigh * (1.0 + 1e-9));
    }
}

TEST_CASE("min_eigenvalue_estimate: iteration cap errors") {
    const SparseSym k = ts::random_spd(12, 5);
    const Factorization f = factorize(k);
    CHECK_THROWS_AS(min_eigenvalue_estimate(k, f, 1e-15, 1), NoConvergence);
}

TEST_CASE("spectral_norm_estimate: identity, diagonal, single pair") {
    const SparseRect eye = SparseRect::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 1.0}});
    CHECK(spectral_norm_estimate(eye) == doctest::Approx(1.0).epsilon(1e-6));

    const SparseRect d = SparseRect::from_triplets(2, 2, {{0, 0, 3.0}, {1, 1, 4.0}});
    CHECK(spectral_norm_estimate(d) == doctest::Approx(4.0).epsilon(1e-6));

    const SparseRect pair = SparseRect::from_triplets(1, 2, {{0, 0, 1.0}, {0, 1, -1.0}});
    CHECK(spectral_norm_estimate(pair) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

    const SparseRect wide = SparseRect::from_triplets(3, 7, {{0, 1, 2.0}, {1, 3, -1.5}, {2, 6, 0.5}});
    CHECK(spectral_norm_estimate(wide) ==
          doctest::Approx(ts::spectral_norm_dense(wide)).epsilon(1e-5));
}

TEST_CASE("sparse construction enforces the symmetric contract") {
    CHECK_THROWS_AS(SparseSym::from_triplets(2, {{0, 0, 1.0}, {0, 1, 0.5}, {1, 1, 1.0}}),
                    DimensionMismatch);
    CHECK_THROWS_AS(
        SparseSym::from_triplets(2, {{0, 0, 1.0}, {0, 1, 0.5}, {1, 0, 0.6}, {1, 1, 1.0}}),
        DimensionMismatch);
    // Diagonal entries are inserted even when absent from the triplets.
    const SparseSym a = SparseSym::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0}});
    CHECK(a.at(0, 0) == 0.0);
    CHECK(a.at(1, 1) == 0.0);
    CHECK(a.nnz() == 4);
}

TEST_CASE("matrix market round-trip is bit exact") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "contactsplit_mtx_test";
    fs::create_directories(dir);
    const SparseSym k = ts::random_spd(7, 21);
    write_matrix_market((dir / "k.mtx").string(), k);
    const SparseSym k2 = read_matrix_market_sym((dir / "k.mtx").string());
    REQUIRE(k2.n == k.n);
    REQUIRE(k2.nnz() == k.nnz());
    for (int i = 0; i < k.n; ++i)
        for (int c = k.row_offsets[i]; c < k.row_offsets[i + 1]; ++c)
            CHECK(k2.at(i, k.col_indices[c]) == k.values[c]);

    const SparseRect b =
        SparseRect::from_triplets(2, 4, {{0, 0, 1.0 / 3.0}, {0, 3, -1e-17}, {1, 2, 2.5}});
    write_matrix_market((dir / "b.mtx").string(), b);
    const SparseRect b2 = read_matrix_market_rect((dir / "b.mtx").string());
    REQUIRE(b2.nnz() == b.nnz());
    for (int i = 0; i < b.rows; ++i)
        for (int c = b.row_offsets[i]; c < b.row_offsets[i + 1]; ++c)
            CHECK(b2.at(i, b.col_indices[c]) == b.values[c]);
    fs::remove_all(dir);
}

TEST_CASE("reverse Cuthill-McKee produces a permutation") {
    const SparseSym k = ts::spring_chain_matrix(12, 1.0);
    const std::vector<int> p = reverse_cuthill_mckee(k);
    REQUIRE(p.size() == 12);
    std::vector<bool> seen(12, false);
    for (int v : p) {
        REQUIRE(v >= 0);
        REQUIRE(v < 12);
        CHECK(!seen[v]);
        seen[v] = true;
    }
}

TEST_CASE("vector text files round-trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "contactsplit_vec_test";
    fs::create_directories(dir);
    const Vector v{1.0 / 3.0, -2.5e-17, 0.0, 3.14159265358979};
    write_vec((dir / "v.vec").string(), v);
    const Vector w = read_vec((dir / "v.vec").string());
    REQUIRE(w.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(w[i] == v[i]);
    fs::remove_all(dir);
}
