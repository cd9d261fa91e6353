#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contactsplit/dual_update.hpp"
#include "contactsplit/errors.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace contactsplit;
namespace ts = testsupport;

TEST_CASE("project_nonneg clips negatives and fixes the cone") {
    const Vector out = project_nonneg({-1.0, 0.0, 2.0});
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 0.0);
    CHECK(out[2] == 2.0);

    const Vector pos{0.5, 0.0, 3.25};
    const Vector same = project_nonneg(pos);
    for (std::size_t i = 0; i < pos.size(); ++i) CHECK(same[i] == pos[i]);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int rep = 0; rep < 100; ++rep) {
        Vector x(7);
        for (double& v : x) v = dist(rng);
        const Vector once = project_nonneg(x);
        const Vector twice = project_nonneg(once);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(twice[i] == once[i]);
    }
}

TEST_CASE("project_nonneg is non-expansive") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int rep = 0; rep < 200; ++rep) {
        Vector x(6), y(6);
        for (double& v : x) v = dist(rng);
        for (double& v : y) v = dist(rng);
        CHECK(norm2(sub(project_nonneg(x), project_nonneg(y))) <=
              norm2(sub(x, y)) * (1.0 + 1e-15));
    }
}

TEST_CASE("uzawa_update arithmetic") {
    const Vector a = uzawa_update({0.0}, 2.0, {-0.5});
    CHECK(a[0] == doctest::Approx(-1.0));

    const Vector fixed = uzawa_update({1.5, 0.25}, 7.0, {0.0, 0.0});
    CHECK(fixed[0] == 1.5);
    CHECK(fixed[1] == 0.25);

    const Vector two = uzawa_update({1.0, 2.0}, 10.0, {0.1, -0.1});
    CHECK(two[0] == doctest::Approx(2.0));
    CHECK(two[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(uzawa_update({1.0}, -1.0, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(uzawa_update({1.0, 2.0}, 1.0, {0.0}), DimensionMismatch);
}

TEST_CASE("penalty_update arithmetic and projection") {
    const Vector lhat = penalty_update(1e6, {1e-6, -1e-6});
    CHECK(lhat[0] == doctest::Approx(1.0));
    CHECK(lhat[1] == doctest::Approx(-1.0));
    const Vector proj = project_nonneg(lhat);
    CHECK(proj[0] == doctest::Approx(1.0));
    CHECK(proj[1] == 0.0);

    const Vector zero = penalty_update(1e9, {0.0, 0.0, 0.0});
    for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("penalty update equals the Uzawa update of the regularized system") {
    // lambda + k (B U - lambda/k - D) == k (B U - D), evaluated numerically.
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.5, 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double k = 10.0 * pos(rng);
        Vector lambda(5), gap(5);
        for (double& v : lambda) v = pos(rng);
        for (double& v : gap) v = dist(rng);
        Vector reg_gap = gap;
        for (int j = 0; j < 5; ++j) reg_gap[j] -= lambda[j] / k;
        const Vector via_uzawa = uzawa_update(lambda, k, reg_gap);
        const Vector via_penalty = penalty_update(k, gap);
        for (int j = 0; j < 5; ++j) {
            const double scale =
                std::max({std::fabs(via_penalty[j]), std::fabs(lambda[j]), 1.0});
            CHECK(std::fabs(via_uzawa[j] - via_penalty[j]) <= 1e-15 * scale);
        }
    }
}

TEST_CASE("uzawa_upper_bound with the unit-norm convention") {
    const SparseSym k2 = SparseSym::from_triplets(2, {{0, 0, 2.0}, {1, 1, 2.0}});
    const SparseRect b = SparseRect::from_triplets(1, 2, {{0, 0, 1.0}});
    const Factorization f2 = factorize(k2);
    CHECK(uzawa_upper_bound(k2, f2, b, true) == doctest::Approx(4.0).epsilon(1e-5));

    const SparseSym km =
        SparseSym::from_triplets(2, {{0, 0, 2.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
    const Factorization fm = factorize(km);
    CHECK(uzawa_upper_bound(km, fm, b, true) == doctest::Approx(2.0).epsilon(1e-5));

    // Estimated-norm variant: row (1,-1) has norm sqrt(2).
    const SparseRect pair = SparseRect::from_triplets(1, 2, {{0, 0, 1.0}, {0, 1, -1.0}});
    CHECK(uzawa_upper_bound(km, fm, pair, false) ==
          doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-5));
}

TEST_CASE("KKT point is a fixed point of the projected Uzawa map") {
    // Hand point with exactly zero active gap: u = (1,1), lambda = 2 for
    // K = diag(2,3), F = (4,3), constraint u_0 <= 1.
    const Vector lambda_star{2.0};
    const Vector gap_star{0.0};
    for (double rho : {1e-3, 1.0, 1e4, 1e12}) {
        const Vector next = project_nonneg(uzawa_update(lambda_star, rho, gap_star));
        CHECK(next[0] == lambda_star[0]);
    }
    // Inactive constraint with negative gap stays at zero for any rho.
    const Vector lz{0.0};
    const Vector gz{-0.3};
    for (double rho : {1e-3, 1.0, 1e6}) {
        const Vector next = project_nonneg(uzawa_update(lz, rho, gz));
        CHECK(next[0] == 0.0);
    }
}
