#include "opr/errors.hpp"
#include "opr/thresholds.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace opr;
using opr::testing::oracle_alpha;
using opr::testing::oracle_kmax;
using opr::testing::oracle_kmin;
using opr::testing::oracle_omega;

// Golden values recorded from a fine grid scan (step 1e-7) and from
// arbitrary-precision Lambert W evaluations, computed outside this code base.
namespace golden {
constexpr double alpha_10_30_5_3 = 2.675981447;
constexpr double omega_10_30_5_3 = 2.745380846;
constexpr double alpha_2_4_1_0 = 1.8793852415718169; // 1/a with a^3 + 3a^2 - 1 = 0
constexpr double omega_2_4_1_0 = 1.821640148;
constexpr double grid_tol = 1e-7;
constexpr double w_of_1 = 0.56714329040978387;
constexpr double regime2_alpha_theta100 = 7.3987873072781758;
constexpr double regime2_omega_theta100_b1 = 3.92831889446572783;
constexpr double regime1_alpha_10_30_5_3 = 2.93389599488564900;
constexpr double regime1_omega_10_30_5_3 = 9.657816770788605;
} // namespace golden

TEST_CASE("solve_alpha examples")
{
    CHECK(solve_alpha(1, 100, 1, 0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(solve_alpha(2, 4, 1, 0) == doctest::Approx(golden::alpha_2_4_1_0).epsilon(1e-12));
    CHECK(std::abs(solve_alpha(10, 30, 5, 3) - golden::alpha_10_30_5_3) < golden::grid_tol);
}

TEST_CASE("solve_omega examples")
{
    CHECK(solve_omega(1, 100, 1, 0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::abs(solve_omega(2, 4, 1, 0) - golden::omega_2_4_1_0) < golden::grid_tol);
    CHECK(solve_omega(2, 4, 1, 0) == doctest::Approx(oracle_kmax(2, 4.0)).epsilon(1e-12));
    CHECK(std::abs(solve_omega(10, 30, 5, 3) - golden::omega_10_30_5_3) < golden::grid_tol);
}

TEST_CASE("residuals vanish at the returned roots")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto pm = testing::random_params(rng, Variant::Min, 50, 100);
        const double a = solve_alpha(pm.k, pm.upper, pm.lower, pm.beta);
        CHECK(std::abs(alpha_residual(a, pm.k, pm.upper, pm.lower, pm.beta)) < 1e-10);
        CHECK(a == doctest::Approx(oracle_alpha(pm.k, pm.upper, pm.lower, pm.beta)).epsilon(1e-9));

        const auto px = testing::random_params(rng, Variant::Max, 50, 100);
        const double w = solve_omega(px.k, px.upper, px.lower, px.beta);
        CHECK(std::abs(omega_residual(w, px.k, px.upper, px.lower, px.beta)) < 1e-10);
        CHECK(w == doctest::Approx(oracle_omega(px.k, px.upper, px.lower, px.beta)).epsilon(1e-9));
    }
}

TEST_CASE("solver errors")
{
    CHECK_THROWS_AS(solve_alpha(1, 30, 5, 12.5), RegimeError);
    CHECK_THROWS_AS(solve_alpha(1, 30, 5, 20), RegimeError);
    CHECK_THROWS_AS(solve_alpha(0, 30, 5, 1), ParameterError);
    CHECK_THROWS_AS(solve_alpha(1, 4, 5, 0), ParameterError);
    CHECK_THROWS_AS(solve_omega(2, 30, 5, 5), RegimeError);
    CHECK_THROWS_AS(solve_omega(1, 30, 0, 0), ParameterError);
    CHECK_NOTHROW(solve_alpha(3, 7, 7, 0));
}

TEST_CASE("cleared equation changes sign exactly once on the bracket")
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) {
        const bool min = i % 2 == 0;
        const auto p = testing::random_params(rng, min ? Variant::Min : Variant::Max, 20, 50);
        const double k = p.k, U = p.upper, L = p.lower, b = p.beta;
        auto cleared = [&](double x) {
            if (min)
                return (U - L - 2 * b) - (U * (1 - 1 / x) - (2 * b - 2 * b / k + 2 * b / (k * x))) * std::pow(1 + 1 / (k * x), k);
            return (U - L - 2 * b) - (L * (x - 1) - 2 * b * (1 - 1 / k + x / k)) * std::pow(1 + x / k, k);
        };
        const double root = min ? solve_alpha(p.k, U, L, b) : solve_omega(p.k, U, L, b);
        const double hi = 4 * root + 4;
        int changes = 0;
        double prev = cleared(1 + 1e-12);
        double at = NAN;
        for (int s = 1; s <= 4000; ++s) {
            const double x = 1 + 1e-12 + (hi - 1) * s / 4000.0;
            const double r = cleared(x);
            if ((r < 0) != (prev < 0)) {
                ++changes;
                at = x;
            }
            prev = r;
        }
        CHECK(changes == 1);
        CHECK(std::abs(at - root) <= (hi - 1) / 4000.0 + 1e-12);
    }
}

TEST_CASE("k-search ratios reduce to sqrt(theta) at k = 1")
{
    for (const double th : {2.0, 10.0, 36.0, 100.0}) {
        CHECK(ksearch_min_ratio(1, th) == doctest::Approx(std::sqrt(th)).epsilon(1e-12));
        CHECK(ksearch_max_ratio(1, th) == doctest::Approx(std::sqrt(th)).epsilon(1e-12));
        for (const int k : {2, 5, 10, 50}) {
            CHECK(ksearch_min_ratio(k, th) == doctest::Approx(oracle_kmin(k, th)).epsilon(1e-12));
            CHECK(ksearch_max_ratio(k, th) == doctest::Approx(oracle_kmax(k, th)).epsilon(1e-12));
        }
    }
}

TEST_CASE("dtpr_min_thresholds")
{
    const auto f1 = dtpr_min_thresholds(1, 100, 1, 0);
    CHECK(f1.lower[0] == doctest::Approx(10.0));
    CHECK(f1.upper[0] == doctest::Approx(10.0));

    const auto f = dtpr_min_thresholds(10, 30, 5, 3);
    REQUIRE(f.lower.size() == 10);
    for (int i = 0; i < 10; ++i) {
        CHECK(f.upper[i] - f.lower[i] == doctest::Approx(6.0).epsilon(1e-12));
        if (i > 0) {
            CHECK(f.upper[i] < f.upper[i - 1]);
            CHECK(f.lower[i] < f.lower[i - 1]);
        }
    }
    CHECK(min_upper_threshold(11, f.ratio, 10, 30, 5, 3) - 6 == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(f.ratio == solve_alpha(10, 30, 5, 3));
}

TEST_CASE("families match the printed expansion where it is well conditioned")
{
    // u_i = U[1 - (1 - 1/a) q^(i-1)] + 2b[(1/(ka) - 1/k + 1) q^(i-1)], q = 1 + 1/(ka)
    // l_i = L[1 + (w - 1) q^(i-1)] - 2b[(w/k - 1/k + 1) q^(i-1)],       q = 1 + w/k
    std::mt19937_64 rng(29);
    for (int n = 0; n < 100; ++n) {
        const auto p = testing::random_params(rng, Variant::Min, 12, 20);
        const auto f = dtpr_min_thresholds(p.k, p.upper, p.lower, p.beta);
        const double a = f.ratio, q = 1 + 1 / (p.k * a);
        for (int i = 1; i <= p.k; ++i) {
            const double g = std::pow(q, i - 1);
            const double u = p.upper * (1 - (1 - 1 / a) * g) + 2 * p.beta * ((1 / (p.k * a) - 1.0 / p.k + 1) * g);
            CHECK(f.upper[i - 1] == doctest::Approx(u).epsilon(1e-9));
        }

        auto r = testing::random_params(rng, Variant::Max, 6, 20);
        r.beta = std::min(r.beta, 0.5 * r.k * r.lower / 2);
        const auto h = dtpr_max_thresholds(r.k, r.upper, r.lower, r.beta);
        const double w = h.ratio, qw = 1 + w / r.k;
        for (int i = 1; i <= r.k; ++i) {
            const double g = std::pow(qw, i - 1);
            const double l = r.lower * (1 + (w - 1) * g) - 2 * r.beta * ((w / r.k - 1.0 / r.k + 1) * g);
            CHECK(h.lower[i - 1] == doctest::Approx(l).epsilon(1e-7));
        }
    }
}

TEST_CASE("dtpr_max_thresholds")
{
    const auto f1 = dtpr_max_thresholds(1, 100, 1, 0);
    CHECK(f1.lower[0] == doctest::Approx(10.0));

    const auto f = dtpr_max_thresholds(10, 30, 5, 3);
    for (int i = 0; i < 10; ++i) {
        CHECK(f.upper[i] - f.lower[i] == doctest::Approx(6.0).epsilon(1e-12));
        if (i > 0) {
            CHECK(f.upper[i] > f.upper[i - 1]);
            CHECK(f.lower[i] > f.lower[i - 1]);
        }
    }
    CHECK(max_lower_threshold(11, f.ratio, 10, 30, 5, 3) + 6 == doctest::Approx(30.0).epsilon(1e-9));
}

TEST_CASE("balancing identities on random parameters")
{
    std::mt19937_64 rng(17);
    for (int n = 0; n < 100; ++n) {
        const auto p = testing::random_params(rng, Variant::Min, 30, 100);
        const auto f = dtpr_min_thresholds(p.k, p.upper, p.lower, p.beta);
        double prefix = 0.0;
        for (int j = 0; j <= p.k; ++j) {
            const double next_lower = j < p.k ? f.lower[j] : p.lower;
            const double lhs = prefix + (p.k - j) * p.upper + 2 * p.beta;
            const double rhs = f.ratio * (p.k * next_lower + 2 * p.beta);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
            if (j < p.k)
                prefix += f.upper[j];
        }

        const auto q = testing::random_params(rng, Variant::Max, 30, 100);
        const auto g = dtpr_max_thresholds(q.k, q.upper, q.lower, q.beta);
        prefix = 0.0;
        for (int j = 0; j <= q.k; ++j) {
            const double next_upper = j < q.k ? g.upper[j] : q.upper;
            const double lhs = g.ratio * (prefix + (q.k - j) * q.lower - 2 * q.beta);
            const double rhs = q.k * next_upper - 2 * q.beta;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
            if (j < q.k)
                prefix += g.lower[j];
        }
    }
}

TEST_CASE("monotone thresholds on random parameters")
{
    std::mt19937_64 rng(23);
    for (int n = 0; n < 200; ++n) {
        const auto p = testing::random_params(rng, Variant::Min, 40, 100);
        const auto f = dtpr_min_thresholds(p.k, p.upper, p.lower, p.beta);
        for (int i = 1; i < p.k; ++i)
            CHECK(f.lower[i] <= f.lower[i - 1]);
        auto q = testing::random_params(rng, Variant::Max, 40, 100);
        q.beta = std::min(q.beta, 0.99 * (q.upper - q.lower) / 2);
        const auto g = dtpr_max_thresholds(q.k, q.upper, q.lower, q.beta);
        for (int i = 1; i < q.k; ++i)
            CHECK(g.lower[i] >= g.lower[i - 1]);
    }
}

TEST_CASE("max thresholds turn downward once 2 beta exceeds U - L")
{
    // still inside beta < kL/2, but l_{k+1} = U - 2 beta now sits below L
    const int k = 6;
    const double U = 12, L = 10, beta = 4;
    const auto g = dtpr_max_thresholds(k, U, L, beta);
    for (int i = 1; i < k; ++i)
        CHECK(g.lower[i] < g.lower[i - 1]);
    CHECK(max_lower_threshold(k + 1, g.ratio, k, U, L, beta) == doctest::Approx(U - 2 * beta));
    CHECK(g.lower.back() < L);
}

TEST_CASE("beta = 0 recovers k-search")
{
    for (const int k : {1, 2, 5, 10}) {
        for (const double th : {2.0, 10.0, 36.0}) {
            const double L = 3.0, U = 3.0 * th;
            const auto dm = dtpr_min_thresholds(k, U, L, 0);
            const auto km = ksearch_thresholds(k, U, L, Variant::Min);
            const auto dx = dtpr_max_thresholds(k, U, L, 0);
            const auto kx = ksearch_thresholds(k, U, L, Variant::Max);
            CHECK(dm.ratio == doctest::Approx(ksearch_min_ratio(k, th)).epsilon(1e-9));
            CHECK(dx.ratio == doctest::Approx(ksearch_max_ratio(k, th)).epsilon(1e-9));
            for (int i = 0; i < k; ++i) {
                CHECK(dm.lower[i] == doctest::Approx(km.lower[i]));
                CHECK(km.lower[i] == km.upper[i]);
                CHECK(dx.lower[i] == doctest::Approx(kx.lower[i]));
            }
        }
    }
    const auto k1 = ksearch_thresholds(1, 16, 4, Variant::Min);
    CHECK(k1.lower[0] == doctest::Approx(8.0));
    CHECK(ksearch_thresholds(2, 4, 1, Variant::Min).ratio == doctest::Approx(golden::alpha_2_4_1_0).epsilon(1e-12));
}

TEST_CASE("constant_threshold")
{
    CHECK(constant_threshold(100, 1) == 10);
    CHECK(constant_threshold(4, 4) == 4);
    CHECK(constant_threshold(9, 4) == 6);
    CHECK_THROWS_AS(constant_threshold(1, 2), ParameterError);
}

TEST_CASE("lambert_w")
{
    CHECK(lambert_w(0) == 0);
    CHECK(lambert_w(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambert_w(1) == doctest::Approx(golden::w_of_1).epsilon(1e-14));
    CHECK(lambert_w(-1 / std::numbers::e) == doctest::Approx(-1.0).epsilon(1e-6));
    for (const double x : {-0.36, -0.3, -0.1, 1e-8, 0.5, 2.0, 10.0, 1e3, 1e8}) {
        const double w = lambert_w(x);
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, std::abs(x)));
    }
    CHECK_THROWS_AS(lambert_w(-0.5), ParameterError);
}

TEST_CASE("asymptotic_alpha")
{
    CHECK(asymptotic_alpha(1, 100, 1, 1e-12, Regime::Regime1) == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(asymptotic_alpha(10, 30, 5, 3, Regime::Regime1) ==
          doctest::Approx(golden::regime1_alpha_10_30_5_3).epsilon(1e-12));
    CHECK(asymptotic_alpha(10, 100, 1, 0, Regime::Regime2) ==
          doctest::Approx(golden::regime2_alpha_theta100).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_alpha(10, 30, 5, 13, Regime::Regime1), ParameterError);
}

TEST_CASE("asymptotic_omega")
{
    CHECK(asymptotic_omega(1, 100, 1, 1e-12, Regime::Regime1) == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(asymptotic_omega(10, 30, 5, 3, Regime::Regime1) ==
          doctest::Approx(golden::regime1_omega_10_30_5_3).epsilon(1e-12));
    CHECK(asymptotic_omega(10, 100, 1, 0.5, Regime::Regime2) ==
          doctest::Approx(golden::regime2_omega_theta100_b1).epsilon(1e-12));
    for (const double w : {1.5, 2.0, 4.0}) {
        const double theta = std::numbers::e * (w - 1) * std::exp(w - 1) + 1;
        CHECK(asymptotic_omega(5, theta, 1, 0, Regime::Regime2) == doctest::Approx(w).epsilon(1e-12));
    }
    CHECK_THROWS_AS(asymptotic_omega(2, 30, 5, 5, Regime::Regime1), RegimeError);
}
