#ifndef OPR_TESTS_SUPPORT_HPP
#define OPR_TESTS_SUPPORT_HPP

// Independent oracles and generators shared by the unit and acceptance tests.
// Nothing here calls the solvers under test.

#include "opr/core.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace opr::testing {

/// Plain bisection in long double; f(lo) and f(hi) must differ in sign.
template <class F>
long double bisect(F f, long double lo, long double hi, int iterations = 300)
{
    long double flo = f(lo);
    for (int i = 0; i < iterations; ++i) {
        const long double mid = (lo + hi) / 2;
        const long double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

/// Log-spaced scan of (1, 1e8] for the first sign change, then bisection.
template <class F>
long double scan_then_bisect(F f)
{
    long double prev = 1.0L + 1e-12L;
    const long double fprev = f(prev);
    for (int i = 1; i <= 40000; ++i) {
        const long double x = 1.0L + std::pow(10.0L, -12.0L + 20.0L * i / 40000);
        if ((f(x) < 0) != (fprev < 0))
            return bisect(f, prev, x);
        prev = x;
    }
    return NAN;
}

/// k-min search ratio: root in (1, theta] of (1 - 1/theta) = (1 - 1/a)(1 + 1/(a k))^k.
inline double oracle_kmin(int k, double theta)
{
    const long double th = theta;
    auto f = [&](long double a) { return (1 - 1 / th) - (1 - 1 / a) * std::pow(1 + 1 / (a * k), k); };
    return static_cast<double>(bisect(f, 1.0L, th));
}

/// k-max search ratio: root in (1, theta] of (theta - 1) = (w - 1)(1 + w/k)^k.
inline double oracle_kmax(int k, double theta)
{
    const long double th = theta;
    auto f = [&](long double w) { return (th - 1) - (w - 1) * std::pow(1 + w / k, k); };
    return static_cast<double>(bisect(f, 1.0L, th));
}

/// Alpha by a sign scan followed by bisection on the denominator-cleared
/// form of the defining equation.
inline double oracle_alpha(int k, double U, double L, double b)
{
    const long double u = U, l = L, bb = b;
    auto f = [&](long double a) {
        return (u - l - 2 * bb) - (u * (1 - 1 / a) - (2 * bb - 2 * bb / k + 2 * bb / (k * a))) *
                                      std::pow(1 + 1 / (k * a), k);
    };
    return static_cast<double>(scan_then_bisect(f));
}

inline double oracle_omega(int k, double U, double L, double b)
{
    const long double u = U, l = L, bb = b;
    auto f = [&](long double w) {
        return (u - l - 2 * bb) - (l * (w - 1) - 2 * bb * (1 - 1.0L / k + w / k)) * std::pow(1 + w / k, k);
    };
    return static_cast<double>(scan_then_bisect(f));
}

/// Objective of a decision vector written out directly from the definition.
inline double direct_objective(const std::vector<double>& prices, const std::vector<std::uint8_t>& x, double beta,
                               Variant variant)
{
    double sum = 0.0;
    int flips = 0;
    int prev = 0;
    for (std::size_t t = 0; t < prices.size(); ++t) {
        sum += prices[t] * x[t];
        flips += x[t] != prev;
        prev = x[t];
    }
    flips += prev != 0;
    return variant == Variant::Min ? sum + beta * flips : sum - beta * flips;
}

struct RandomParams {
    int k;
    double upper;
    double lower;
    double beta;
};

/// Valid (k, U, L, beta) with theta <= max_theta and beta strictly inside
/// the regime of `variant`.
inline RandomParams random_params(std::mt19937_64& rng, Variant variant, int max_k, double max_theta)
{
    std::uniform_int_distribution<int> kd(1, max_k);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RandomParams p{};
    p.k = kd(rng);
    p.lower = 1.0 + 20.0 * unit(rng);
    p.upper = p.lower * (1.05 + (max_theta - 1.05) * unit(rng));
    const double bound = variant == Variant::Min ? (p.upper - p.lower) / 2.0 : p.k * p.lower / 2.0;
    p.beta = bound * (0.01 + 0.97 * unit(rng));
    return p;
}

} // namespace opr::testing

#endif // OPR_TESTS_SUPPORT_HPP
