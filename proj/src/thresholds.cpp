#include "opr/thresholds.hpp"

#include "opr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

namespace opr {

namespace {

constexpr double kBracketFloor = 1.0 + 1e-12;
constexpr int kBisectionIterations = 200;

void check_bounds(int k, double upper, double lower, double beta)
{
    if (k < 1)
        throw ParameterError("k must be >= 1");
    if (!(lower > 0.0) || !(upper >= lower) || !std::isfinite(upper))
        throw ParameterError("price bounds must satisfy 0 < L <= U");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw ParameterError("beta must be finite and >= 0");
}

// Root of a function that is positive just above 1 and negative for large
// arguments. The upper end starts at 2 and doubles until the sign flips.
double bisect_ratio(const std::function<double(double)>& f)
{
    double lo = kBracketFloor;
    if (f(lo) <= 0.0)
        return lo;
    double hi = 2.0;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw RegimeError("competitive ratio is unbounded for these parameters");
    }
    for (int it = 0; it < kBisectionIterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Alpha equation multiplied through by its denominator.
double alpha_balance(double a, int k, double upper, double lower, double beta)
{
    const double num = upper - lower - 2.0 * beta;
    const double den = upper * (1.0 - 1.0 / a) - 2.0 * beta * (1.0 - 1.0 / k) - 2.0 * beta / (k * a);
    return num - den * std::pow(1.0 + 1.0 / (k * a), k);
}

double omega_balance(double w, int k, double upper, double lower, double beta)
{
    const double num = upper - lower - 2.0 * beta;
    const double den = lower * (w - 1.0) - 2.0 * beta * (1.0 - 1.0 / k + w / k);
    return num - den * std::pow(1.0 + w / k, k);
}

} // namespace

// Residuals are backward errors: N - D q^k scaled by the size of the terms
// before they cancel.

double alpha_residual(double alpha, int k, double upper, double lower, double beta)
{
    const double num = upper - lower - 2.0 * beta;
    const double a = upper * (1.0 - 1.0 / alpha);
    const double b = 2.0 * beta * (1.0 - 1.0 / k + 1.0 / (k * alpha));
    const double qk = std::pow(1.0 + 1.0 / (k * alpha), k);
    const double scale = std::abs(upper) + std::abs(lower) + 2.0 * beta + (std::abs(a) + std::abs(b)) * qk;
    return (num - (a - b) * qk) / scale;
}

double omega_residual(double omega, int k, double upper, double lower, double beta)
{
    const double num = upper - lower - 2.0 * beta;
    const double a = lower * (omega - 1.0);
    const double b = 2.0 * beta * (1.0 - 1.0 / k + omega / k);
    const double qk = std::pow(1.0 + omega / k, k);
    const double scale = std::abs(upper) + std::abs(lower) + 2.0 * beta + (std::abs(a) + std::abs(b)) * qk;
    return (num - (a - b) * qk) / scale;
}

double solve_alpha(int k, double upper, double lower, double beta)
{
    check_bounds(k, upper, lower, beta);
    if (beta > 0.0 && !(2.0 * beta < upper - lower))
        throw RegimeError("min variant requires beta < (U - L)/2 (beta=" + std::to_string(beta) +
                          ", U=" + std::to_string(upper) + ", L=" + std::to_string(lower) +
                          "); above it every run is a single contiguous block");
    return bisect_ratio([=](double a) { return alpha_balance(a, k, upper, lower, beta); });
}

double solve_omega(int k, double upper, double lower, double beta)
{
    check_bounds(k, upper, lower, beta);
    if (!(2.0 * beta < k * lower))
        throw RegimeError("max variant requires beta < kL/2 (beta=" + std::to_string(beta) +
                          ", k=" + std::to_string(k) + ", L=" + std::to_string(lower) +
                          "); the competitive ratio is unbounded otherwise");
    return bisect_ratio([=](double w) { return omega_balance(w, k, upper, lower, beta); });
}

double ksearch_min_ratio(int k, double theta)
{
    if (k < 1 || !(theta >= 1.0) || !std::isfinite(theta))
        throw ParameterError("k-search requires k >= 1 and finite theta >= 1");
    return bisect_ratio([=](double a) {
        return (1.0 - 1.0 / theta) - (1.0 - 1.0 / a) * std::pow(1.0 + 1.0 / (a * k), k);
    });
}

double ksearch_max_ratio(int k, double theta)
{
    if (k < 1 || !(theta >= 1.0) || !std::isfinite(theta))
        throw ParameterError("k-search requires k >= 1 and finite theta >= 1");
    return bisect_ratio([=](double w) { return (theta - 1.0) - (w - 1.0) * std::pow(1.0 + w / k, k); });
}

// The closed forms factor as U - D q^(i-1) (min) and L + D q^(i-1) (max)
// with D the denominator of the ratio equation. At the root D q^k equals
// U - L - 2 beta, and substituting that avoids computing D itself, which
// cancels to far below rounding error once q^k is large.

double min_upper_threshold(int index, double alpha, int k, double upper, double lower, double beta)
{
    return upper - (upper - lower - 2.0 * beta) * std::pow(1.0 + 1.0 / (k * alpha), index - 1 - k);
}

double max_lower_threshold(int index, double omega, int k, double upper, double lower, double beta)
{
    return lower + (upper - lower - 2.0 * beta) * std::pow(1.0 + omega / k, index - 1 - k);
}

ThresholdFamily dtpr_min_thresholds(int k, double upper, double lower, double beta)
{
    ThresholdFamily fam;
    fam.variant = Variant::Min;
    fam.k = k;
    fam.ratio = solve_alpha(k, upper, lower, beta);
    fam.price_lower = lower;
    fam.price_upper = upper;
    fam.beta = beta;
    fam.lower.reserve(k);
    fam.upper.reserve(k);
    for (int i = 1; i <= k; ++i) {
        const double u = min_upper_threshold(i, fam.ratio, k, upper, lower, beta);
        fam.upper.push_back(u);
        fam.lower.push_back(u - 2.0 * beta);
    }
    return fam;
}

ThresholdFamily dtpr_max_thresholds(int k, double upper, double lower, double beta)
{
    ThresholdFamily fam;
    fam.variant = Variant::Max;
    fam.k = k;
    fam.ratio = solve_omega(k, upper, lower, beta);
    fam.price_lower = lower;
    fam.price_upper = upper;
    fam.beta = beta;
    fam.lower.reserve(k);
    fam.upper.reserve(k);
    for (int i = 1; i <= k; ++i) {
        const double l = max_lower_threshold(i, fam.ratio, k, upper, lower, beta);
        fam.lower.push_back(l);
        fam.upper.push_back(l + 2.0 * beta);
    }
    return fam;
}

ThresholdFamily ksearch_thresholds(int k, double upper, double lower, Variant variant)
{
    check_bounds(k, upper, lower, 0.0);
    ThresholdFamily fam;
    fam.variant = variant;
    fam.k = k;
    fam.price_lower = lower;
    fam.price_upper = upper;
    fam.beta = 0.0;
    const double theta = upper / lower;
    fam.ratio = variant == Variant::Min ? ksearch_min_ratio(k, theta) : ksearch_max_ratio(k, theta);
    for (int i = 1; i <= k; ++i) {
        const double phi = variant == Variant::Min ? min_upper_threshold(i, fam.ratio, k, upper, lower, 0.0)
                                                   : max_lower_threshold(i, fam.ratio, k, upper, lower, 0.0);
        fam.lower.push_back(phi);
        fam.upper.push_back(phi);
    }
    return fam;
}

double constant_threshold(double upper, double lower)
{
    check_bounds(1, upper, lower, 0.0);
    return std::sqrt(lower * upper);
}

double lambert_w(double x)
{
    constexpr double inv_e = 1.0 / std::numbers::e;
    if (std::isnan(x) || x < -inv_e)
        throw ParameterError("lambert_w is defined for x >= -1/e on the principal branch");
    if (x == 0.0)
        return 0.0;
    if (x == -inv_e)
        return -1.0;
    if (std::isinf(x))
        return x;

    double w;
    if (x < -0.25) {
        // branch-point series
        const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
        w = -1.0 + p - p * p / 3.0;
    } else if (x < 3.0) {
        w = std::log1p(x);
    } else {
        const double l1 = std::log(x);
        w = l1 - std::log(l1);
    }

    // Newton until the step is at rounding level; the residual alone is a
    // weak test near the branch point where (1 + w) e^w vanishes.
    const double tol = 1e-12 * std::max(1.0, std::abs(x));
    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double deriv = ew * (w + 1.0);
        if (f == 0.0 || deriv == 0.0)
            break;
        double next = w - f / deriv;
        if (next <= -1.0)
            next = 0.5 * (w - 1.0);
        const double step = std::abs(next - w);
        w = next;
        if (std::abs(f) <= tol && step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w)))
            break;
    }
    return w;
}

double asymptotic_alpha(int k, double upper, double lower, double beta, Regime regime)
{
    check_bounds(k, upper, lower, beta);
    if (regime == Regime::Regime1) {
        if (beta > 0.0 && !(2.0 * beta < upper - lower))
            throw ParameterError("Regime-1 approximation requires beta in [0, (U - L)/2)");
        const double kk = k;
        const double b = beta;
        const double num = kk * kk * lower * upper + 2.0 * kk * lower * b + 2.0 * kk * upper * b +
                           4.0 * b * b + kk * kk * b * b;
        const double den = kk * kk * lower * lower + 4.0 * kk * lower * b + 4.0 * b * b;
        return kk * b / (kk * lower + 2.0 * b) + std::sqrt(num / den);
    }
    const double c = 2.0 * beta / upper;
    if (!(c < (upper - lower) / upper) && c > 0.0)
        throw ParameterError("Regime-2 approximation requires c = 2 beta / U in [0, (U - L)/U)");
    const double theta = upper / lower;
    const double arg = (c + 1.0 / theta - 1.0) * std::exp(c) / std::numbers::e;
    return 1.0 / (lambert_w(arg) - c + 1.0);
}

double asymptotic_omega(int k, double upper, double lower, double beta, Regime regime)
{
    check_bounds(k, upper, lower, beta);
    const double b = 2.0 * beta / lower;
    if (!(b < k))
        throw RegimeError("omega approximations require b = 2 beta / L < k");
    const double theta = upper / lower;
    if (regime == Regime::Regime1) {
        const double kk = k;
        // k^k * k theta / (k - b), evaluated in logs to stay finite for large k
        const double log_inner = kk * std::log(kk) + std::log(kk * theta / (kk - b));
        return std::exp(log_inner / (kk + 1.0));
    }
    return lambert_w((theta - 1.0 - b) / std::exp(1.0 + b)) + 1.0 + b;
}

} // namespace opr
