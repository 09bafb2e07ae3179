#ifndef OPR_THRESHOLDS_HPP
#define OPR_THRESHOLDS_HPP

#include "opr/core.hpp"

#include <vector>

namespace opr {

/// Per-unit acceptance thresholds of a double-threshold player.
///
/// For the min variant `lower[i]` is the price that must be met to *start* a
/// run (previous slot rejected) and `upper[i]` the price that keeps a run
/// going; for the max variant the roles are mirrored. Both vectors are
/// 0-indexed: `lower[0]` is the threshold of the first unit. The gap
/// `upper[i] - lower[i]` always equals 2*beta.
struct ThresholdFamily {
    Variant variant = Variant::Min;
    int k = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    double ratio = 1.0; ///< alpha (min) or omega (max)
    double price_lower = 0.0;
    double price_upper = 0.0;
    double beta = 0.0;
};

// -- competitive ratios -----------------------------------------------------

/// Competitive ratio of the double-threshold min player: the unique root
/// alpha > 1 of
///
///   (U - L - 2b) / (U(1 - 1/a) - (2b - 2b/k + 2b/(k a))) = (1 + 1/(k a))^k.
///
/// Requires 0 < L <= U and 0 <= beta < (U - L)/2; beta = 0 is always
/// accepted (k-min search). Throws ParameterError / RegimeError.
double solve_alpha(int k, double upper, double lower, double beta);

/// Competitive ratio of the double-threshold max player: the unique root
/// omega > 1 of
///
///   (U - L - 2b) / (L(w - 1) - 2b(1 - 1/k + w/k)) = (1 + w/k)^k.
///
/// Requires 0 < L <= U and 0 <= beta < kL/2.
double solve_omega(int k, double upper, double lower, double beta);

/// Backward error of the alpha equation with the denominator cleared:
/// (N - D q^k) divided by the magnitude of the terms that make up N and
/// D q^k. Scale-free, so it stays meaningful when q^k is huge and D cancels.
double alpha_residual(double alpha, int k, double upper, double lower, double beta);
/// Same for the omega equation.
double omega_residual(double omega, int k, double upper, double lower, double beta);

/// k-min search ratio: root of (1 - 1/theta)/(1 - 1/a) = (1 + 1/(a k))^k.
double ksearch_min_ratio(int k, double theta);
/// k-max search ratio: root of (theta - 1)/(w - 1) = (1 + w/k)^k.
double ksearch_max_ratio(int k, double theta);

// -- closed-form thresholds -------------------------------------------------

/// u_i of the min family for any 1-based index, alpha being the root for
/// these parameters. Index k+1 yields L + 2 beta.
double min_upper_threshold(int index, double alpha, int k, double upper, double lower, double beta);
/// l_i of the max family for any 1-based index, omega being the root.
/// Index k+1 yields U - 2 beta.
double max_lower_threshold(int index, double omega, int k, double upper, double lower, double beta);

ThresholdFamily dtpr_min_thresholds(int k, double upper, double lower, double beta);
ThresholdFamily dtpr_max_thresholds(int k, double upper, double lower, double beta);

/// Reservation prices of k-search, stored with lower == upper.
ThresholdFamily ksearch_thresholds(int k, double upper, double lower, Variant variant);

/// sqrt(L U), the single-unit search threshold.
double constant_threshold(double upper, double lower);

// -- asymptotics -----------------------------------------------------------

/// Principal branch of the Lambert W function, x >= -1/e.
double lambert_w(double x);

enum class Regime { Regime1, Regime2 };

/// Asymptotic approximations of alpha. Regime1: fixed k, closed form.
/// Regime2: k -> infinity, Lambert-W form with c = 2 beta / U.
double asymptotic_alpha(int k, double upper, double lower, double beta, Regime regime);

/// Asymptotic approximations of omega with b = 2 beta / L in [0, k).
/// Regime1: (k^k * k theta / (k - b))^(1/(k+1)).
/// Regime2: W((theta - 1 - b) / e^(1+b)) + 1 + b.
double asymptotic_omega(int k, double upper, double lower, double beta, Regime regime);

} // namespace opr

#endif // OPR_THRESHOLDS_HPP
