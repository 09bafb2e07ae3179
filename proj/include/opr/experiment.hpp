#ifndef OPR_EXPERIMENT_HPP
#define OPR_EXPERIMENT_HPP

#include "opr/algorithms.hpp"
#include "opr/core.hpp"
#include "opr/traces.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace opr {

/// min: alg/opt, max: opt/alg. Throws DegenerateProfitError when a max
/// schedule earns nothing, ParameterError when a min optimum is not positive.
double empirical_cr(const CostBreakdown& alg, const CostBreakdown& opt, Variant variant);

struct Summary {
    double mean = 0.0;
    double p95 = 0.0; ///< nearest rank: the ceil(0.95 n)-th smallest value
    double max = 0.0;
    /// Sorted (ratio, rank / n) pairs.
    std::vector<std::pair<double, double>> cdf;
};

Summary summarize(std::span<const double> ratios);

struct ExperimentConfig {
    Variant variant = Variant::Min;
    TraceDataset trace;
    std::string trace_source; ///< echoed into results, e.g. a path or synthetic spec
    int horizon = 48;
    std::optional<int> k;               ///< default ceil(T / 6)
    std::optional<double> beta;         ///< absolute switching cost
    double beta_fraction = 0.05;        ///< used when `beta` is unset: beta = fraction * U
    double noise = 1.0;
    int trials = 500;
    std::uint64_t seed = 1;
    std::vector<PlayerKind> algorithms;

    int resolved_k() const;
};

struct TrialRecord {
    int index = 0;
    std::uint64_t seed = 0;
    std::size_t offset = 0;
    double lower = 0.0; ///< instance bounds after the widening rule
    double upper = 0.0;
    bool lower_widened = false;
    bool upper_widened = false;
    bool zeros_lifted = false;
    double opt_total = 0.0;
    std::vector<double> ratios; ///< aligned with ExperimentResult::algorithms
};

struct ExperimentResult {
    ExperimentConfig config;
    int k = 0;
    double beta = 0.0;      ///< absolute beta charged in evaluation
    TraceBounds bounds;     ///< trace-wide bounds
    std::vector<PlayerKind> algorithms;
    std::vector<TrialRecord> trials;
    std::vector<Summary> summaries; ///< aligned with `algorithms`
};

/// Per-trial seed: splitmix64 of the master seed mixed with the trial index.
std::uint64_t derive_trial_seed(std::uint64_t master, int trial);

/// Threshold-construction beta: the charged beta clamped just inside the
/// regime (0.999999 (U-L)/2 for min, 0.999999 kL/2 for max).
double effective_beta(Variant variant, int k, double upper, double lower, double beta);

/// Samples `trials` segments, applies noise, runs every algorithm and the
/// offline optimum, and records ratios. A failure on one trial is rethrown
/// with the trial index prepended.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Config echo, per-trial records and per-algorithm summaries as JSON.
void write_results_json(std::ostream& out, const ExperimentResult& result);
/// `algorithm,ratio,cum_prob` rows for every algorithm.
void write_cdf_csv(std::ostream& out, const ExperimentResult& result);

/// Ratio grid over (L, beta). `ratio` is unset where the cell leaves the regime;
/// the marker is `inf` for max and `degenerate` for min.
struct SweepRow {
    double lower = 0.0;
    double beta = 0.0;
    std::optional<double> ratio;
};

struct SweepConfig {
    Variant variant = Variant::Min;
    int k = 1;
    double upper = 1.0;
    double l_min = 1.0;
    double l_max = 1.0;
    double beta_min = 0.0;
    double beta_max = 0.0;
    int steps = 10; ///< grid points per axis (>= 1; 1 uses the minimum only)
};

std::vector<SweepRow> sweep_ratios(const SweepConfig& config);
void write_sweep_csv(std::ostream& out, Variant variant, std::span<const SweepRow> rows);

} // namespace opr

#endif // OPR_EXPERIMENT_HPP
