#include "opr/experiment.hpp"

#include "opr/errors.hpp"
#include "opr/offline.hpp"
#include "opr/thresholds.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

namespace opr {

namespace {

constexpr double kRegimeShrink = 0.999999;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string fmt17(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class E>
[[noreturn]] void rethrow_as(const E&, const std::string& msg)
{
    throw E(msg);
}

// Keeps the error category (and therefore the CLI exit code) while naming
// the trial that failed.
[[noreturn]] void rethrow_with_trial(int trial)
{
    const std::string prefix = "trial " + std::to_string(trial) + ": ";
    try {
        throw;
    } catch (const RegimeError& e) {
        rethrow_as(e, prefix + e.what());
    } catch (const ParameterError& e) {
        rethrow_as(e, prefix + e.what());
    } catch (const DataError& e) {
        throw DataError(prefix + e.what());
    } catch (const DegenerateProfitError& e) {
        rethrow_as(e, prefix + e.what());
    } catch (const FeasibilityError& e) {
        rethrow_as(e, prefix + e.what());
    } catch (const ProtocolError& e) {
        rethrow_as(e, prefix + e.what());
    } catch (const std::exception& e) {
        throw Error(prefix + e.what());
    }
}

} // namespace

double empirical_cr(const CostBreakdown& alg, const CostBreakdown& opt, Variant variant)
{
    if (variant == Variant::Min) {
        if (!(opt.total > 0.0))
            throw ParameterError("min ratio needs a positive optimum");
        return alg.total / opt.total;
    }
    if (!(alg.total > 0.0))
        throw DegenerateProfitError("online profit " + fmt17(alg.total) + " is not positive; ratio undefined");
    return opt.total / alg.total;
}

Summary summarize(std::span<const double> ratios)
{
    if (ratios.empty())
        throw ParameterError("summarize needs at least one ratio");
    std::vector<double> sorted(ratios.begin(), ratios.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();

    Summary s;
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
    s.p95 = sorted[std::max<std::size_t>(rank, 1) - 1];
    s.max = sorted.back();
    s.cdf.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        s.cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / static_cast<double>(n));
    return s;
}

int ExperimentConfig::resolved_k() const
{
    return k ? *k : (horizon + 5) / 6;
}

std::uint64_t derive_trial_seed(std::uint64_t master, int trial)
{
    return splitmix64(splitmix64(master) ^ static_cast<std::uint64_t>(trial));
}

double effective_beta(Variant variant, int k, double upper, double lower, double beta)
{
    const double bound = variant == Variant::Min ? (upper - lower) / 2.0 : k * lower / 2.0;
    if (beta == 0.0 || beta < bound)
        return beta;
    return kRegimeShrink * bound;
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    const int k = config.resolved_k();
    if (config.horizon < 1)
        throw ParameterError("horizon T must be >= 1");
    if (k < 1 || k > config.horizon)
        throw ParameterError("need 1 <= k <= T (k=" + std::to_string(k) + ", T=" + std::to_string(config.horizon) + ")");
    if (config.trials < 1)
        throw ParameterError("trials must be >= 1");
    if (config.algorithms.empty())
        throw ParameterError("no algorithms selected");
    if (!(config.noise >= 1.0))
        throw ParameterError("noise factor must be >= 1");
    if (config.variant == Variant::Min &&
        std::find(config.algorithms.begin(), config.algorithms.end(), PlayerKind::DtprMax) != config.algorithms.end())
        throw ParameterError("dtpr-max cannot run a min experiment");
    if (config.variant == Variant::Max &&
        std::find(config.algorithms.begin(), config.algorithms.end(), PlayerKind::DtprMin) != config.algorithms.end())
        throw ParameterError("dtpr-min cannot run a max experiment");

    ExperimentResult result;
    result.config = config;
    result.k = k;
    result.bounds = trace_bounds(config.trace);
    result.algorithms = config.algorithms;
    if (config.beta) {
        result.beta = *config.beta;
    } else {
        if (!(config.beta_fraction >= 0.0))
            throw ParameterError("beta fraction must be >= 0");
        result.beta = config.beta_fraction * result.bounds.upper;
    }
    if (!(result.beta >= 0.0) || !std::isfinite(result.beta))
        throw ParameterError("beta must be a finite value >= 0");

    const auto& bounds = result.bounds;
    result.trials.reserve(static_cast<std::size_t>(config.trials));
    for (int trial = 0; trial < config.trials; ++trial) {
        try {
            TrialRecord rec;
            rec.index = trial;
            rec.seed = derive_trial_seed(config.seed, trial);
            Segment seg = sample_segment(config.trace, config.horizon, rec.seed);
            rec.offset = seg.offset;
            std::vector<double> prices = apply_noise(seg.values, config.noise, config.trace.kind);

            double smallest_positive = std::numeric_limits<double>::infinity();
            for (const double v : prices)
                if (v > 0.0)
                    smallest_positive = std::min(smallest_positive, v);
            if (!std::isfinite(smallest_positive))
                smallest_positive = bounds.lower;
            for (double& v : prices) {
                if (v <= 0.0) {
                    v = smallest_positive;
                    rec.zeros_lifted = true;
                }
            }
            const auto [lo, hi] = std::minmax_element(prices.begin(), prices.end());
            rec.lower = std::min(bounds.lower, *lo);
            rec.upper = std::max(bounds.upper, *hi);
            rec.lower_widened = rec.lower < bounds.lower;
            rec.upper_widened = rec.upper > bounds.upper;

            const Instance inst(k, rec.lower, rec.upper, result.beta, config.variant, std::move(prices));
            const OfflineSolution opt = dp_optimal(inst);
            rec.opt_total = opt.cost.total;

            PlayerConfig pc = player_config(inst);
            pc.beta = effective_beta(config.variant, k, rec.upper, rec.lower, result.beta);
            rec.ratios.reserve(config.algorithms.size());
            for (const PlayerKind kind : config.algorithms) {
                auto player = make_player(kind, pc);
                const Schedule sched = run_online(*player, inst.prices());
                const CostBreakdown cost = evaluate_schedule(inst, sched);
                rec.ratios.push_back(empirical_cr(cost, opt.cost, config.variant));
            }
            result.trials.push_back(std::move(rec));
        } catch (...) {
            rethrow_with_trial(trial);
        }
    }

    std::vector<double> column(result.trials.size());
    for (std::size_t a = 0; a < result.algorithms.size(); ++a) {
        for (std::size_t t = 0; t < result.trials.size(); ++t)
            column[t] = result.trials[t].ratios[a];
        result.summaries.push_back(summarize(column));
    }
    return result;
}

void write_results_json(std::ostream& out, const ExperimentResult& result)
{
    using nlohmann::ordered_json;
    const auto& cfg = result.config;

    ordered_json algs = ordered_json::array();
    for (const auto kind : result.algorithms)
        algs.push_back(std::string(to_string(kind)));

    ordered_json doc;
    doc["config"] = {
        {"variant", std::string(to_string(cfg.variant))},
        {"trace_source", cfg.trace_source},
        {"region", cfg.trace.region},
        {"trace_kind", std::string(to_string(cfg.trace.kind))},
        {"trace_length", cfg.trace.size()},
        {"T", cfg.horizon},
        {"k", result.k},
        {"beta", result.beta},
        {"beta_fraction", cfg.beta ? ordered_json(nullptr) : ordered_json(cfg.beta_fraction)},
        {"noise", cfg.noise},
        {"trials", cfg.trials},
        {"seed", cfg.seed},
        {"algorithms", algs},
    };
    doc["bounds"] = {
        {"L", result.bounds.lower},
        {"U", result.bounds.upper},
        {"lower_floored", result.bounds.lower_floored},
    };

    ordered_json summaries = ordered_json::object();
    for (std::size_t a = 0; a < result.algorithms.size(); ++a) {
        const auto& s = result.summaries[a];
        summaries[std::string(to_string(result.algorithms[a]))] = {
            {"mean", s.mean}, {"p95", s.p95}, {"max", s.max}};
    }
    doc["summaries"] = summaries;

    ordered_json trials = ordered_json::array();
    for (const auto& rec : result.trials) {
        ordered_json ratios = ordered_json::object();
        for (std::size_t a = 0; a < result.algorithms.size(); ++a)
            ratios[std::string(to_string(result.algorithms[a]))] = rec.ratios[a];
        trials.push_back({
            {"index", rec.index},
            {"seed", rec.seed},
            {"offset", rec.offset},
            {"L", rec.lower},
            {"U", rec.upper},
            {"lower_widened", rec.lower_widened},
            {"upper_widened", rec.upper_widened},
            {"zeros_lifted", rec.zeros_lifted},
            {"opt", rec.opt_total},
            {"ratios", ratios},
        });
    }
    doc["trials"] = trials;
    out << doc.dump(2) << '\n';
}

void write_cdf_csv(std::ostream& out, const ExperimentResult& result)
{
    out << "algorithm,ratio,cum_prob\n";
    for (std::size_t a = 0; a < result.algorithms.size(); ++a)
        for (const auto& [ratio, prob] : result.summaries[a].cdf)
            out << to_string(result.algorithms[a]) << ',' << fmt17(ratio) << ',' << fmt17(prob) << '\n';
}

std::vector<SweepRow> sweep_ratios(const SweepConfig& config)
{
    if (config.k < 1)
        throw ParameterError("k must be >= 1");
    if (config.steps < 1)
        throw ParameterError("steps must be >= 1");
    if (!(config.l_min > 0.0) || !(config.l_max >= config.l_min) || !(config.upper >= config.l_max))
        throw ParameterError("need 0 < l-min <= l-max <= U");
    if (!(config.beta_min >= 0.0) || !(config.beta_max >= config.beta_min))
        throw ParameterError("need 0 <= beta-min <= beta-max");

    const auto axis = [&](double lo, double hi, int i) {
        if (config.steps == 1)
            return lo;
        return i == config.steps - 1 ? hi : lo + (hi - lo) * i / (config.steps - 1);
    };

    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(config.steps) * static_cast<std::size_t>(config.steps));
    for (int bi = 0; bi < config.steps; ++bi) {
        const double beta = axis(config.beta_min, config.beta_max, bi);
        for (int li = 0; li < config.steps; ++li) {
            SweepRow row{axis(config.l_min, config.l_max, li), beta, std::nullopt};
            try {
                row.ratio = config.variant == Variant::Min ? solve_alpha(config.k, config.upper, row.lower, beta)
                                                           : solve_omega(config.k, config.upper, row.lower, beta);
            } catch (const RegimeError&) {
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, Variant variant, std::span<const SweepRow> rows)
{
    const char* marker = variant == Variant::Max ? "inf" : "degenerate";
    out << "L,beta,ratio\n";
    for (const auto& row : rows)
        out << fmt17(row.lower) << ',' << fmt17(row.beta) << ',' << (row.ratio ? fmt17(*row.ratio) : marker) << '\n';
}

} // namespace opr
