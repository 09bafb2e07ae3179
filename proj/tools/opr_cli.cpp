// Command-line front end: solve, sweep, simulate, adversary, synth.
//
// Exit codes: 0 success, 2 parameter or regime error, 3 input-data error,
// 1 anything else.

#include "opr/adversary.hpp"
#include "opr/errors.hpp"
#include "opr/experiment.hpp"
#include "opr/thresholds.hpp"
#include "opr/traces.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitParameter = 2;
constexpr int kExitData = 3;

struct CommonParams {
    std::string variant = "min";
    int k = 1;
    double upper = 0.0;
    double lower = 0.0;
    double beta = 0.0;
};

void add_common(CLI::App* cmd, CommonParams& p, bool with_lower)
{
    cmd->add_option("--variant", p.variant, "min or max")->check(CLI::IsMember({"min", "max"}));
    cmd->add_option("--k", p.k, "number of units")->required();
    cmd->add_option("--u", p.upper, "upper price bound U")->required();
    if (with_lower) {
        cmd->add_option("--l", p.lower, "lower price bound L")->required();
        cmd->add_option("--beta", p.beta, "switching cost")->required();
    }
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw opr::ParameterError("cannot write " + path);
    return out;
}

int run_solve(const CommonParams& p, bool json)
{
    const auto variant = opr::parse_variant(p.variant);
    const auto family = variant == opr::Variant::Min ? opr::dtpr_min_thresholds(p.k, p.upper, p.lower, p.beta)
                                                     : opr::dtpr_max_thresholds(p.k, p.upper, p.lower, p.beta);
    if (json) {
        nlohmann::ordered_json doc;
        doc["variant"] = p.variant;
        doc["k"] = p.k;
        doc["U"] = p.upper;
        doc["L"] = p.lower;
        doc["beta"] = p.beta;
        doc["ratio"] = family.ratio;
        auto rows = nlohmann::ordered_json::array();
        for (int i = 0; i < family.k; ++i)
            rows.push_back({{"i", i + 1}, {"lower", family.lower[i]}, {"upper", family.upper[i]}});
        doc["thresholds"] = rows;
        std::cout << doc.dump(2) << '\n';
        return 0;
    }
    std::cout << (variant == opr::Variant::Min ? "alpha" : "omega") << " = " << num(family.ratio) << '\n';
    std::cout << "i,lower,upper\n";
    for (int i = 0; i < family.k; ++i)
        std::cout << i + 1 << ',' << num(family.lower[i]) << ',' << num(family.upper[i]) << '\n';
    return 0;
}

int run_sweep(const opr::SweepConfig& cfg, const std::string& out_path)
{
    const auto rows = opr::sweep_ratios(cfg);
    if (out_path.empty() || out_path == "-") {
        opr::write_sweep_csv(std::cout, cfg.variant, rows);
    } else {
        auto out = open_output(out_path);
        opr::write_sweep_csv(out, cfg.variant, rows);
    }
    return 0;
}

struct SimulateParams {
    std::string variant = "min";
    std::string trace_path;
    std::string synthetic;
    std::string kind;
    bool irregular = false;
    int horizon = 48;
    std::optional<int> k;
    std::optional<double> beta;
    double beta_fraction = 0.05;
    double noise = 1.0;
    int trials = 500;
    std::uint64_t seed = 1;
    std::string algs = "dtpr,ksearch,const,agnostic";
    std::string out;
    std::string cdf;
};

std::vector<opr::PlayerKind> parse_algorithms(const std::string& list, opr::Variant variant)
{
    std::vector<opr::PlayerKind> kinds;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            kinds.push_back(opr::player_kind_for(item, variant));
    return kinds;
}

int run_simulate(const SimulateParams& p)
{
    opr::ExperimentConfig cfg;
    cfg.variant = opr::parse_variant(p.variant);
    const auto default_kind = cfg.variant == opr::Variant::Min ? opr::TraceKind::Intensity : opr::TraceKind::CarbonFreePct;
    const auto kind = p.kind.empty() ? default_kind : opr::parse_trace_kind(p.kind);
    if (!p.trace_path.empty()) {
        cfg.trace = opr::parse_trace_file(p.trace_path, {kind, !p.irregular});
        cfg.trace_source = p.trace_path;
    } else {
        auto spec = opr::parse_synthetic_spec(p.synthetic);
        if (!p.kind.empty())
            spec.kind = kind;
        cfg.trace = opr::generate_synthetic_trace(spec);
        cfg.trace_source = "synthetic:" + p.synthetic;
    }
    cfg.horizon = p.horizon;
    cfg.k = p.k;
    cfg.beta = p.beta;
    cfg.beta_fraction = p.beta_fraction;
    cfg.noise = p.noise;
    cfg.trials = p.trials;
    cfg.seed = p.seed;
    cfg.algorithms = parse_algorithms(p.algs, cfg.variant);

    const auto result = opr::run_experiment(cfg);
    if (p.out.empty() || p.out == "-") {
        opr::write_results_json(std::cout, result);
    } else {
        auto out = open_output(p.out);
        opr::write_results_json(out, result);
        std::cout << "algorithm,mean,p95,max\n";
        for (std::size_t a = 0; a < result.algorithms.size(); ++a) {
            const auto& s = result.summaries[a];
            std::cout << opr::to_string(result.algorithms[a]) << ',' << num(s.mean) << ',' << num(s.p95) << ','
                      << num(s.max) << '\n';
        }
    }
    if (!p.cdf.empty()) {
        auto out = open_output(p.cdf);
        opr::write_cdf_csv(out, result);
    }
    return 0;
}

int run_adversary_cmd(const CommonParams& p, const std::string& alg, double probe_offset, const std::string& dump)
{
    const auto variant = opr::parse_variant(p.variant);
    const auto kind = opr::player_kind_for(alg, variant);
    opr::AdversaryOptions options;
    options.probe_offset = probe_offset;
    const auto tr = opr::run_adversary(kind, variant, p.k, p.upper, p.lower, p.beta, options);
    std::cout << "algorithm = " << opr::to_string(kind) << '\n'
              << "ratio = " << num(tr.ratio) << '\n'
              << (variant == opr::Variant::Min ? "alpha" : "omega") << " = " << num(tr.target) << '\n'
              << "alg_total = " << num(tr.alg_cost.total) << '\n'
              << "opt_total = " << num(tr.opt_cost.total) << '\n'
              << "length = " << tr.prices.size() << '\n';
    if (tr.stalled_probe)
        std::cout << "stalled_probe = " << *tr.stalled_probe << '\n';
    if (!dump.empty()) {
        auto out = open_output(dump);
        out << "t,price,alg\n";
        char buf[64];
        for (std::size_t t = 0; t < tr.prices.size(); ++t) {
            std::snprintf(buf, sizeof buf, "%.17g", tr.prices[t]);
            out << t + 1 << ',' << buf << ',' << int(tr.alg_schedule.decisions[t]) << '\n';
        }
    }
    return 0;
}

int run_synth(const std::string& spec_text, const std::string& out_path)
{
    const auto ds = opr::generate_synthetic_trace(opr::parse_synthetic_spec(spec_text));
    if (out_path.empty() || out_path == "-") {
        opr::write_trace(std::cout, ds);
    } else {
        auto out = open_output(out_path);
        opr::write_trace(out, ds);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Online pause-and-resume: thresholds, offline optimum, adversaries and trace experiments"};
    app.require_subcommand(1);

    CommonParams solve_p;
    bool solve_json = false;
    auto* solve = app.add_subcommand("solve", "competitive ratio and threshold table");
    add_common(solve, solve_p, true);
    solve->add_flag("--json", solve_json, "emit JSON");

    opr::SweepConfig sweep_cfg;
    std::string sweep_variant = "min";
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "ratio grid over (L, beta)");
    sweep->add_option("--variant", sweep_variant)->check(CLI::IsMember({"min", "max"}));
    sweep->add_option("--k", sweep_cfg.k)->required();
    sweep->add_option("--u", sweep_cfg.upper)->required();
    sweep->add_option("--l-min", sweep_cfg.l_min)->required();
    sweep->add_option("--l-max", sweep_cfg.l_max)->required();
    sweep->add_option("--beta-min", sweep_cfg.beta_min)->required();
    sweep->add_option("--beta-max", sweep_cfg.beta_max)->required();
    sweep->add_option("--steps", sweep_cfg.steps, "grid points per axis")->capture_default_str();
    sweep->add_option("--out", sweep_out, "CSV path (stdout if omitted)");

    SimulateParams sim;
    auto* simulate = app.add_subcommand("simulate", "trace-driven experiment");
    simulate->add_option("--variant", sim.variant)->check(CLI::IsMember({"min", "max"}));
    auto* trace_opt = simulate->add_option("--trace", sim.trace_path, "trace CSV");
    auto* synth_opt = simulate->add_option("--synthetic", sim.synthetic, "synthetic spec, e.g. period=24,amp=30,mean=100,seed=1");
    trace_opt->excludes(synth_opt);
    simulate->add_option("--kind", sim.kind, "intensity or carbon_free_pct (default follows the variant)");
    simulate->add_flag("--allow-irregular", sim.irregular, "accept non-hourly timestamp steps in --trace");
    simulate->add_option("--t-horizon", sim.horizon)->capture_default_str();
    simulate->add_option("--k", sim.k, "units (default ceil(T/6))");
    auto* beta_opt = simulate->add_option("--beta", sim.beta, "absolute switching cost");
    simulate->add_option("--beta-frac", sim.beta_fraction, "switching cost as a fraction of U")
        ->excludes(beta_opt)
        ->capture_default_str();
    simulate->add_option("--noise", sim.noise)->capture_default_str();
    simulate->add_option("--trials", sim.trials)->capture_default_str();
    simulate->add_option("--seed", sim.seed)->capture_default_str();
    simulate->add_option("--algs", sim.algs)->capture_default_str();
    simulate->add_option("--out", sim.out, "results JSON (stdout if omitted)");
    simulate->add_option("--cdf", sim.cdf, "CDF CSV");

    CommonParams adv_p;
    std::string adv_alg = "dtpr";
    std::string adv_dump;
    double adv_offset = opr::AdversaryOptions{}.probe_offset;
    auto* adversary = app.add_subcommand("adversary", "run the adaptive lower-bound adversary");
    add_common(adversary, adv_p, true);
    adversary->add_option("--alg", adv_alg)->capture_default_str();
    adversary->add_option("--probe-offset", adv_offset, "probe nudge as a fraction of U - L")->capture_default_str();
    adversary->add_option("--dump-sequence", adv_dump, "CSV of the realized sequence");

    std::string synth_spec;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "write a synthetic diurnal trace");
    synth->add_option("--spec", synth_spec, "e.g. period=24,amp=30,mean=100,noise=5,weather=5,rho=0.98,hours=4000,seed=1")
        ->required();
    synth->add_option("--out", synth_out, "trace CSV (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParameter;
    }

    try {
        if (*solve)
            return run_solve(solve_p, solve_json);
        if (*sweep) {
            sweep_cfg.variant = opr::parse_variant(sweep_variant);
            return run_sweep(sweep_cfg, sweep_out);
        }
        if (*simulate) {
            if (sim.trace_path.empty() && sim.synthetic.empty())
                throw opr::ParameterError("simulate needs --trace or --synthetic");
            return run_simulate(sim);
        }
        if (*synth)
            return run_synth(synth_spec, synth_out);
        return run_adversary_cmd(adv_p, adv_alg, adv_offset, adv_dump);
    } catch (const opr::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const opr::RegimeError& e) {
        std::cerr << "regime error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const opr::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const opr::DegenerateProfitError& e) {
        std::cerr << "regime error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
