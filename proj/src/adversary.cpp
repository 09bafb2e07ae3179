#include "opr/adversary.hpp"

#include "opr/errors.hpp"
#include "opr/offline.hpp"
#include "opr/thresholds.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace opr {

namespace {

// Sequence builder that steps the player while it still needs units.
class Session {
public:
    Session(OnlinePlayer& player, int horizon) : player_(player), horizon_(horizon) {}

    int present(double price)
    {
        if (static_cast<int>(prices_.size()) >= horizon_)
            throw ProtocolError("adversary sequence exceeded its horizon");
        prices_.push_back(price);
        const int x = player_.exhausted() ? 0 : player_.step(price);
        if (x != 0 && x != 1)
            throw ProtocolError(player_.name() + " returned a decision outside {0,1}");
        decisions_.push_back(static_cast<std::uint8_t>(x));
        accepted_ += x;
        return x;
    }

    bool done() const { return player_.exhausted(); }
    int length() const { return static_cast<int>(prices_.size()); }
    int accepted() const { return accepted_; }
    std::vector<double>& prices() { return prices_; }
    std::vector<std::uint8_t>& decisions() { return decisions_; }

private:
    OnlinePlayer& player_;
    int horizon_;
    std::vector<double> prices_;
    std::vector<std::uint8_t> decisions_;
    int accepted_ = 0;
};

AdversaryTranscript play(OnlinePlayer& player, Variant variant, int k, double upper, double lower,
                         double beta, const std::vector<double>& probes, double target)
{
    const int horizon = adversary_horizon(k);
    const double worst = variant == Variant::Min ? upper : lower;
    const double best = variant == Variant::Min ? lower : upper;

    Session s(player, horizon);
    std::optional<int> stalled;

    for (int i = 0; i < k && !s.done(); ++i) {
        bool taken = false;
        for (int rep = 0; rep < k && !taken; ++rep)
            taken = s.present(probes[static_cast<std::size_t>(i)]) == 1;
        if (!taken) {
            stalled = i + 1;
            while (s.length() < horizon)
                s.present(worst);
            break;
        }
        // force a switch away; a player that keeps accepting moves on after k
        for (int rep = 0; rep < k && !s.done(); ++rep)
            if (s.present(worst) == 0)
                break;
    }
    if (!stalled)
        for (int rep = 0; rep < k; ++rep)
            s.present(best);

    if (s.accepted() != k)
        throw ProtocolError(player.name() + " accepted " + std::to_string(s.accepted()) + " of " +
                            std::to_string(k) + " units within the adversary horizon");

    AdversaryTranscript out;
    out.horizon = horizon;
    out.target = target;
    out.stalled_probe = stalled;
    out.alg_schedule.decisions = s.decisions();
    out.prices = s.prices();

    const Instance realized(k, lower, upper, beta, variant, out.prices);
    out.alg_cost = evaluate_schedule(realized, out.alg_schedule);
    out.opt_cost = dp_optimal(realized).cost;
    if (variant == Variant::Min)
        out.ratio = out.alg_cost.total / out.opt_cost.total;
    else
        out.ratio = out.alg_cost.total > 0.0 ? out.opt_cost.total / out.alg_cost.total
                                             : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace

int adversary_horizon(int k)
{
    return k * (2 * k + 2) + 2 * k;
}

AdversaryTranscript adversary_min(OnlinePlayer& player, int k, double upper, double lower, double beta,
                                  const AdversaryOptions& options)
{
    if (!(beta > 0.0))
        throw ParameterError("min adversary requires beta > 0");
    const ThresholdFamily fam = dtpr_min_thresholds(k, upper, lower, beta);
    const double eps = options.probe_offset * (upper - lower);
    std::vector<double> probes;
    probes.reserve(fam.lower.size());
    for (const double l : fam.lower)
        probes.push_back(std::clamp(l + eps, lower, upper));
    return play(player, Variant::Min, k, upper, lower, beta, probes, fam.ratio);
}

AdversaryTranscript adversary_max(OnlinePlayer& player, int k, double upper, double lower, double beta,
                                  const AdversaryOptions& options)
{
    if (!(beta > 0.0))
        throw ParameterError("max adversary requires beta > 0");
    const ThresholdFamily fam = dtpr_max_thresholds(k, upper, lower, beta);
    const double eps = options.probe_offset * (upper - lower);
    std::vector<double> probes;
    probes.reserve(fam.upper.size());
    for (const double u : fam.upper)
        probes.push_back(std::clamp(u - eps, lower, upper));
    return play(player, Variant::Max, k, upper, lower, beta, probes, fam.ratio);
}

AdversaryTranscript run_adversary(PlayerKind kind, Variant variant, int k, double upper, double lower,
                                  double beta, const AdversaryOptions& options)
{
    const PlayerConfig cfg{k, adversary_horizon(k), lower, upper, beta, variant};
    ThresholdPlayer player(kind, cfg);
    return variant == Variant::Min ? adversary_min(player, k, upper, lower, beta, options)
                                   : adversary_max(player, k, upper, lower, beta, options);
}

} // namespace opr
