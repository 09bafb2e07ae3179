#ifndef OPR_ADVERSARY_HPP
#define OPR_ADVERSARY_HPP

#include "opr/algorithms.hpp"
#include "opr/core.hpp"

#include <optional>
#include <vector>

namespace opr {

/// Realized play of an adaptive adversary against one online player.
struct AdversaryTranscript {
    std::vector<double> prices;
    Schedule alg_schedule;
    CostBreakdown alg_cost;
    CostBreakdown opt_cost; ///< dp_optimal on the realized sequence
    double ratio = 1.0;
    int horizon = 0;        ///< horizon the player was configured with
    double target = 1.0;    ///< alpha or omega for the given parameters
    /// 1-based index of the probe the player refused k times, if any.
    std::optional<int> stalled_probe;
};

struct AdversaryOptions {
    /// Probes are moved this fraction of (U - L) toward the rejecting side
    /// (l_i + eps for min, u_i - eps for max). A threshold player with
    /// inclusive comparisons then refuses the probe, which realizes the
    /// eps -> 0 worst case. 0 presents the thresholds exactly.
    double probe_offset = 1e-9;
};

/// Horizon that fits every branch of the adaptive sequence: k(2k+2) + 2k.
int adversary_horizon(int k);

/// Adaptive lower-bound sequence for the min variant, driven purely through
/// the player's step protocol. The player must be configured for
/// adversary_horizon(k) slots and bounds [L, U]. Requires 0 < beta < (U-L)/2.
///
/// For each unit i the probe l_i is shown up to k times. If refused k times
/// the rest of the horizon is U. If accepted, U is shown up to k times or
/// until the player switches away. Once the player holds k units the
/// sequence closes with k copies of L.
AdversaryTranscript adversary_min(OnlinePlayer& player, int k, double upper, double lower, double beta,
                                  const AdversaryOptions& options = {});

/// Mirror construction for the max variant with probes u_i, floods of L and
/// a closing block of U. Requires 0 < beta < kL/2.
AdversaryTranscript adversary_max(OnlinePlayer& player, int k, double upper, double lower, double beta,
                                  const AdversaryOptions& options = {});

/// Builds a shipped player configured for the adversary horizon and runs the
/// adversary matching `variant`.
AdversaryTranscript run_adversary(PlayerKind kind, Variant variant, int k, double upper, double lower,
                                  double beta, const AdversaryOptions& options = {});

} // namespace opr

#endif // OPR_ADVERSARY_HPP
