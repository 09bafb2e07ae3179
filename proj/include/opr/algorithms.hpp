#ifndef OPR_ALGORITHMS_HPP
#define OPR_ALGORITHMS_HPP

#include "opr/core.hpp"
#include "opr/thresholds.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace opr {

enum class PlayerKind { DtprMin, DtprMax, CarbonAgnostic, ConstantThreshold, KSearchMin, KSearchMax };

std::string_view to_string(PlayerKind kind);
/// Parses the canonical names returned by to_string(PlayerKind).
PlayerKind parse_player_kind(std::string_view text);

/// Maps the short CLI names (dtpr, ksearch, const, agnostic) to the kind
/// matching `variant`.
PlayerKind player_kind_for(std::string_view short_name, Variant variant);

/// What a player knows before the first price arrives.
struct PlayerConfig {
    int k = 1;
    int horizon = 1;
    double lower = 1.0;
    double upper = 1.0;
    double beta = 0.0; ///< switching cost used to build thresholds
    Variant variant = Variant::Min;
};

PlayerConfig player_config(const Instance& inst);

/// Black-box online player: consumes one price per slot and returns an
/// irrevocable decision.
class OnlinePlayer {
public:
    virtual ~OnlinePlayer() = default;

    /// Decision x_t in {0,1} for the next slot. Throws ProtocolError when the
    /// player is exhausted or the horizon has passed.
    virtual int step(double price) = 0;

    /// True once k units have been accepted.
    virtual bool exhausted() const = 0;

    virtual std::string name() const = 0;
};

/// The six shipped players. State follows the double-threshold pseudo code:
/// `next_unit` is the 1-based index of the next unit, `prev` the last
/// decision (0 before the first slot) and `slot` the number of prices seen.
class ThresholdPlayer final : public OnlinePlayer {
public:
    ThresholdPlayer(PlayerKind kind, const PlayerConfig& config);

    int step(double price) override;
    bool exhausted() const override { return next_unit_ > config_.k; }
    std::string name() const override { return std::string(to_string(kind_)); }

    PlayerKind kind() const noexcept { return kind_; }
    int next_unit() const noexcept { return next_unit_; }
    int prev_decision() const noexcept { return prev_; }
    int slot() const noexcept { return slot_; }
    const std::optional<ThresholdFamily>& thresholds() const noexcept { return family_; }

private:
    bool wants(double price) const;

    PlayerKind kind_;
    PlayerConfig config_;
    std::optional<ThresholdFamily> family_;
    double constant_ = 0.0;
    int next_unit_ = 1;
    int prev_ = 0;
    int slot_ = 0;
};

std::unique_ptr<OnlinePlayer> make_player(PlayerKind kind, const PlayerConfig& config);

/// Feeds `prices` to the player; slots after the player is exhausted are 0.
Schedule run_online(OnlinePlayer& player, std::span<const double> prices);

/// Builds a fresh player for `inst` and runs it over the instance prices.
Schedule run_online(PlayerKind kind, const Instance& inst);

struct Trace {
    Schedule schedule;
    CostBreakdown cost;
};

/// run_online followed by evaluate_schedule.
Trace hindsight_trace(PlayerKind kind, const Instance& inst);

} // namespace opr

#endif // OPR_ALGORITHMS_HPP
