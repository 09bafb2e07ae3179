#include "opr/algorithms.hpp"

#include "opr/errors.hpp"

#include <array>
#include <string>
#include <utility>

namespace opr {

namespace {

constexpr std::array<std::pair<PlayerKind, std::string_view>, 6> kKindNames{{
    {PlayerKind::DtprMin, "dtpr-min"},
    {PlayerKind::DtprMax, "dtpr-max"},
    {PlayerKind::CarbonAgnostic, "carbon-agnostic"},
    {PlayerKind::ConstantThreshold, "constant-threshold"},
    {PlayerKind::KSearchMin, "ksearch-min"},
    {PlayerKind::KSearchMax, "ksearch-max"},
}};

} // namespace

std::string_view to_string(PlayerKind kind)
{
    for (const auto& [k, name] : kKindNames)
        if (k == kind)
            return name;
    return "unknown";
}

PlayerKind parse_player_kind(std::string_view text)
{
    for (const auto& [k, name] : kKindNames)
        if (name == text)
            return k;
    throw ParameterError("unknown algorithm '" + std::string(text) + "'");
}

PlayerKind player_kind_for(std::string_view short_name, Variant variant)
{
    const bool min = variant == Variant::Min;
    if (short_name == "dtpr")
        return min ? PlayerKind::DtprMin : PlayerKind::DtprMax;
    if (short_name == "ksearch")
        return min ? PlayerKind::KSearchMin : PlayerKind::KSearchMax;
    if (short_name == "const")
        return PlayerKind::ConstantThreshold;
    if (short_name == "agnostic")
        return PlayerKind::CarbonAgnostic;
    return parse_player_kind(short_name);
}

PlayerConfig player_config(const Instance& inst)
{
    return {inst.k(), inst.horizon(), inst.lower(), inst.upper(), inst.beta(), inst.variant()};
}

ThresholdPlayer::ThresholdPlayer(PlayerKind kind, const PlayerConfig& config)
    : kind_(kind), config_(config)
{
    if (config.k < 1 || config.horizon < config.k)
        throw ParameterError("player requires 1 <= k <= T");
    switch (kind) {
    case PlayerKind::DtprMin:
        if (config.variant != Variant::Min)
            throw ParameterError("dtpr-min needs a min instance");
        family_ = dtpr_min_thresholds(config.k, config.upper, config.lower, config.beta);
        break;
    case PlayerKind::DtprMax:
        if (config.variant != Variant::Max)
            throw ParameterError("dtpr-max needs a max instance");
        family_ = dtpr_max_thresholds(config.k, config.upper, config.lower, config.beta);
        break;
    case PlayerKind::KSearchMin:
    case PlayerKind::KSearchMax: {
        const Variant v = kind == PlayerKind::KSearchMin ? Variant::Min : Variant::Max;
        if (config.variant != v)
            throw ParameterError(std::string(to_string(kind)) + " does not match the instance variant");
        family_ = ksearch_thresholds(config.k, config.upper, config.lower, v);
        break;
    }
    case PlayerKind::ConstantThreshold:
        constant_ = constant_threshold(config.upper, config.lower);
        break;
    case PlayerKind::CarbonAgnostic:
        break;
    }
}

bool ThresholdPlayer::wants(double price) const
{
    const bool min = config_.variant == Variant::Min;
    const std::size_t i = static_cast<std::size_t>(next_unit_ - 1);
    switch (kind_) {
    case PlayerKind::CarbonAgnostic:
        return slot_ <= config_.k;
    case PlayerKind::ConstantThreshold:
        return min ? price <= constant_ : price >= constant_;
    case PlayerKind::KSearchMin:
        return price <= family_->lower[i];
    case PlayerKind::KSearchMax:
        return price >= family_->lower[i];
    case PlayerKind::DtprMin:
        // start a run below l_i, keep it going below u_i
        return price <= (prev_ == 0 ? family_->lower[i] : family_->upper[i]);
    case PlayerKind::DtprMax:
        return price >= (prev_ == 0 ? family_->upper[i] : family_->lower[i]);
    }
    return false;
}

int ThresholdPlayer::step(double price)
{
    if (exhausted())
        throw ProtocolError(name() + ": step after all k units were accepted");
    if (slot_ >= config_.horizon)
        throw ProtocolError(name() + ": step past the horizon T = " + std::to_string(config_.horizon));
    if (!(price >= config_.lower && price <= config_.upper))
        throw ProtocolError(name() + ": price " + std::to_string(price) + " outside [L, U]");

    ++slot_;
    // Units still needed: k - i + 1. Slots left including this one: T - t + 1.
    // Once they are equal every remaining price has to be taken.
    const bool forced = (config_.k - next_unit_) >= (config_.horizon - slot_);
    const int x = (kind_ != PlayerKind::CarbonAgnostic && forced) || wants(price) ? 1 : 0;
    next_unit_ += x;
    prev_ = x;
    return x;
}

std::unique_ptr<OnlinePlayer> make_player(PlayerKind kind, const PlayerConfig& config)
{
    return std::make_unique<ThresholdPlayer>(kind, config);
}

Schedule run_online(OnlinePlayer& player, std::span<const double> prices)
{
    Schedule out;
    out.decisions.reserve(prices.size());
    for (const double c : prices)
        out.decisions.push_back(player.exhausted() ? 0 : static_cast<std::uint8_t>(player.step(c)));
    return out;
}

Schedule run_online(PlayerKind kind, const Instance& inst)
{
    ThresholdPlayer player(kind, player_config(inst));
    return run_online(player, inst.prices());
}

Trace hindsight_trace(PlayerKind kind, const Instance& inst)
{
    Trace out{run_online(kind, inst), {}};
    out.cost = evaluate_schedule(inst, out.schedule);
    return out;
}

} // namespace opr
