#include "opr/core.hpp"

#include "opr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace opr {

std::string_view to_string(Variant v)
{
    return v == Variant::Min ? "min" : "max";
}

Variant parse_variant(std::string_view text)
{
    if (text == "min")
        return Variant::Min;
    if (text == "max")
        return Variant::Max;
    throw ParameterError("unknown variant '" + std::string(text) + "' (expected min or max)");
}

Instance::Instance(int k, double lower, double upper, double beta, Variant variant,
                   std::vector<double> prices)
    : k_(k), lower_(lower), upper_(upper), beta_(beta), variant_(variant), prices_(std::move(prices))
{
    if (!(lower > 0.0) || !(upper >= lower) || !std::isfinite(upper))
        throw ParameterError("instance bounds must satisfy 0 < L <= U");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw ParameterError("switching cost beta must be finite and >= 0");
    if (k < 1 || k > horizon())
        throw ParameterError("instance requires 1 <= k <= T (k=" + std::to_string(k) +
                             ", T=" + std::to_string(horizon()) + ")");
    for (std::size_t t = 0; t < prices_.size(); ++t) {
        const double c = prices_[t];
        if (!(c >= lower_ && c <= upper_))
            throw ParameterError("price c_" + std::to_string(t + 1) + " = " + std::to_string(c) +
                                 " lies outside [L, U]");
    }
}

int Schedule::accepted() const noexcept
{
    return static_cast<int>(std::count(decisions.begin(), decisions.end(), std::uint8_t{1}));
}

int count_switches(std::span<const std::uint8_t> decisions)
{
    int switches = 0;
    std::uint8_t prev = 0;
    for (const std::uint8_t x : decisions) {
        switches += (x != prev);
        prev = x;
    }
    return switches + (prev != 0);
}

bool validate_schedule(const Instance& inst, const Schedule& sched)
{
    if (sched.size() != static_cast<std::size_t>(inst.horizon()))
        throw StructuralError("schedule length " + std::to_string(sched.size()) +
                              " does not match horizon " + std::to_string(inst.horizon()));
    return sched.accepted() == inst.k();
}

CostBreakdown evaluate_schedule(const Instance& inst, const Schedule& sched)
{
    if (!validate_schedule(inst, sched))
        throw FeasibilityError("schedule accepts " + std::to_string(sched.accepted()) +
                               " slots, expected k = " + std::to_string(inst.k()));

    CostBreakdown out;
    const auto prices = inst.prices();
    for (std::size_t t = 0; t < prices.size(); ++t)
        if (sched.decisions[t])
            out.accepted_sum += prices[t];
    out.num_switches = count_switches(sched.decisions);
    out.switching_cost = inst.beta() * out.num_switches;
    out.total = inst.variant() == Variant::Min ? out.accepted_sum + out.switching_cost
                                               : out.accepted_sum - out.switching_cost;
    return out;
}

double extreme_price(std::span<const double> prices, Variant variant)
{
    if (prices.empty())
        throw StructuralError("extreme_price of an empty sequence");
    return variant == Variant::Min ? *std::min_element(prices.begin(), prices.end())
                                   : *std::max_element(prices.begin(), prices.end());
}

} // namespace opr
