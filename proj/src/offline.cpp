#include "opr/offline.hpp"

#include "opr/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace opr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Choice : std::uint8_t { Reject, Accept };

struct DpCell {
    double best = kInf; ///< optimal signed cost from this state to the end
    Choice choice = Choice::Reject;
};

// C(n, r), saturating once it exceeds `cap`.
std::uint64_t binomial_capped(int n, int r, std::uint64_t cap)
{
    if (r > n - r)
        r = n - r;
    std::uint64_t acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc = acc * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
        if (acc > cap)
            return cap + 1;
    }
    return acc;
}

} // namespace

OfflineSolution dp_optimal(const Instance& inst)
{
    const int horizon = inst.horizon();
    const int k = inst.k();
    const double beta = inst.beta();
    const double sign = inst.variant() == Variant::Min ? 1.0 : -1.0;
    const auto prices = inst.prices();

    // cell(t, used, prev): t in [0, T] slots consumed so far.
    const auto stride = static_cast<std::size_t>(k + 1) * 2;
    std::vector<DpCell> table(static_cast<std::size_t>(horizon + 1) * stride);
    auto cell = [&](int t, int used, int prev) -> DpCell& {
        return table[static_cast<std::size_t>(t) * stride + static_cast<std::size_t>(used) * 2 +
                     static_cast<std::size_t>(prev)];
    };

    cell(horizon, k, 0).best = 0.0;
    cell(horizon, k, 1).best = beta; // x_{T+1} = 0

    for (int t = horizon - 1; t >= 0; --t) {
        const double signed_price = sign * prices[static_cast<std::size_t>(t)];
        for (int used = 0; used <= k; ++used) {
            for (int prev = 0; prev <= 1; ++prev) {
                const double reject = cell(t + 1, used, 0).best + (prev ? beta : 0.0);
                const double accept = used < k ? cell(t + 1, used + 1, 1).best + signed_price +
                                                     (prev ? 0.0 : beta)
                                               : kInf;
                DpCell& c = cell(t, used, prev);
                if (accept < reject) {
                    c.best = accept;
                    c.choice = Choice::Accept;
                } else {
                    c.best = reject;
                    c.choice = Choice::Reject;
                }
            }
        }
    }

    OfflineSolution out;
    out.schedule.decisions.reserve(static_cast<std::size_t>(horizon));
    int used = 0;
    int prev = 0;
    for (int t = 0; t < horizon; ++t) {
        const int x = cell(t, used, prev).choice == Choice::Accept ? 1 : 0;
        out.schedule.decisions.push_back(static_cast<std::uint8_t>(x));
        used += x;
        prev = x;
    }
    out.cost = evaluate_schedule(inst, out.schedule);
    return out;
}

OfflineSolution brute_force_optimal(const Instance& inst, std::uint64_t max_subsets)
{
    const int horizon = inst.horizon();
    const int k = inst.k();
    if (binomial_capped(horizon, k, max_subsets) > max_subsets)
        throw SizeError("brute force over C(" + std::to_string(horizon) + ", " + std::to_string(k) +
                        ") subsets exceeds the guard of " + std::to_string(max_subsets));

    // Decision vectors are visited in ascending lexicographic order, starting
    // from the last k slots, so a strict improvement test keeps the smallest
    // vector on ties.
    std::vector<int> pos(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
        pos[static_cast<std::size_t>(j)] = horizon - k + j;

    Schedule sched;
    sched.decisions.assign(static_cast<std::size_t>(horizon), 0);
    OfflineSolution best;
    bool have = false;
    const bool minimize = inst.variant() == Variant::Min;

    while (true) {
        std::fill(sched.decisions.begin(), sched.decisions.end(), std::uint8_t{0});
        for (const int p : pos)
            sched.decisions[static_cast<std::size_t>(p)] = 1;
        const CostBreakdown cost = evaluate_schedule(inst, sched);
        if (!have || (minimize ? cost.total < best.cost.total : cost.total > best.cost.total)) {
            best.schedule = sched;
            best.cost = cost;
            have = true;
        }

        // Next larger decision vector: move the rightmost position that
        // still has room one slot earlier and pack the rest at the end.
        int j = k - 1;
        while (j >= 0) {
            const int min_here = j == 0 ? 0 : pos[static_cast<std::size_t>(j - 1)] + 1;
            if (pos[static_cast<std::size_t>(j)] > min_here)
                break;
            --j;
        }
        if (j < 0)
            break;
        --pos[static_cast<std::size_t>(j)];
        for (int r = j + 1; r < k; ++r)
            pos[static_cast<std::size_t>(r)] = horizon - k + r;
    }
    return best;
}

} // namespace opr
