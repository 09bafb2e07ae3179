#ifndef OPR_CORE_HPP
#define OPR_CORE_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace opr {

enum class Variant { Min, Max };

std::string_view to_string(Variant v);
/// Accepts "min" / "max" (case-sensitive). Throws ParameterError otherwise.
Variant parse_variant(std::string_view text);

/// One problem instance: buy (Min) or sell (Max) k units over the price
/// sequence c_1..c_T, paying beta for every change of decision.
///
/// Construction validates 1 <= k <= T, 0 < L <= U, beta >= 0 and that every
/// price lies in [L, U]; violations throw ParameterError.
class Instance {
public:
    Instance(int k, double lower, double upper, double beta, Variant variant,
             std::vector<double> prices);

    int k() const noexcept { return k_; }
    int horizon() const noexcept { return static_cast<int>(prices_.size()); }
    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double beta() const noexcept { return beta_; }
    Variant variant() const noexcept { return variant_; }
    double theta() const noexcept { return upper_ / lower_; }
    std::span<const double> prices() const noexcept { return prices_; }

private:
    int k_;
    double lower_;
    double upper_;
    double beta_;
    Variant variant_;
    std::vector<double> prices_;
};

/// Decisions x_1..x_T in {0,1}. The boundary x_0 = x_{T+1} = 0 is implicit.
struct Schedule {
    std::vector<std::uint8_t> decisions;

    std::size_t size() const noexcept { return decisions.size(); }
    int accepted() const noexcept;
};

struct CostBreakdown {
    double accepted_sum = 0.0;   ///< sum of c_t x_t
    double switching_cost = 0.0; ///< beta * num_switches
    double total = 0.0;          ///< min: sum + switching, max: sum - switching
    int num_switches = 0;        ///< boundary-inclusive count of 0/1 changes
};

/// Number of decision changes over t = 1..T+1 with x_0 = x_{T+1} = 0.
int count_switches(std::span<const std::uint8_t> decisions);

/// True iff the schedule accepts exactly k slots. Throws StructuralError on a
/// length mismatch.
bool validate_schedule(const Instance& inst, const Schedule& sched);

/// Exact objective of a feasible schedule. Throws FeasibilityError when the
/// schedule does not accept exactly k slots.
CostBreakdown evaluate_schedule(const Instance& inst, const Schedule& sched);

/// c_min (Min) or c_max (Max) of a nonempty sequence.
double extreme_price(std::span<const double> prices, Variant variant);

} // namespace opr

#endif // OPR_CORE_HPP
