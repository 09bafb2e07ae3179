#ifndef OPR_OFFLINE_HPP
#define OPR_OFFLINE_HPP

#include "opr/core.hpp"

#include <cstdint>

namespace opr {

struct OfflineSolution {
    Schedule schedule;
    CostBreakdown cost;
};

/// Exact offline optimum by dynamic programming over
/// (slot, units used, previous decision). O(T k) time and memory.
///
/// Among optimal schedules the lexicographically smallest decision vector is
/// returned (reject is preferred on exact ties).
OfflineSolution dp_optimal(const Instance& inst);

/// Exhaustive search over all k-subsets of slots, evaluated with
/// evaluate_schedule. Ties go to the lexicographically smallest vector.
/// Throws SizeError when C(T, k) exceeds `max_subsets`.
OfflineSolution brute_force_optimal(const Instance& inst, std::uint64_t max_subsets = 1'000'000);

} // namespace opr

#endif // OPR_OFFLINE_HPP
