#pragma once

#include <span>
#include <vector>

#include "bsched/items.hpp"

namespace bsched {

/// A repeating choice sequence y(t) with y(t+T) = y(t). Entries are item
/// indices or kIdle.
struct PeriodicSchedule {
    std::vector<int> choices;

    int period() const { return static_cast<int>(choices.size()); }
};

struct PeriodicEvaluation {
    double total = 0.0; ///< utility summed over one period
    double average = 0.0; ///< total / period
    std::vector<double> per_step;
};

/// Utility of one period under cyclic steady-state memory (infinite history of
/// the repeating schedule):
///   M_i(t) = r_i/(1-(1-r_i)^T) * sum over picks s of i of (1-r_i)^d(s,t),
/// where d(s,t) = (t-s) mod T, except d = 0 counts as a full period T — a pick
/// contributes to its own slot only through earlier repetitions, matching
/// utilities measured before the step's own memory deposit.
PeriodicEvaluation periodic_utility(const PeriodicSchedule& schedule, std::span<const Item> items);

struct BruteForceResult {
    PeriodicSchedule schedule;
    double total = 0.0;
    double average = 0.0;
};

/// Hard cap on (n + idle)^T for exhaustive search.
inline constexpr double kBruteForceCapacity = 1e7;

/// Enumerates every period-T schedule and returns the one maximizing total
/// utility; ties go to the lexicographically smallest choice vector (kIdle
/// sorting first). Throws capacity_error when (n + idle)^T exceeds
/// kBruteForceCapacity. Results are identical whether or not OpenMP shards
/// the enumeration.
BruteForceResult brute_force_optimal(std::span<const Item> items, int period, bool allow_idle);

/// Single-threaded reference enumeration; used by tests and the benchmark.
BruteForceResult brute_force_optimal_serial(std::span<const Item> items, int period, bool allow_idle);

/// Best placement of k picks of a single item on a period-T cycle. When k
/// divides T this is the evenly spaced placement; otherwise all C(T,k)
/// placements are tried (capacity_error beyond 1e6 combinations).
BruteForceResult best_k_regular(const Item& item, int period, int k);

} // namespace bsched
