#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bsched/items.hpp"
#include "bsched/periodic.hpp"

namespace bsched {

/// Regular Assignment Problem: can items be placed on a cycle so that the
/// consecutive appearances of item i are exactly periods[i] apart? Slots not
/// claimed by any item are filled by a free filler item.
struct RapInstance {
    std::vector<std::int64_t> periods;
};

/// Item-selection instance a RAP instance maps to: a filler item 0 with
/// (v=1, alpha=0) plus, for each period p, an item with v = 2T/p, alpha = 1,
/// r = 1/T, where T is the product of the periods.
struct ReducedInstance {
    std::int64_t cycle_length = 0; ///< T = product of periods
    ItemList items; ///< items[0] is the filler
    double threshold = 0.0; ///< total utility a regular assignment attains
    bool degenerate = false; ///< T = 1 forces r = 1, outside the usual (0,1) range
};

/// Throws capacity_error when the period product would exceed 1e9.
ReducedInstance reduce_rap(const RapInstance& instance);

/// Closed-form total utility of k picks spaced T/k apart on a period-T cycle:
///   k*v - k*alpha * (1-r)^(T/k) / (1 - (1-r)^(T/k)).
/// T/k is a real exponent, so k need not divide T. Memory here is measured
/// without the per-step r weighting; see formula_scale_items.
double regular_placement_utility(double v, double alpha, double r, std::int64_t period, std::int64_t k);

/// Gain of the k-th pick: regular_placement_utility at k minus at k-1.
/// Requires k >= 2. For v in [1, n], alpha = 1, r = 1/T this approaches
/// v - (2k - 3/2) for moderate k, which is what makes the reduction tick.
double regular_placement_gain(double v, double alpha, double r, std::int64_t period, std::int64_t k);

/// Items rescaled so that periodic_utility evaluates them on the same memory
/// scale the closed forms above use: alpha is divided by r, cancelling the
/// per-step r weight that periodic_utility's memory carries.
ItemList formula_scale_items(const ItemList& items);

struct RapFeasibility {
    bool feasible = false;
    std::optional<PeriodicSchedule> witness; ///< entries 0..n over the reduced items
};

/// Exact feasibility by backtracking over phase offsets: "exactly p apart"
/// pins item i to a single residue class c_i mod p_i on the length-T cycle,
/// and classes c_i mod p_i, c_j mod p_j are disjoint iff c_i and c_j differ
/// mod gcd(p_i, p_j). Capacity: T <= 1e6 and at most 8 items.
RapFeasibility rap_feasible(const RapInstance& instance);

} // namespace bsched
