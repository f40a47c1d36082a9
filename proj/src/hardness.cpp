#include "bsched/hardness.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "bsched/errors.hpp"

namespace bsched {

namespace {

std::int64_t checked_period_product(const RapInstance& instance) {
    if (instance.periods.empty()) {
        throw domain_error("period list is empty");
    }
    std::int64_t product = 1;
    for (const std::int64_t p : instance.periods) {
        if (p < 1) {
            throw domain_error("periods must be positive");
        }
        if (product > 1000000000 / p) {
            throw capacity_error("period product exceeds the 1e9 overflow guard");
        }
        product *= p;
    }
    return product;
}

} // namespace

double regular_placement_utility(double v, double alpha, double r, std::int64_t period, std::int64_t k) {
    if (k < 1 || k > period) {
        throw domain_error("placement count must satisfy 1 <= k <= period");
    }
    if (alpha == 0.0) {
        return static_cast<double>(k) * v;
    }
    const double spacing = static_cast<double>(period) / static_cast<double>(k);
    const double w = std::pow(1.0 - r, spacing);
    return static_cast<double>(k) * (v - alpha * w / (1.0 - w));
}

double regular_placement_gain(double v, double alpha, double r, std::int64_t period, std::int64_t k) {
    if (k < 2) {
        throw domain_error("the gain of the k-th pick needs k >= 2");
    }
    return regular_placement_utility(v, alpha, r, period, k) -
           regular_placement_utility(v, alpha, r, period, k - 1);
}

ReducedInstance reduce_rap(const RapInstance& instance) {
    ReducedInstance reduced;
    reduced.cycle_length = checked_period_product(instance);
    const double T = static_cast<double>(reduced.cycle_length);
    const double r = 1.0 / T;
    reduced.degenerate = reduced.cycle_length == 1;

    reduced.items.push_back({"filler", 1.0, 0.0, r});
    for (std::size_t i = 0; i < instance.periods.size(); ++i) {
        const double p = static_cast<double>(instance.periods[i]);
        reduced.items.push_back({"p" + std::to_string(instance.periods[i]) + "#" + std::to_string(i + 1),
                                 2.0 * T / p, 1.0, r});
    }

    // Total a regular assignment attains: every item placed T/p_i times at its
    // exact spacing, remaining slots spent on the filler.
    std::int64_t claimed = 0;
    double threshold = 0.0;
    for (const std::int64_t p : instance.periods) {
        const std::int64_t k = reduced.cycle_length / p;
        claimed += k;
        threshold += regular_placement_utility(2.0 * T / static_cast<double>(p), 1.0, r,
                                               reduced.cycle_length, k);
    }
    threshold += static_cast<double>(reduced.cycle_length - claimed) * 1.0;
    reduced.threshold = threshold;
    return reduced;
}

ItemList formula_scale_items(const ItemList& items) {
    ItemList scaled = items;
    for (Item& item : scaled) {
        item.boredom_coeff /= item.decay_rate;
    }
    return scaled;
}

RapFeasibility rap_feasible(const RapInstance& instance) {
    const std::int64_t cycle = checked_period_product(instance);
    if (cycle > 1000000) {
        throw capacity_error("cycle length exceeds the 1e6 feasibility bound");
    }
    if (instance.periods.size() > 8) {
        throw capacity_error("feasibility search supports at most 8 items");
    }

    const std::size_t n = instance.periods.size();
    std::vector<std::int64_t> offsets(n, 0);

    // Item i occupies the residue class offsets[i] mod periods[i]; two classes
    // are disjoint iff the offsets differ modulo gcd of the periods.
    const auto compatible = [&](std::size_t i, std::size_t j) {
        const std::int64_t g = std::gcd(instance.periods[i], instance.periods[j]);
        return (offsets[i] - offsets[j]) % g != 0;
    };

    const std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == n) {
            return true;
        }
        for (std::int64_t c = 0; c < instance.periods[i]; ++c) {
            offsets[i] = c;
            bool ok = true;
            for (std::size_t j = 0; j < i; ++j) {
                if (!compatible(i, j)) {
                    ok = false;
                    break;
                }
            }
            if (ok && place(i + 1)) {
                return true;
            }
        }
        return false;
    };

    RapFeasibility result;
    result.feasible = place(0);
    if (result.feasible) {
        PeriodicSchedule witness;
        witness.choices.assign(static_cast<std::size_t>(cycle), 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::int64_t t = offsets[i]; t < cycle; t += instance.periods[i]) {
                witness.choices[static_cast<std::size_t>(t)] = static_cast<int>(i + 1);
            }
        }
        result.witness = std::move(witness);
    }
    return result;
}

} // namespace bsched
