#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bsched/items.hpp"

namespace bsched {

/// Water-filling level and frequency shares for one of the stationary systems.
struct EquilibriumSolution {
    double level = 0.0; ///< common value of v_i - m*alpha_i*f_i on the support
    std::vector<double> frequencies;
    int multiplier = 1; ///< 1 (plain) or 2 (doubled boredom / marginal system)
    std::optional<double> objective; ///< sum f_i (v_i - alpha_i f_i), continuous optimum only
};

/// Solves sum_i ((v_i - u) / (m * alpha_i))^+ = 1 for the unique u by
/// bisection on [min v - m*max alpha, max v]; residual <= 1e-10.
/// Requires every alpha_i > 0 (the share formula divides by alpha).
EquilibriumSolution solve_level_system(std::span<const Item> items, int multiplier);

/// Maximizes sum_i f_i (v_i - alpha_i f_i) subject to f >= 0, sum f <= 1.
/// alpha_i = 0 is allowed (constant marginal v_i). The returned level is the
/// KKT multiplier lambda: v_i - 2 alpha_i f_i = lambda on the support,
/// v_i <= lambda off it, and either sum f = 1 or lambda <= 0.
EquilibriumSolution solve_continuous_optimum(std::span<const Item> items);

/// U* + max_i(alpha_i) * max_i(r_i): certified upper bound on the average
/// utility of any selection sequence.
double opt_upper_bound(std::span<const Item> items);

} // namespace bsched
