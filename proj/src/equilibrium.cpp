#include "bsched/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "bsched/errors.hpp"

namespace bsched {

namespace {

// sum_i ((v_i - u) / (m alpha_i))^+, the total share at level u. Non-increasing in u.
double total_share(std::span<const Item> items, int m, double u) {
    double sum = 0.0;
    for (const Item& item : items) {
        const double share = (item.base_utility - u) / (m * item.boredom_coeff);
        if (share > 0.0) {
            sum += share;
        }
    }
    return sum;
}

} // namespace

EquilibriumSolution solve_level_system(std::span<const Item> items, int multiplier) {
    if (items.empty()) {
        throw domain_error("item list is empty");
    }
    if (multiplier != 1 && multiplier != 2) {
        throw domain_error("multiplier must be 1 or 2");
    }
    double max_v = items[0].base_utility;
    double min_v = items[0].base_utility;
    double max_alpha = 0.0;
    for (const Item& item : items) {
        if (!(item.boredom_coeff > 0.0)) {
            throw domain_error("level system requires every boredom coefficient > 0");
        }
        max_v = std::max(max_v, item.base_utility);
        min_v = std::min(min_v, item.base_utility);
        max_alpha = std::max(max_alpha, item.boredom_coeff);
    }

    // total_share(lo) >= max_alpha/alpha_i >= 1 at the argmax-v item, and
    // total_share(max_v) = 0, so the root is bracketed.
    double lo = min_v - multiplier * max_alpha;
    double hi = max_v;
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (total_share(items, multiplier, mid) >= 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    EquilibriumSolution sol;
    sol.multiplier = multiplier;
    sol.level = 0.5 * (lo + hi);
    sol.frequencies.resize(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        const double share = (items[i].base_utility - sol.level) / (multiplier * items[i].boredom_coeff);
        sol.frequencies[i] = share > 0.0 ? share : 0.0;
    }
    double residual = -1.0;
    for (const double f : sol.frequencies) {
        residual += f;
    }
    if (std::abs(residual) > 1e-10) {
        throw numeric_error("level bisection residual " + std::to_string(residual));
    }
    return sol;
}

EquilibriumSolution solve_continuous_optimum(std::span<const Item> items) {
    if (items.empty()) {
        throw domain_error("item list is empty");
    }
    for (const Item& item : items) {
        if (!(item.boredom_coeff >= 0.0)) {
            throw domain_error("boredom coefficients must be >= 0");
        }
    }

    // Shares of the alpha > 0 items at marginal level lambda.
    const auto positive_share_sum = [&items](double lambda) {
        double sum = 0.0;
        for (const Item& item : items) {
            if (item.boredom_coeff > 0.0) {
                const double share = (item.base_utility - lambda) / (2.0 * item.boredom_coeff);
                if (share > 0.0) {
                    sum += share;
                }
            }
        }
        return sum;
    };

    // Best constant marginal among alpha = 0 items; they soak up leftover budget.
    double flat_best = -1.0;
    std::size_t flat_index = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].boredom_coeff == 0.0 && items[i].base_utility > flat_best) {
            flat_best = items[i].base_utility;
            flat_index = i;
        }
    }

    double max_v = items[0].base_utility;
    for (const Item& item : items) {
        max_v = std::max(max_v, item.base_utility);
    }

    EquilibriumSolution sol;
    sol.multiplier = 2;
    sol.frequencies.assign(items.size(), 0.0);

    const double lambda_floor = std::max(0.0, flat_best);
    double lambda = lambda_floor;
    const bool curved_bind = positive_share_sum(lambda_floor) > 1.0;
    if (curved_bind) {
        // The budget binds above the floor; bisect for sum of shares = 1.
        double lo = lambda_floor;
        double hi = max_v;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (positive_share_sum(mid) >= 1.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lambda = 0.5 * (lo + hi);
    }

    double used = 0.0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].boredom_coeff > 0.0) {
            const double share = (items[i].base_utility - lambda) / (2.0 * items[i].boredom_coeff);
            if (share > 0.0) {
                sol.frequencies[i] = share;
                used += share;
            }
        }
    }
    if (!curved_bind && flat_best > 0.0 && used < 1.0) {
        // Strictly positive constant marginal: the leftover goes to the best
        // flat item (lowest index among ties), and lambda sits at its marginal.
        sol.frequencies[flat_index] = 1.0 - used;
    }

    sol.level = lambda;
    double objective = 0.0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        objective += sol.frequencies[i] * (items[i].base_utility - items[i].boredom_coeff * sol.frequencies[i]);
    }
    sol.objective = objective;
    return sol;
}

double opt_upper_bound(std::span<const Item> items) {
    if (items.empty()) {
        throw domain_error("item list is empty");
    }
    double max_alpha = 0.0;
    double max_r = 0.0;
    for (const Item& item : items) {
        max_alpha = std::max(max_alpha, item.boredom_coeff);
        max_r = std::max(max_r, item.decay_rate);
    }
    const EquilibriumSolution opt = solve_continuous_optimum(items);
    return *opt.objective + max_alpha * max_r;
}

} // namespace bsched
