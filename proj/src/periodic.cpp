#include "bsched/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bsched/errors.hpp"

namespace bsched {

namespace {

void validate_schedule(const PeriodicSchedule& schedule, std::size_t item_count) {
    if (schedule.period() < 1) {
        throw domain_error("schedule period must be >= 1");
    }
    for (const int c : schedule.choices) {
        if (c != kIdle && (c < 0 || static_cast<std::size_t>(c) >= item_count)) {
            throw domain_error("schedule entry " + std::to_string(c) + " out of range");
        }
    }
}

// q^0..q^T.
std::vector<double> power_table(double q, int period) {
    std::vector<double> pw(static_cast<std::size_t>(period) + 1);
    pw[0] = 1.0;
    for (int d = 1; d <= period; ++d) {
        pw[static_cast<std::size_t>(d)] = pw[static_cast<std::size_t>(d - 1)] * q;
    }
    return pw;
}

// Incremental enumeration state. Positions are pushed left to right, so every
// new pick is the largest so far; the wrap-around distance T-(t-s) to each
// earlier pick is already known because the period is fixed.
struct Enumerator {
    int period = 0;
    int item_count = 0;
    bool allow_idle = false;
    std::vector<double> base; // v_i
    std::vector<double> discount; // alpha_i * r_i / (1 - q_i^T)
    std::vector<std::vector<double>> powq; // per item, q^0..q^T
    std::vector<std::vector<int>> picks; // per item, positions so far
    std::vector<int> choices;

    double best_total = 0.0;
    bool has_best = false;
    std::vector<int> best_choices;

    Enumerator(std::span<const Item> items, int T, bool idle) : period(T), item_count(static_cast<int>(items.size())), allow_idle(idle) {
        base.reserve(items.size());
        discount.reserve(items.size());
        powq.reserve(items.size());
        picks.resize(items.size());
        for (const Item& item : items) {
            const double q = 1.0 - item.decay_rate;
            base.push_back(item.base_utility);
            powq.push_back(power_table(q, T));
            const double q_period = powq.back()[static_cast<std::size_t>(T)];
            discount.push_back(item.boredom_coeff * item.decay_rate / (1.0 - q_period));
        }
        choices.reserve(static_cast<std::size_t>(T));
    }

    // Totals travel down the recursion by value: every leaf total is the same
    // left-to-right chain of additions no matter how (or where) the subtree is
    // visited, so sharded and serial runs agree bit for bit.
    double push(int value) {
        double gain = 0.0;
        if (value != kIdle) {
            const auto idx = static_cast<std::size_t>(value);
            const int t = static_cast<int>(choices.size());
            double pair_sum = powq[idx][static_cast<std::size_t>(period)];
            for (const int s : picks[idx]) {
                pair_sum += powq[idx][static_cast<std::size_t>(t - s)] +
                            powq[idx][static_cast<std::size_t>(period - (t - s))];
            }
            gain = base[idx] - discount[idx] * pair_sum;
            picks[idx].push_back(t);
        }
        choices.push_back(value);
        return gain;
    }

    void pop(int value) {
        choices.pop_back();
        if (value != kIdle) {
            picks[static_cast<std::size_t>(value)].pop_back();
        }
    }

    void offer_leaf(double total) {
        if (!has_best || total > best_total) {
            best_total = total;
            best_choices = choices;
            has_best = true;
        }
    }

    void run(int depth, double total) {
        if (depth == period) {
            offer_leaf(total);
            return;
        }
        const int first = allow_idle ? kIdle : 0;
        for (int value = first; value < item_count; ++value) {
            const double gain = push(value);
            run(depth + 1, total + gain);
            pop(value);
        }
    }
};

void check_capacity(std::size_t item_count, int period, bool allow_idle) {
    const double branches = static_cast<double>(item_count) + (allow_idle ? 1.0 : 0.0);
    if (std::pow(branches, period) > kBruteForceCapacity) {
        throw capacity_error("search space " + std::to_string(branches) + "^" +
                             std::to_string(period) + " exceeds the 1e7 enumeration bound");
    }
}

BruteForceResult finish(const Enumerator& e, int period) {
    BruteForceResult result;
    result.schedule.choices = e.best_choices;
    result.total = e.best_total;
    result.average = e.best_total / period;
    return result;
}

} // namespace

PeriodicEvaluation periodic_utility(const PeriodicSchedule& schedule, std::span<const Item> items) {
    validate_items(items);
    validate_schedule(schedule, items.size());
    const int period = schedule.period();

    std::vector<std::vector<int>> picks(items.size());
    for (int t = 0; t < period; ++t) {
        const int c = schedule.choices[static_cast<std::size_t>(t)];
        if (c != kIdle) {
            picks[static_cast<std::size_t>(c)].push_back(t);
        }
    }

    PeriodicEvaluation eval;
    eval.per_step.assign(static_cast<std::size_t>(period), 0.0);
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (picks[i].empty()) {
            continue;
        }
        const double q = 1.0 - items[i].decay_rate;
        const std::vector<double> pw = power_table(q, period);
        const double scale = items[i].decay_rate / (1.0 - pw[static_cast<std::size_t>(period)]);
        for (const int t : picks[i]) {
            double occupancy = 0.0;
            for (const int s : picks[i]) {
                int d = (t - s) % period;
                if (d < 0) {
                    d += period;
                }
                if (d == 0) {
                    d = period; // a pick meets itself only one full period back
                }
                occupancy += pw[static_cast<std::size_t>(d)];
            }
            const double memory = scale * occupancy;
            eval.per_step[static_cast<std::size_t>(t)] = items[i].base_utility - items[i].boredom_coeff * memory;
        }
    }
    eval.total = std::accumulate(eval.per_step.begin(), eval.per_step.end(), 0.0);
    eval.average = eval.total / period;
    return eval;
}

BruteForceResult brute_force_optimal_serial(std::span<const Item> items, int period, bool allow_idle) {
    validate_items(items);
    if (period < 1) {
        throw domain_error("period must be >= 1");
    }
    check_capacity(items.size(), period, allow_idle);
    Enumerator e(items, period, allow_idle);
    e.run(0, 0.0);
    return finish(e, period);
}

BruteForceResult brute_force_optimal(std::span<const Item> items, int period, bool allow_idle) {
#ifdef _OPENMP
    validate_items(items);
    if (period < 1) {
        throw domain_error("period must be >= 1");
    }
    check_capacity(items.size(), period, allow_idle);

    const int branches = static_cast<int>(items.size()) + (allow_idle ? 1 : 0);
    // Expand a short prefix so there is enough to shard; below that the serial
    // path is cheaper than spinning up a team.
    int prefix_depth = 0;
    long prefix_count = 1;
    while (prefix_depth < period && prefix_count < 8L * omp_get_max_threads()) {
        prefix_count *= branches;
        ++prefix_depth;
    }
    const double leaves = std::pow(static_cast<double>(branches), period);
    if (prefix_depth == period || leaves < 4096.0) {
        return brute_force_optimal_serial(items, period, allow_idle);
    }

    const int first = allow_idle ? kIdle : 0;
    std::vector<bool> found(static_cast<std::size_t>(prefix_count), false);
    std::vector<double> totals(static_cast<std::size_t>(prefix_count), 0.0);
    std::vector<std::vector<int>> winners(static_cast<std::size_t>(prefix_count));

#pragma omp parallel for schedule(dynamic)
    for (long p = 0; p < prefix_count; ++p) {
        Enumerator e(items, period, allow_idle);
        // Decode prefix p into slot values, most significant slot first, so
        // ascending p enumerates prefixes in lexicographic order.
        long rem = p;
        long radix = prefix_count / branches;
        double prefix_total = 0.0;
        for (int d = 0; d < prefix_depth; ++d) {
            const int value = first + static_cast<int>(rem / radix);
            rem %= radix;
            radix /= branches;
            prefix_total += e.push(value);
        }
        e.run(prefix_depth, prefix_total);
        if (e.has_best) {
            found[static_cast<std::size_t>(p)] = true;
            totals[static_cast<std::size_t>(p)] = e.best_total;
            winners[static_cast<std::size_t>(p)] = std::move(e.best_choices);
        }
    }

    BruteForceResult result;
    bool any = false;
    for (long p = 0; p < prefix_count; ++p) {
        if (!found[static_cast<std::size_t>(p)]) {
            continue;
        }
        if (!any || totals[static_cast<std::size_t>(p)] > result.total) {
            result.total = totals[static_cast<std::size_t>(p)];
            result.schedule.choices = winners[static_cast<std::size_t>(p)];
            any = true;
        }
    }
    result.average = result.total / period;
    return result;
#else
    return brute_force_optimal_serial(items, period, allow_idle);
#endif
}

BruteForceResult best_k_regular(const Item& item, int period, int k) {
    const Item items_array[] = {item};
    const std::span<const Item> items{items_array};
    validate_items(items);
    if (period < 1 || k < 1 || k > period) {
        throw domain_error("placement count must satisfy 1 <= k <= period");
    }

    if (period % k == 0) {
        PeriodicSchedule schedule;
        schedule.choices.assign(static_cast<std::size_t>(period), kIdle);
        const int spacing = period / k;
        for (int j = 0; j < k; ++j) {
            schedule.choices[static_cast<std::size_t>(j * spacing)] = 0;
        }
        const PeriodicEvaluation eval = periodic_utility(schedule, items);
        return {std::move(schedule), eval.total, eval.average};
    }

    if (period > 16) {
        throw capacity_error("irregular placements are only enumerated for periods up to 16");
    }
    double combos = 1.0;
    for (int j = 0; j < k; ++j) {
        combos = combos * (period - j) / (j + 1);
    }
    if (combos > 1e6) {
        throw capacity_error("C(period, k) exceeds the 1e6 placement bound");
    }

    std::vector<int> positions(static_cast<std::size_t>(k));
    std::iota(positions.begin(), positions.end(), 0);
    BruteForceResult best;
    bool has_best = false;
    while (true) {
        PeriodicSchedule schedule;
        schedule.choices.assign(static_cast<std::size_t>(period), kIdle);
        for (const int t : positions) {
            schedule.choices[static_cast<std::size_t>(t)] = 0;
        }
        const PeriodicEvaluation eval = periodic_utility(schedule, items);
        if (!has_best || eval.total > best.total) {
            best = {std::move(schedule), eval.total, eval.average};
            has_best = true;
        }
        // Next combination in lexicographic order.
        int j = k - 1;
        while (j >= 0 && positions[static_cast<std::size_t>(j)] == period - k + j) {
            --j;
        }
        if (j < 0) {
            break;
        }
        ++positions[static_cast<std::size_t>(j)];
        for (int m = j + 1; m < k; ++m) {
            positions[static_cast<std::size_t>(m)] = positions[static_cast<std::size_t>(m - 1)] + 1;
        }
    }
    return best;
}

} // namespace bsched
