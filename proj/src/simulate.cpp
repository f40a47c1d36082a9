#include "bsched/simulate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bsched/errors.hpp"

namespace bsched {

SimulationTrace simulate(std::span<const Item> items, const Policy& policy, long horizon,
                         const SimulateOptions& options) {
    validate_items(items);
    if (horizon < 1) {
        throw domain_error("horizon must be >= 1");
    }
    if (options.skip_steps < 0 || options.skip_steps >= horizon) {
        throw domain_error("skip_steps must lie in [0, horizon)");
    }

    MemoryState state = initial_memory(items.size(), options.convention);
    if (!options.initial_memory.empty()) {
        if (options.initial_memory.size() != items.size()) {
            throw domain_error("initial memory size does not match item count");
        }
        state.memories = options.initial_memory;
    }

    SimulationTrace trace;
    trace.horizon = horizon - options.skip_steps;
    trace.pick_counts.assign(items.size(), 0);
    std::vector<double> per_item_sum(items.size(), 0.0);
    double total = 0.0;
    long idle_steps = 0;

    if (options.record_steps) {
        trace.choices.reserve(static_cast<std::size_t>(trace.horizon));
        trace.realized_utilities.reserve(static_cast<std::size_t>(trace.horizon));
        trace.max_utilities.reserve(static_cast<std::size_t>(trace.horizon));
    }

    // Baseline never looks at memory; resolve its pick once.
    const int baseline_pick = policy.kind == PolicyKind::baseline
                                  ? static_cast<int>(argmax_base_utility(items))
                                  : kIdle;

    for (long t = 0; t < horizon; ++t) {
        const UtilityVector u = utilities(items, state);
        const int pick = policy.kind == PolicyKind::baseline ? baseline_pick
                                                             : choose(policy, items, state);
        const double realized = pick == kIdle ? 0.0 : u.values[static_cast<std::size_t>(pick)];

        if (t >= options.skip_steps) {
            total += realized;
            if (pick == kIdle) {
                ++idle_steps;
            } else {
                ++trace.pick_counts[static_cast<std::size_t>(pick)];
                per_item_sum[static_cast<std::size_t>(pick)] += realized;
            }
            if (options.record_steps) {
                double band = u.values[0];
                for (std::size_t i = 1; i < items.size(); ++i) {
                    band = u.values[i] > band ? u.values[i] : band;
                }
                trace.choices.push_back(pick);
                trace.realized_utilities.push_back(realized);
                trace.max_utilities.push_back(band);
            }
            if (options.record_memory) {
                trace.memory_rows.push_back(state.memories);
            }
        }

        memory_step_inplace(state, pick, items);
    }

    const double steps = static_cast<double>(trace.horizon);
    trace.average_utility = total / steps;
    trace.idle_frequency = static_cast<double>(idle_steps) / steps;
    trace.frequencies.resize(items.size());
    trace.per_item_avg_utility.resize(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        trace.frequencies[i] = static_cast<double>(trace.pick_counts[i]) / steps;
        trace.per_item_avg_utility[i] =
            trace.pick_counts[i] > 0 ? per_item_sum[i] / static_cast<double>(trace.pick_counts[i]) : 0.0;
    }
    return trace;
}

std::vector<SimulationTrace> simulate_batch_serial(std::span<const ItemList> instances, const Policy& policy,
                                                   long horizon, const SimulateOptions& options) {
    std::vector<SimulationTrace> out(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        out[i] = simulate(instances[i], policy, horizon, options);
    }
    return out;
}

std::vector<SimulationTrace> simulate_batch(std::span<const ItemList> instances, const Policy& policy,
                                            long horizon, const SimulateOptions& options) {
    std::vector<SimulationTrace> out(instances.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(instances.size()); ++i) {
        out[static_cast<std::size_t>(i)] = simulate(instances[static_cast<std::size_t>(i)], policy, horizon, options);
    }
    return out;
}

std::vector<TraceRow> trace_statistics(const SimulationTrace& trace, std::span<const Item> items) {
    if (trace.frequencies.size() != items.size()) {
        throw domain_error("trace does not match the item list");
    }
    if (trace.horizon < 1) {
        throw domain_error("trace is empty");
    }
    std::vector<TraceRow> rows;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (trace.pick_counts[i] > 0) {
            rows.push_back({items[i].label, trace.per_item_avg_utility[i], trace.frequencies[i]});
        }
    }
    return rows;
}

} // namespace bsched
