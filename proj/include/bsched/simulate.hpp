#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsched/policy.hpp"

namespace bsched {

struct SimulationTrace {
    long horizon = 0;
    double average_utility = 0.0; ///< sum of realized utilities / horizon
    std::vector<double> frequencies; ///< picks of item i / horizon
    std::vector<double> per_item_avg_utility; ///< mean realized utility when i was picked (0 if never)
    std::vector<long> pick_counts;
    double idle_frequency = 0.0;

    // Per-step records, only filled when requested.
    std::vector<int> choices;
    std::vector<double> realized_utilities; ///< u_{x(t)}(t), measured before the pick's own deposit
    std::vector<double> max_utilities; ///< max_i u_i(t)
    std::vector<std::vector<double>> memory_rows; ///< M(t), only with record_memory
};

struct SimulateOptions {
    Convention convention = Convention::definition;
    bool record_steps = false;
    bool record_memory = false;
    long skip_steps = 0; ///< steps excluded from the aggregates (still simulated)
    std::vector<double> initial_memory; ///< zeros when empty
};

/// Runs choose / record / memory-update in lockstep for `horizon` steps.
/// Realized utility is read from the pre-update memory; the run is fully
/// deterministic. O(n * horizon) time, O(n) memory unless recording.
SimulationTrace simulate(std::span<const Item> items, const Policy& policy, long horizon,
                         const SimulateOptions& options = {});

/// One run per item list, identical results to a serial loop; parallel across
/// runs when OpenMP is available.
std::vector<SimulationTrace> simulate_batch(std::span<const ItemList> instances, const Policy& policy,
                                            long horizon, const SimulateOptions& options = {});

std::vector<SimulationTrace> simulate_batch_serial(std::span<const ItemList> instances, const Policy& policy,
                                                   long horizon, const SimulateOptions& options = {});

struct TraceRow {
    std::string label;
    double avg_utility = 0.0;
    double frequency = 0.0;
};

/// Summary rows (label, per-item average realized utility, frequency),
/// omitting items that were never chosen.
std::vector<TraceRow> trace_statistics(const SimulationTrace& trace, std::span<const Item> items);

} // namespace bsched
