#pragma once

#include <span>

#include "bsched/items.hpp"
#include "bsched/memory.hpp"
#include "bsched/periodic.hpp"

namespace bsched {

enum class PolicyKind {
    greedy, ///< argmax u_i(t)
    double_greedy, ///< argmax w_i(t) = v_i - 2 alpha_i M_i(t)
    baseline, ///< argmax v_i, constant over time
    periodic, ///< follow a fixed schedule
    idle_threshold, ///< greedy, but idle whenever max u_i(t) < level
};

struct Policy {
    PolicyKind kind = PolicyKind::greedy;
    PeriodicSchedule schedule; ///< used by periodic
    double idle_level = 0.0; ///< used by idle_threshold

    static Policy greedy() { return {PolicyKind::greedy, {}, 0.0}; }
    static Policy double_greedy() { return {PolicyKind::double_greedy, {}, 0.0}; }
    static Policy baseline() { return {PolicyKind::baseline, {}, 0.0}; }
    static Policy periodic(PeriodicSchedule s) { return {PolicyKind::periodic, std::move(s), 0.0}; }
    static Policy idle_threshold(double level) { return {PolicyKind::idle_threshold, {}, level}; }
};

/// Next choice under `policy`. Ties always break to the lowest index.
/// Returns kIdle only for idle_threshold and for periodic schedules that
/// contain idle slots. Throws domain_error on an empty item list.
int choose(const Policy& policy, std::span<const Item> items, const MemoryState& state);

} // namespace bsched
