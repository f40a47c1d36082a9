#pragma once

#include <span>
#include <vector>

#include "bsched/items.hpp"

namespace bsched {

/// Two update rules coexist. Both decay every memory by (1-r) per step; they
/// differ in what a pick deposits:
///   definition -> + r*(1-r)   (closed form M(t) = r * sum_tau x(tau) (1-r)^(t-tau))
///   lemma      -> + r         (recurrence sum M(t+1) = (1-r) sum M(t) + r)
enum class Convention { definition, lemma };

struct MemoryState {
    std::vector<double> memories; ///< one entry per item, each in [0,1]
    long time = 0;
    Convention convention = Convention::definition;
};

/// Zeroed memory over `count` items.
MemoryState initial_memory(std::size_t count, Convention convention);

/// Per-item utilities at the current memories.
struct UtilityVector {
    std::vector<double> values; ///< u_i = v_i - alpha_i * M_i
    std::vector<double> doubled; ///< w_i = v_i - 2 * alpha_i * M_i
};

/// Advances memory by one step in place. `picked` is an item index or kIdle.
void memory_step_inplace(MemoryState& state, int picked, std::span<const Item> items);

/// Pure variant of memory_step_inplace.
MemoryState memory_step(const MemoryState& state, int picked, std::span<const Item> items);

UtilityVector utilities(std::span<const Item> items, const MemoryState& state);

/// Steady-state memory seen at pick time when an item is consumed at frequency
/// f with regular spacing 1/f: r * (1-r)^(1/f) / (1 - (1-r)^(1/f)).
/// Strictly increasing in f; always exceeds r - f.
double steady_memory_delta(double frequency, double decay_rate);

} // namespace bsched
