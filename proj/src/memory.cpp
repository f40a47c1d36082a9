#include "bsched/memory.hpp"

#include <cmath>

#include "bsched/errors.hpp"

namespace bsched {

MemoryState initial_memory(std::size_t count, Convention convention) {
    MemoryState state;
    state.memories.assign(count, 0.0);
    state.time = 0;
    state.convention = convention;
    return state;
}

void memory_step_inplace(MemoryState& state, int picked, std::span<const Item> items) {
    if (state.memories.size() != items.size()) {
        throw domain_error("memory state has " + std::to_string(state.memories.size()) +
                           " entries for " + std::to_string(items.size()) + " items");
    }
    if (picked != kIdle && (picked < 0 || static_cast<std::size_t>(picked) >= items.size())) {
        throw domain_error("picked index " + std::to_string(picked) + " out of range");
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        state.memories[i] *= 1.0 - items[i].decay_rate;
    }
    if (picked != kIdle) {
        const double r = items[static_cast<std::size_t>(picked)].decay_rate;
        const double deposit = state.convention == Convention::definition ? r * (1.0 - r) : r;
        state.memories[static_cast<std::size_t>(picked)] += deposit;
    }
    ++state.time;
}

MemoryState memory_step(const MemoryState& state, int picked, std::span<const Item> items) {
    MemoryState next = state;
    memory_step_inplace(next, picked, items);
    return next;
}

UtilityVector utilities(std::span<const Item> items, const MemoryState& state) {
    if (state.memories.size() != items.size()) {
        throw domain_error("memory state has " + std::to_string(state.memories.size()) +
                           " entries for " + std::to_string(items.size()) + " items");
    }
    UtilityVector out;
    out.values.resize(items.size());
    out.doubled.resize(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        const double bored = items[i].boredom_coeff * state.memories[i];
        out.values[i] = items[i].base_utility - bored;
        out.doubled[i] = items[i].base_utility - 2.0 * bored;
    }
    return out;
}

double steady_memory_delta(double frequency, double decay_rate) {
    if (!(frequency > 0.0 && frequency <= 1.0)) {
        throw domain_error("frequency must be in (0,1]");
    }
    if (!(decay_rate > 0.0 && decay_rate < 1.0)) {
        throw domain_error("decay rate must be in (0,1)");
    }
    const double q = std::pow(1.0 - decay_rate, 1.0 / frequency);
    return decay_rate * q / (1.0 - q);
}

} // namespace bsched
