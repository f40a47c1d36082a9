#include "bsched/policy.hpp"

#include "bsched/errors.hpp"

namespace bsched {

namespace {

std::size_t argmax(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

} // namespace

int choose(const Policy& policy, std::span<const Item> items, const MemoryState& state) {
    if (items.empty()) {
        throw domain_error("cannot choose from an empty item list");
    }
    switch (policy.kind) {
    case PolicyKind::greedy: {
        const UtilityVector u = utilities(items, state);
        return static_cast<int>(argmax(u.values));
    }
    case PolicyKind::double_greedy: {
        const UtilityVector u = utilities(items, state);
        return static_cast<int>(argmax(u.doubled));
    }
    case PolicyKind::baseline:
        return static_cast<int>(argmax_base_utility(items));
    case PolicyKind::periodic: {
        if (policy.schedule.period() == 0) {
            throw domain_error("periodic policy has an empty schedule");
        }
        const int slot = static_cast<int>(state.time % policy.schedule.period());
        const int pick = policy.schedule.choices[static_cast<std::size_t>(slot)];
        if (pick != kIdle && (pick < 0 || static_cast<std::size_t>(pick) >= items.size())) {
            throw domain_error("schedule entry " + std::to_string(pick) + " out of range");
        }
        return pick;
    }
    case PolicyKind::idle_threshold: {
        const UtilityVector u = utilities(items, state);
        const std::size_t best = argmax(u.values);
        return u.values[best] < policy.idle_level ? kIdle : static_cast<int>(best);
    }
    }
    throw domain_error("unknown policy kind");
}

} // namespace bsched
