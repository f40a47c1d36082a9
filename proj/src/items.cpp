#include "bsched/items.hpp"

#include <cmath>

#include "bsched/errors.hpp"

namespace bsched {

void validate_items(std::span<const Item> items) {
    if (items.empty()) {
        throw domain_error("item list is empty");
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Item& item = items[i];
        if (!std::isfinite(item.base_utility)) {
            throw domain_error("item " + std::to_string(i) + ": base utility must be finite");
        }
        if (!(item.boredom_coeff >= 0.0) || !std::isfinite(item.boredom_coeff)) {
            throw domain_error("item " + std::to_string(i) + ": boredom coefficient must be >= 0");
        }
        if (!(item.decay_rate > 0.0 && item.decay_rate < 1.0)) {
            throw domain_error("item " + std::to_string(i) + ": decay rate must be in (0,1)");
        }
    }
}

bool uniform_decay(std::span<const Item> items) {
    for (const Item& item : items) {
        if (item.decay_rate != items.front().decay_rate) {
            return false;
        }
    }
    return true;
}

std::size_t argmax_base_utility(std::span<const Item> items) {
    if (items.empty()) {
        throw domain_error("item list is empty");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < items.size(); ++i) {
        if (items[i].base_utility > items[best].base_utility) {
            best = i;
        }
    }
    return best;
}

} // namespace bsched
