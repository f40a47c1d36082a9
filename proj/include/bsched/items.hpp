#pragma once

#include <span>
#include <string>
#include <vector>

namespace bsched {

/// Choice entries are item indices; kIdle consumes nothing and yields utility 0.
inline constexpr int kIdle = -1;

/// One consumable alternative: a fixed base utility that gets discounted by
/// accumulated memory of past consumption.
struct Item {
    std::string label;
    double base_utility = 0.0; ///< v, innate value when memory is zero
    double boredom_coeff = 0.0; ///< alpha, utility lost per unit of memory
    double decay_rate = 0.0; ///< r in (0,1), per-step geometric forgetting
};

using ItemList = std::vector<Item>;

/// Throws domain_error unless every item has finite v, alpha >= 0 and r in (0,1).
void validate_items(std::span<const Item> items);

/// True when all items share one decay rate (several invariants only hold then).
bool uniform_decay(std::span<const Item> items);

/// Index of the item with the highest base utility, ties to the lowest index.
std::size_t argmax_base_utility(std::span<const Item> items);

} // namespace bsched
