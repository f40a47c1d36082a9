#include <doctest.h>

#include <cmath>
#include <random>

#include "bsched/errors.hpp"
#include "bsched/memory.hpp"
#include "oracles.hpp"

using namespace bsched;

namespace {

ItemList two_items(double r) {
    return {{"a", 5.0, 2.0, r}, {"b", 7.0, 3.0, r}};
}

} // namespace

TEST_CASE("one-step deposits under both conventions") {
    const ItemList items = two_items(0.1);

    MemoryState lemma = initial_memory(2, Convention::lemma);
    memory_step_inplace(lemma, 0, items);
    CHECK(lemma.memories[0] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(lemma.memories[1] == 0.0);
    CHECK(lemma.time == 1);

    MemoryState definition = initial_memory(2, Convention::definition);
    memory_step_inplace(definition, 0, items);
    CHECK(definition.memories[0] == doctest::Approx(0.09).epsilon(1e-15));
    CHECK(definition.memories[1] == 0.0);
}

TEST_CASE("always picking saturates definition-rule memory at 1-r") {
    const ItemList items = two_items(0.1);
    MemoryState state = initial_memory(2, Convention::definition);
    for (int t = 0; t < 10000; ++t) {
        memory_step_inplace(state, 0, items);
    }
    // Geometric series oracle: sum_{j>=1} r (1-r)^j = 1 - r.
    const double series = oracle::pick_memory_series(0.1, 1.0);
    CHECK(series == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(state.memories[0] == doctest::Approx(series).epsilon(1e-12));
    CHECK(state.memories[1] == 0.0);
}

TEST_CASE("idle decays every memory and deposits nothing") {
    const ItemList items = two_items(0.25);
    MemoryState state = initial_memory(2, Convention::lemma);
    memory_step_inplace(state, 0, items);
    memory_step_inplace(state, 1, items);
    const double a = state.memories[0];
    const double b = state.memories[1];
    memory_step_inplace(state, kIdle, items);
    CHECK(state.memories[0] == doctest::Approx(a * 0.75).epsilon(1e-15));
    CHECK(state.memories[1] == doctest::Approx(b * 0.75).epsilon(1e-15));
}

TEST_CASE("utilities at zero, saturated and boredom-free memory") {
    const ItemList items = {{"The Climb", 12.3, 9.9, 0.097}, {"flat", 4.0, 0.0, 0.1}};
    MemoryState state = initial_memory(2, Convention::definition);

    UtilityVector u = utilities(items, state);
    CHECK(u.values[0] == 12.3);
    CHECK(u.values[1] == 4.0);
    CHECK(u.doubled[0] == 12.3);

    state.memories = {1.0, 0.7};
    u = utilities(items, state);
    CHECK(u.values[0] == doctest::Approx(2.4).epsilon(1e-12));
    CHECK(u.doubled[0] == doctest::Approx(12.3 - 2.0 * 9.9).epsilon(1e-12));
    CHECK(u.values[1] == 4.0); // zero boredom coefficient
}

TEST_CASE("utility never exceeds the base and touches it only at zero memory") {
    const ItemList items = two_items(0.2);
    std::mt19937_64 rng(7);
    MemoryState state = initial_memory(2, Convention::definition);
    for (int step = 0; step < 200; ++step) {
        memory_step_inplace(state, oracle::uniform_int(rng, 0, 1), items);
        const UtilityVector u = utilities(items, state);
        for (std::size_t i = 0; i < items.size(); ++i) {
            CHECK(u.values[i] <= items[i].base_utility + 1e-15);
            if (state.memories[i] > 0.0) {
                CHECK(u.values[i] < items[i].base_utility);
            }
        }
    }
}

TEST_CASE("steady_memory_delta values and properties") {
    // f = 1 collapses to 1 - r.
    CHECK(steady_memory_delta(1.0, 0.3) == doctest::Approx(0.7).epsilon(1e-15));

    // Series oracle at integer spacings.
    CHECK(steady_memory_delta(0.5, 0.1) ==
          doctest::Approx(oracle::pick_memory_series(0.1, 2.0)).epsilon(1e-12));
    CHECK(steady_memory_delta(0.25, 0.1) ==
          doctest::Approx(oracle::pick_memory_series(0.1, 4.0)).epsilon(1e-12));
    CHECK(steady_memory_delta(0.5, 0.1) == doctest::Approx(0.42632).epsilon(1e-4));
    CHECK(steady_memory_delta(0.25, 0.1) == doctest::Approx(0.19078).epsilon(1e-4));

    CHECK_THROWS_AS(steady_memory_delta(0.0, 0.1), domain_error);
    CHECK_THROWS_AS(steady_memory_delta(1.5, 0.1), domain_error);
    CHECK_THROWS_AS(steady_memory_delta(0.5, 1.0), domain_error);

    for (const double r : {0.01, 0.1, 0.5, 0.9}) {
        double previous = 0.0;
        for (double f = 0.05; f <= 1.0; f += 0.05) {
            const double delta = steady_memory_delta(f, r);
            CHECK(delta > previous); // strictly increasing in f
            CHECK(delta >= f - r); // equality only at f = 1
            previous = delta;
        }
    }
}

TEST_CASE("recurrence-rule memories sum to the closed form when always picking") {
    const double r = 0.05;
    ItemList items;
    for (int i = 0; i < 5; ++i) {
        items.push_back({"i" + std::to_string(i), 1.0 + i, 1.0, r});
    }
    std::mt19937_64 rng(11);
    MemoryState state = initial_memory(items.size(), Convention::lemma);
    for (int t = 1; t <= 2000; ++t) {
        memory_step_inplace(state, oracle::uniform_int(rng, 0, 4), items);
        double total = 0.0;
        for (const double m : state.memories) {
            total += m;
        }
        const double closed = 1.0 - std::pow(1.0 - r, t);
        CHECK(total == doctest::Approx(closed).epsilon(1e-12));
        CHECK(total <= 1.0 + 1e-12);
        CHECK(total >= 1.0 - std::exp(-t * r) - 1e-12);
    }
}

TEST_CASE("definition-rule iteration equals the direct closed form") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = oracle::uniform_int(rng, 1, 4);
        ItemList items;
        for (int i = 0; i < n; ++i) {
            items.push_back({"i", 1.0, 1.0, oracle::uniform(rng, 0.02, 0.6)});
        }
        const int length = oracle::uniform_int(rng, 10, 1000);
        std::vector<std::vector<int>> picked(static_cast<std::size_t>(n));
        MemoryState state = initial_memory(items.size(), Convention::definition);
        for (int t = 0; t < length; ++t) {
            const int pick = oracle::uniform_int(rng, -1, n - 1); // occasionally idle
            for (int i = 0; i < n; ++i) {
                picked[static_cast<std::size_t>(i)].push_back(pick == i ? 1 : 0);
            }
            memory_step_inplace(state, pick, items);
        }
        for (int i = 0; i < n; ++i) {
            const double direct = oracle::definition_memory_direct(picked[static_cast<std::size_t>(i)],
                                                                   items[static_cast<std::size_t>(i)].decay_rate);
            CHECK(state.memories[static_cast<std::size_t>(i)] == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("an extra past pick never decreases memory and never leaks across items") {
    std::mt19937_64 rng(31);
    const ItemList items = two_items(0.15);
    for (int trial = 0; trial < 20; ++trial) {
        const int length = oracle::uniform_int(rng, 5, 60);
        std::vector<int> base_picks;
        for (int t = 0; t < length; ++t) {
            base_picks.push_back(oracle::uniform_int(rng, -1, 1));
        }
        const int insert_at = oracle::uniform_int(rng, 0, length - 1);
        std::vector<int> augmented = base_picks;
        augmented[static_cast<std::size_t>(insert_at)] = 0; // force a pick of item 0

        const auto run = [&items](const std::vector<int>& picks) {
            MemoryState state = initial_memory(2, Convention::definition);
            for (const int p : picks) {
                memory_step_inplace(state, p, items);
            }
            return state.memories;
        };
        const std::vector<double> before = run(base_picks);
        const std::vector<double> after = run(augmented);
        CHECK(after[0] >= before[0] - 1e-15);
        if (base_picks[static_cast<std::size_t>(insert_at)] == 1) {
            // We replaced a pick of item 1; its memory may only drop.
            CHECK(after[1] <= before[1] + 1e-15);
        } else {
            CHECK(after[1] == doctest::Approx(before[1]).epsilon(1e-15));
        }
    }
}

TEST_CASE("utility is affine in memory") {
    const ItemList items = two_items(0.2);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        MemoryState m1 = initial_memory(2, Convention::definition);
        MemoryState m2 = initial_memory(2, Convention::definition);
        MemoryState sum = initial_memory(2, Convention::definition);
        for (std::size_t i = 0; i < 2; ++i) {
            m1.memories[i] = oracle::uniform(rng, 0.0, 0.5);
            m2.memories[i] = oracle::uniform(rng, 0.0, 0.5);
            sum.memories[i] = m1.memories[i] + m2.memories[i];
        }
        const MemoryState zero = initial_memory(2, Convention::definition);
        const UtilityVector u1 = utilities(items, m1);
        const UtilityVector u2 = utilities(items, m2);
        const UtilityVector u0 = utilities(items, zero);
        const UtilityVector us = utilities(items, sum);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(u1.values[i] + u2.values[i] - u0.values[i] ==
                  doctest::Approx(us.values[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("structural errors") {
    const ItemList items = two_items(0.1);
    MemoryState state = initial_memory(3, Convention::definition);
    CHECK_THROWS_AS(memory_step_inplace(state, 0, items), domain_error);
    CHECK_THROWS_AS(utilities(items, state), domain_error);

    MemoryState ok = initial_memory(2, Convention::definition);
    CHECK_THROWS_AS(memory_step_inplace(ok, 2, items), domain_error);
    CHECK_THROWS_AS(memory_step_inplace(ok, -2, items), domain_error);

    CHECK_THROWS_AS(validate_items(ItemList{}), domain_error);
    CHECK_THROWS_AS(validate_items(ItemList{{"bad-r", 1.0, 1.0, 1.0}}), domain_error);
    CHECK_THROWS_AS(validate_items(ItemList{{"bad-r", 1.0, 1.0, 0.0}}), domain_error);
    CHECK_THROWS_AS(validate_items(ItemList{{"bad-alpha", 1.0, -0.5, 0.1}}), domain_error);
}
