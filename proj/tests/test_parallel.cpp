#include <doctest.h>

#include <random>

#include "bsched/linalg.hpp"
#include "bsched/periodic.hpp"
#include "bsched/simulate.hpp"
#include "oracles.hpp"

using namespace bsched;

TEST_CASE("matvec: parallel kernel is bit-identical to the serial reference") {
    std::mt19937_64 rng(3001);
    for (const int n : {3, 64, 200}) {
        Matrix A(n);
        for (double& value : A.a) {
            value = oracle::uniform(rng, -1.0, 1.0);
        }
        std::vector<double> x(static_cast<std::size_t>(n));
        for (double& value : x) {
            value = oracle::uniform(rng, -2.0, 2.0);
        }
        std::vector<double> serial(static_cast<std::size_t>(n));
        std::vector<double> parallel(static_cast<std::size_t>(n));
        matvec_serial(A, x, serial);
        matvec(A, x, parallel);
        CHECK(serial == parallel);
    }
}

TEST_CASE("brute force: sharded enumeration returns the serial result") {
    std::mt19937_64 rng(3002);
    for (int trial = 0; trial < 4; ++trial) {
        const int n = oracle::uniform_int(rng, 2, 3);
        const int period = oracle::uniform_int(rng, 7, 8);
        const bool idle = trial % 2 == 0;
        const ItemList items = oracle::random_items(rng, n, 1.0, 12.0, 0.5, 8.0, oracle::uniform(rng, 0.1, 0.5));
        const BruteForceResult serial = brute_force_optimal_serial(items, period, idle);
        const BruteForceResult parallel = brute_force_optimal(items, period, idle);
        CHECK(serial.total == parallel.total); // exact, same arithmetic per leaf
        CHECK(serial.schedule.choices == parallel.schedule.choices);
    }
}

TEST_CASE("simulate_batch: parallel sweep matches the serial loop") {
    std::mt19937_64 rng(3003);
    std::vector<ItemList> instances;
    for (int i = 0; i < 12; ++i) {
        instances.push_back(oracle::random_items(rng, oracle::uniform_int(rng, 2, 6), 1.0, 15.0,
                                                 0.5, 6.0, oracle::uniform(rng, 0.05, 0.3)));
    }
    const std::vector<SimulationTrace> serial = simulate_batch_serial(instances, Policy::double_greedy(), 3000);
    const std::vector<SimulationTrace> parallel = simulate_batch(instances, Policy::double_greedy(), 3000);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].average_utility == parallel[i].average_utility);
        CHECK(serial[i].frequencies == parallel[i].frequencies);
        CHECK(serial[i].pick_counts == parallel[i].pick_counts);
    }
}
