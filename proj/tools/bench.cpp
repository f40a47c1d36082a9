// Compares the OpenMP kernels against their serial references: influence
// mat-vec, exhaustive schedule enumeration, and batched policy sweeps.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bsched/linalg.hpp"
#include "bsched/periodic.hpp"
#include "bsched/simulate.hpp"

using namespace bsched;

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename F>
double time_ms(F&& body) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel columns degenerate to serial\n");
#endif

    std::mt19937_64 rng(4242);

    {
        const int n = 1200;
        Matrix A(n);
        for (double& value : A.a) {
            value = uniform01(rng);
        }
        std::vector<double> x(static_cast<std::size_t>(n));
        for (double& value : x) {
            value = uniform01(rng);
        }
        std::vector<double> y(static_cast<std::size_t>(n));
        const int reps = 400;
        const double serial_ms = time_ms([&] {
            for (int rep = 0; rep < reps; ++rep) {
                matvec_serial(A, x, y);
            }
        });
        const double parallel_ms = time_ms([&] {
            for (int rep = 0; rep < reps; ++rep) {
                matvec(A, x, y);
            }
        });
        report("matvec n=1200 x400", serial_ms, parallel_ms);
    }

    {
        ItemList items;
        for (int i = 0; i < 3; ++i) {
            items.push_back({"i" + std::to_string(i), 4.0 + i, 1.0 + 0.5 * i, 0.3});
        }
        const int period = 14; // 3^14 schedules, under the enumeration bound
        BruteForceResult serial_result;
        BruteForceResult parallel_result;
        const double serial_ms =
            time_ms([&] { serial_result = brute_force_optimal_serial(items, period, false); });
        const double parallel_ms =
            time_ms([&] { parallel_result = brute_force_optimal(items, period, false); });
        report("bruteforce 3^14", serial_ms, parallel_ms);
        if (serial_result.total != parallel_result.total ||
            serial_result.schedule.choices != parallel_result.schedule.choices) {
            std::printf("MISMATCH between serial and parallel enumeration!\n");
            return 1;
        }
    }

    {
        std::vector<ItemList> instances;
        for (int i = 0; i < 16; ++i) {
            ItemList items;
            for (int j = 0; j < 10; ++j) {
                items.push_back({"x", 2.0 + 10.0 * uniform01(rng), 1.0 + 5.0 * uniform01(rng), 0.05});
            }
            instances.push_back(std::move(items));
        }
        std::vector<SimulationTrace> serial_traces;
        std::vector<SimulationTrace> parallel_traces;
        const double serial_ms = time_ms(
            [&] { serial_traces = simulate_batch_serial(instances, Policy::double_greedy(), 100000); });
        const double parallel_ms =
            time_ms([&] { parallel_traces = simulate_batch(instances, Policy::double_greedy(), 100000); });
        report("simulate 16x100k", serial_ms, parallel_ms);
        for (std::size_t i = 0; i < instances.size(); ++i) {
            if (serial_traces[i].average_utility != parallel_traces[i].average_utility) {
                std::printf("MISMATCH between serial and parallel sweeps!\n");
                return 1;
            }
        }
    }
    return 0;
}
