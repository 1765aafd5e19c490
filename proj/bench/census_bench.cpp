// Compares the OpenMP census kernels against their serial references.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>

#include "selmerstat/census.hpp"
#include "selmerstat/sieve.hpp"
#include "selmerstat/util.hpp"

using namespace selmerstat;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& fn) {
    auto start = Clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());

    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");
    for (u64 p : {101ull, 211ull, 307ull}) {
        SpCounts serial_out, parallel_out;
        double serial = time_ms([&] { serial_out = count_sp_reference(p); });
        double parallel = time_ms([&] { parallel_out = count_sp(p); });
        if (serial_out.sp != parallel_out.sp) {
            std::printf("MISMATCH at p=%llu\n", static_cast<unsigned long long>(p));
            return 1;
        }
        std::printf("count_sp p=%-18llu %12.1f %12.1f %7.2fx\n",
                    static_cast<unsigned long long>(p), serial, parallel, serial / parallel);
    }

    for (u64 p : {7ull, 11ull}) {
        ApCounts serial_out, parallel_out;
        double serial = time_ms([&] { serial_out = count_ap_reference(p); });
        double parallel = time_ms([&] { parallel_out = count_ap(p, ApMode::exhaustive); });
        if (serial_out.ap != parallel_out.ap) {
            std::printf("MISMATCH at p=%llu\n", static_cast<unsigned long long>(p));
            return 1;
        }
        std::printf("count_ap exhaustive p=%-6llu %12.1f %12.1f %7.2fx\n",
                    static_cast<unsigned long long>(p), serial, parallel, serial / parallel);
    }

    {
        auto path = std::filesystem::temp_directory_path() / "selmerstat_bench.jsonl";
        std::filesystem::remove(path);
        CensusCache cache(path);
        for (u64 p : primes_in(5, 20)) cache.ensure(p, ApMode::fiber);
        SieveConfig cfg;
        cfg.Y = 20;
        cfg.box_c = 160001;
        cfg.box_d = 160001;
        cfg.samples = 20000;
        cfg.seed = 1;
        SieveReport serial_rep, parallel_rep;
        const int max_threads = omp_get_max_threads();
        omp_set_num_threads(1);
        double serial = time_ms([&] { serial_rep = run_sieve_experiment(cfg, cache); });
        omp_set_num_threads(max_threads);
        double parallel = time_ms([&] { parallel_rep = run_sieve_experiment(cfg, cache); });
        if (serial_rep.sum_counts != parallel_rep.sum_counts) {
            std::printf("MISMATCH in sieve sampling\n");
            return 1;
        }
        std::printf("%-28s %12.1f %12.1f %7.2fx\n", "sieve 2e4 samples Y=20", serial, parallel,
                    serial / parallel);
        std::filesystem::remove(path);
    }
    return 0;
}
