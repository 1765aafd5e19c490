#pragma once

#include <string>
#include <vector>

#include "selmerstat/util.hpp"

namespace selmerstat {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::vector<std::string> lines;  // one printable line per verified item
};

// N(t) = H(t^2 - 4p) for all p in [lo, hi], every admissible trace.
CheckResult check_waterhouse_schoof(u64 lo, u64 hi);

// Every anomalous pair with j not in {0,1728} has exactly p member lifts.
CheckResult check_fibers(const std::vector<u64>& primes);

// Exhaustive over pairs mod p^2: rank is always 1 or 2, and rank 2 only over
// anomalous reductions.
CheckResult check_lemma_rank(const std::vector<u64>& primes);

// Division-polynomial membership against the p-adic chord-tangent oracle:
// exhaustive for the listed small primes, seeded samples for the larger ones.
CheckResult check_oracle_equivalence(const std::vector<u64>& exhaustive_primes,
                                     const std::vector<u64>& sampled_primes, u64 samples, u64 seed);

// Computed ratios against the published reference rows.
CheckResult check_table1_rows(u64 max_p);

// sbar double derivation over [lo, hi].
CheckResult check_sbar_double_derivation(u64 lo, u64 hi);

}  // namespace selmerstat
