#pragma once

#include <optional>
#include <string>

#include "selmerstat/census.hpp"
#include "selmerstat/util.hpp"

namespace selmerstat {

struct ValueWithError {
    double value = 0.0;
    double error = 0.0;  // certified absolute error bound
};

// zeta(s) by partial sum plus a bracketed integral tail; s >= 2.
ValueWithError zeta_value(unsigned s, double tol = 1e-12);

// zeta(s) - 1 computed directly (no cancellation), absolute error <= tol.
ValueWithError zeta_minus_one(unsigned s, double tol = 1e-12);

// 1 - prod_{i>=1} (1 - p^{1-2i}), truncated once the next factor is within
// 1e-15 of 1; absolute error below 1e-14.
double delaunay_share(u64 p);

struct DensityBoundReport {
    u64 p = 0;
    std::string theorem;       // CLI identifier: "4.4", "4.6" or "4.8"
    std::string census_symbol; // which exact count feeds the leading term
    u64 census_count = 0;
    double census_term = 0.0;
    double delaunay_term = 0.0;
    double tamagawa_term = 0.0;  // zeta(p) - 1
    double e5_term = 0.0;        // rank-1 variant only
    bool e5_heuristic = false;
    double total = 0.0;
    double tail_error = 0.0;
    bool vacuous = false;  // total >= 1 bounds nothing
    std::string disclaimer;
};

// Rank-0 full Selmer bound ("4.4"): zeta(10) sp/p^2 + Delaunay + (zeta(p)-1).
DensityBoundReport bound_selmer_rank0(const PrimeCensusRecord& rec);

// Rank-0 fine Selmer bound ("4.6"): zeta(10) ap/p^4 + Delaunay + (zeta(p)-1).
DensityBoundReport bound_fine_rank0(const PrimeCensusRecord& rec);

// Rank-1 fine Selmer bound ("4.8"): the rank-0 bound plus the phi-defect
// density, defaulting to the 1/(2p) heuristic.
DensityBoundReport bound_fine_rank1(const PrimeCensusRecord& rec, std::optional<double> e5_density);

}  // namespace selmerstat
