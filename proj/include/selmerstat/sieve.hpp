#pragma once

#include <vector>

#include "selmerstat/census.hpp"
#include "selmerstat/rational.hpp"
#include "selmerstat/util.hpp"

namespace selmerstat {

// P(Y) = sum over primes 5 <= p <= Y of #A_p / p^4, as an exact rational.
// Throws std::runtime_error when a census record is missing from the cache.
BigRational p_of_y(u64 Y, const CensusCache& cache);

// P(Y; m) = #{primes 5 <= p <= Y : m mod p^2 is a member}, by direct
// membership tests; global minimality or singularity of m plays no role.
u64 p_of_y_m(i64 a, i64 b, u64 Y);

struct SieveConfig {
    u64 Y = 20;
    u64 box_c = 0;  // strict bound |a| < C
    u64 box_d = 0;  // strict bound |b| < D
    bool exhaustive = false;
    u64 samples = 0;
    u64 seed = 1;
    std::vector<double> betas{1.0, 2.0, 4.0, 8.0};
    bool minimal_only = false;
    bool allow_small_box = false;  // waive the C,D > Y^4 requirement
};

struct BetaBand {
    double beta = 0.0;
    u64 outside = 0;             // samples with |P(Y;m) - P(Y)| >= beta sqrt(P(Y))
    double observed_fraction = 0.0;
    double chebyshev_ceiling = 0.0;  // mean-square ratio / beta^2
};

struct SieveReport {
    u64 Y = 0;
    u64 box_c = 0, box_d = 0;
    bool exhaustive = false;
    bool minimal_only = false;
    u64 seed = 0;
    u64 sample_count = 0;
    BigRational p_y;
    std::string p_y_decimal;

    u64 sum_counts = 0;       // integer aggregates keep the report exact
    u128 sum_sq_counts = 0;
    double empirical_mean = 0.0;
    double empirical_variance = 0.0;   // population variance of P(Y;m)
    double mean_square_ratio = 0.0;    // sum (P(Y;m)-P(Y))^2 / (n P(Y))
    std::vector<BetaBand> bands;

    // Exhaustive grids over complete residue systems only.
    bool exact_mean_available = false;
    bool exact_mean_matches = false;
    BigRational exact_mean;
};

SieveReport run_sieve_experiment(const SieveConfig& config, const CensusCache& cache);

}  // namespace selmerstat
