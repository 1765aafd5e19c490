#include "selmerstat/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "selmerstat/curve.hpp"
#include "selmerstat/errors.hpp"
#include "selmerstat/global.hpp"
#include "selmerstat/lift.hpp"

namespace selmerstat {

BigRational p_of_y(u64 Y, const CensusCache& cache) {
    BigRational total;
    for (u64 p : primes_in(5, Y)) {
        auto rec = cache.lookup(p);
        if (!rec) {
            throw std::runtime_error("p_of_y: census record missing for p=" + std::to_string(p));
        }
        BigInt p4 = BigInt(p) * p * p * p;
        total = total.add(BigRational(BigInt(rec->ap), p4));
    }
    return total;
}

u64 p_of_y_m(i64 a, i64 b, u64 Y) {
    if (Y < 5) return 0;
    u64 count = 0;
    for (u64 p : primes_in(5, Y)) {
        const u64 p2 = p * p;
        if (is_in_Ap(mod_signed(a, p2), mod_signed(b, p2), p)) ++count;
    }
    return count;
}

namespace {

// Per-prime context: the anomalous locus mod p as a byte table, so only the
// rare anomalous reductions pay for a lift test.
struct PrimeCtx {
    u64 p = 0;
    u64 p2 = 0;
    std::vector<unsigned char> anomalous;  // indexed a*p + b
};

std::vector<PrimeCtx> build_contexts(u64 Y) {
    const auto primes = primes_in(5, Y);
    std::vector<PrimeCtx> ctxs(primes.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const u64 p = primes[i];
        PrimeCtx ctx;
        ctx.p = p;
        ctx.p2 = p * p;
        ctx.anomalous.assign(p * p, 0);
        const auto chi = chi_table(p);
        for (u64 a = 0; a < p; ++a) {
            for (u64 b = 0; b < p; ++b) {
                if (discriminant_mod(a, b, p) != 0 &&
                    count_points_tab(a, b, p, chi.data()) % p == 0) {
                    ctx.anomalous[a * p + b] = 1;
                }
            }
        }
        ctxs[i] = std::move(ctx);
    }
    return ctxs;
}

u64 count_for_pair(i64 a, i64 b, const std::vector<PrimeCtx>& ctxs) {
    u64 count = 0;
    for (const auto& ctx : ctxs) {
        const u64 ar = mod_signed(a, ctx.p), br = mod_signed(b, ctx.p);
        if (!ctx.anomalous[ar * ctx.p + br]) continue;
        if (rank_mod_p_squared(mod_signed(a, ctx.p2), mod_signed(b, ctx.p2), ctx.p).rank == 2) {
            ++count;
        }
    }
    return count;
}

void validate_config(const SieveConfig& cfg) {
    if (cfg.Y < 5) throw std::invalid_argument("sieve: Y must be at least 5");
    if (cfg.box_c == 0 || cfg.box_d == 0) throw std::invalid_argument("sieve: box bounds required");
    if (cfg.betas.empty()) throw std::invalid_argument("sieve: at least one beta required");
    if (!cfg.exhaustive) {
        if (cfg.samples == 0) throw std::invalid_argument("sieve: sample count must be positive");
        const u128 y4 = static_cast<u128>(cfg.Y) * cfg.Y * cfg.Y * cfg.Y;
        if (!cfg.allow_small_box &&
            (static_cast<u128>(cfg.box_c) <= y4 || static_cast<u128>(cfg.box_d) <= y4)) {
            throw std::invalid_argument("sieve: box requires C, D > Y^4 (or the explicit override)");
        }
    } else {
        u128 lcm = 1;
        for (u64 p : primes_in(5, cfg.Y)) lcm *= static_cast<u128>(p) * p;
        const u128 side_a = 2 * static_cast<u128>(cfg.box_c) - 1;
        const u128 side_b = 2 * static_cast<u128>(cfg.box_d) - 1;
        if (side_a % lcm != 0 || side_b % lcm != 0) {
            throw std::invalid_argument(
                "sieve: exhaustive box sides 2C-1, 2D-1 must be multiples of the product of p^2 "
                "over primes in scope");
        }
        if (side_a * side_b > (1u << 26)) {
            throw std::invalid_argument("sieve: exhaustive grid too large (over 2^26 cells)");
        }
    }
}

}  // namespace

SieveReport run_sieve_experiment(const SieveConfig& cfg, const CensusCache& cache) {
    validate_config(cfg);

    SieveReport rep;
    rep.Y = cfg.Y;
    rep.box_c = cfg.box_c;
    rep.box_d = cfg.box_d;
    rep.exhaustive = cfg.exhaustive;
    rep.minimal_only = cfg.minimal_only;
    rep.seed = cfg.seed;
    rep.p_y = p_of_y(cfg.Y, cache);
    rep.p_y_decimal = rep.p_y.decimal(15);

    const auto ctxs = build_contexts(cfg.Y);

    std::vector<u32> counts;
    if (cfg.exhaustive) {
        const i64 side_a = 2 * static_cast<i64>(cfg.box_c) - 1;
        const i64 side_b = 2 * static_cast<i64>(cfg.box_d) - 1;
        const i64 a0 = -(static_cast<i64>(cfg.box_c) - 1);
        const i64 b0 = -(static_cast<i64>(cfg.box_d) - 1);
        counts.assign(static_cast<std::size_t>(side_a * side_b), 0);
#pragma omp parallel for schedule(dynamic)
        for (i64 i = 0; i < side_a; ++i) {
            for (i64 j = 0; j < side_b; ++j) {
                const i64 a = a0 + i, b = b0 + j;
                if (cfg.minimal_only && !is_minimal_pair(a, b)) {
                    counts[static_cast<std::size_t>(i * side_b + j)] = UINT32_MAX;
                    continue;
                }
                counts[static_cast<std::size_t>(i * side_b + j)] =
                    static_cast<u32>(count_for_pair(a, b, ctxs));
            }
        }
        if (cfg.minimal_only) {
            counts.erase(std::remove(counts.begin(), counts.end(), UINT32_MAX), counts.end());
        }
    } else {
        counts.assign(cfg.samples, 0);
        const i64 amax = static_cast<i64>(cfg.box_c) - 1;
        const i64 bmax = static_cast<i64>(cfg.box_d) - 1;
#pragma omp parallel for schedule(dynamic, 256)
        for (u64 idx = 0; idx < cfg.samples; ++idx) {
            SplitMix rng = SplitMix::substream(cfg.seed, idx);
            i64 a, b;
            for (;;) {
                a = rng.range(-amax, amax);
                b = rng.range(-bmax, bmax);
                if (!cfg.minimal_only || is_minimal_pair(a, b)) break;
            }
            counts[idx] = static_cast<u32>(count_for_pair(a, b, ctxs));
        }
    }

    // Deterministic serial aggregation over integer counts.
    rep.sample_count = counts.size();
    const u64 n = rep.sample_count;
    u64 sum = 0;
    u128 sum_sq = 0;
    for (u32 c : counts) {
        sum += c;
        sum_sq += static_cast<u128>(c) * c;
    }
    rep.sum_counts = sum;
    rep.sum_sq_counts = sum_sq;

    const double nd = static_cast<double>(n);
    const double P = rep.p_y.to_double();
    rep.empirical_mean = static_cast<double>(sum) / nd;
    rep.empirical_variance =
        static_cast<double>(sum_sq) / nd - rep.empirical_mean * rep.empirical_mean;
    const double centered =
        static_cast<double>(sum_sq) - 2.0 * P * static_cast<double>(sum) + nd * P * P;
    rep.mean_square_ratio = P > 0.0 ? centered / (nd * P) : 0.0;

    const double sqrtP = std::sqrt(P);
    for (double beta : cfg.betas) {
        BetaBand band;
        band.beta = beta;
        const double threshold = beta * sqrtP;
        for (u32 c : counts) {
            if (std::abs(static_cast<double>(c) - P) >= threshold) ++band.outside;
        }
        band.observed_fraction = static_cast<double>(band.outside) / nd;
        band.chebyshev_ceiling = beta > 0.0 ? rep.mean_square_ratio / (beta * beta) : 0.0;
        rep.bands.push_back(band);
    }

    if (cfg.exhaustive && !cfg.minimal_only) {
        rep.exact_mean_available = true;
        rep.exact_mean = BigRational(BigInt(sum), BigInt(n));
        rep.exact_mean_matches = rep.exact_mean == rep.p_y;
    }
    return rep;
}

}  // namespace selmerstat
