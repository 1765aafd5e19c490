#include "selmerstat/verify.hpp"

#include <sstream>

#include "selmerstat/census.hpp"
#include "selmerstat/curve.hpp"
#include "selmerstat/errors.hpp"
#include "selmerstat/hurwitz.hpp"
#include "selmerstat/lift.hpp"

namespace selmerstat {

CheckResult check_waterhouse_schoof(u64 lo, u64 hi) {
    CheckResult result;
    result.name = "waterhouse-schoof";
    for (u64 p : primes_in(std::max<u64>(lo, 5), hi)) {
        const auto report = verify_waterhouse_schoof(p);
        for (const auto& row : report.rows) {
            std::ostringstream os;
            os << "p=" << p << " t=" << row.t << " N(t)=" << row.class_count
               << " H(t^2-4p)=" << row.hurwitz << (row.match ? " match" : " MISMATCH");
            result.lines.push_back(os.str());
        }
        result.pass = result.pass && report.pass;
    }
    return result;
}

CheckResult check_fibers(const std::vector<u64>& primes) {
    CheckResult result;
    result.name = "fibers";
    for (u64 p : primes) {
        u64 eligible = 0, exact = 0;
        for (u64 a = 1; a < p; ++a) {
            for (u64 b = 1; b < p; ++b) {
                if (discriminant_mod(a, b, p) == 0) continue;
                if (!is_anomalous(a, b, p)) continue;
                ++eligible;
                if (verify_fibers(a, b, p) == p) ++exact;
            }
        }
        std::ostringstream os;
        os << "p=" << p << " eligible pairs=" << eligible << " fibers of size p=" << exact;
        result.lines.push_back(os.str());
        result.pass = result.pass && eligible == exact;
    }
    return result;
}

CheckResult check_lemma_rank(const std::vector<u64>& primes) {
    CheckResult result;
    result.name = "lemma-rank";
    for (u64 p : primes) {
        const u64 p2 = p * p;
        u64 tested = 0, rank2 = 0, violations = 0;
        for (u64 A = 0; A < p2; ++A) {
            for (u64 B = 0; B < p2; ++B) {
                if (discriminant_mod(A, B, p) == 0) continue;
                const auto res = rank_mod_p_squared(A, B, p);
                ++tested;
                if (res.rank != 1 && res.rank != 2) ++violations;
                if (res.rank == 2) {
                    ++rank2;
                    if (!is_anomalous(A % p, B % p, p)) ++violations;
                }
            }
        }
        std::ostringstream os;
        os << "p=" << p << " pairs tested=" << tested << " rank-2=" << rank2
           << " violations=" << violations;
        result.lines.push_back(os.str());
        result.pass = result.pass && violations == 0;
    }
    return result;
}

CheckResult check_oracle_equivalence(const std::vector<u64>& exhaustive_primes,
                                     const std::vector<u64>& sampled_primes, u64 samples, u64 seed) {
    CheckResult result;
    result.name = "oracle-equivalence";
    auto agree = [](u64 A, u64 B, u64 p) {
        return is_in_Ap(A, B, p, RankAlgo::division_polynomial) ==
               is_in_Ap(A, B, p, RankAlgo::padic_oracle);
    };
    for (u64 p : exhaustive_primes) {
        const u64 p2 = p * p;
        u64 compared = 0, agreements = 0;
        for (u64 A = 0; A < p2; ++A) {
            for (u64 B = 0; B < p2; ++B) {
                if (discriminant_mod(A, B, p) == 0) continue;
                ++compared;
                if (agree(A, B, p)) ++agreements;
            }
        }
        std::ostringstream os;
        os << "p=" << p << " exhaustive compared=" << compared << " agreements=" << agreements;
        result.lines.push_back(os.str());
        result.pass = result.pass && compared == agreements;
    }
    for (u64 p : sampled_primes) {
        const u64 p2 = p * p;
        SplitMix rng(seed ^ (p * 0x9E3779B97F4A7C15ull));
        u64 compared = 0, agreements = 0;
        while (compared < samples) {
            const u64 A = rng.below(p2), B = rng.below(p2);
            if (discriminant_mod(A, B, p) == 0) continue;
            ++compared;
            if (agree(A, B, p)) ++agreements;
        }
        // Random pairs rarely reduce onto the anomalous locus, so also sweep
        // the full lift fiber of one seeded anomalous pair.
        u64 fiber_base_a = 0, fiber_base_b = 0;
        for (;;) {
            const u64 a = rng.below(p), b = rng.below(p);
            if (discriminant_mod(a, b, p) == 0) continue;
            if (count_points(a, b, p) % p != 0) continue;
            fiber_base_a = a;
            fiber_base_b = b;
            break;
        }
        u64 fiber_compared = 0, fiber_agreements = 0;
        for (u64 alpha = 0; alpha < p; ++alpha) {
            for (u64 beta = 0; beta < p; ++beta) {
                ++fiber_compared;
                if (agree(fiber_base_a + alpha * p, fiber_base_b + beta * p, p)) ++fiber_agreements;
            }
        }
        std::ostringstream os;
        os << "p=" << p << " sampled compared=" << compared << " agreements=" << agreements
           << ", fiber of (" << fiber_base_a << "," << fiber_base_b << ") compared=" << fiber_compared
           << " agreements=" << fiber_agreements;
        result.lines.push_back(os.str());
        result.pass = result.pass && compared == agreements && fiber_compared == fiber_agreements;
    }
    return result;
}

CheckResult check_table1_rows(u64 max_p) {
    CheckResult result;
    result.name = "table1";
    const auto rows = table1_rows(7, max_p);
    const auto check = check_table1(rows);
    for (const auto& row : rows) {
        std::ostringstream os;
        os << "p=" << row.p << " sp/p^2=" << row.ratio;
        result.lines.push_back(os.str());
    }
    if (!check.pass) {
        for (u64 p : check.failed_primes) {
            result.lines.push_back("regression failure at p=" + std::to_string(p));
        }
    }
    result.pass = check.pass;
    return result;
}

CheckResult check_sbar_double_derivation(u64 lo, u64 hi) {
    CheckResult result;
    result.name = "sbar-double-derivation";
    for (u64 p : primes_in(std::max<u64>(lo, 5), hi)) {
        try {
            u64 sbar = count_sbar(p);
            result.lines.push_back("p=" + std::to_string(p) + " sbar=" + std::to_string(sbar));
        } catch (const census_integrity_error& e) {
            result.lines.push_back(std::string("DISAGREEMENT: ") + e.what());
            result.pass = false;
        }
    }
    return result;
}

}  // namespace selmerstat
