#include "selmerstat/global.hpp"

#include <algorithm>
#include <stdexcept>

#include "selmerstat/curve.hpp"
#include "selmerstat/errors.hpp"
#include "selmerstat/lift.hpp"
#include "selmerstat/ring.hpp"

namespace selmerstat {

static u64 ipow(u64 base, unsigned e) {
    u64 r = 1;
    while (e--) r *= base;
    return r;
}

// Primes l with l^4 | a (every prime qualifies when a = 0, so the caller
// bounds the list by the b-side).
static std::vector<u64> fourth_power_divisors(i64 a, u64 b_bound) {
    std::vector<u64> out;
    const u64 mag = a < 0 ? static_cast<u64>(-a) : static_cast<u64>(a);
    if (mag == 0) {
        for (u64 l = 2;; l = (l == 2 ? 3 : l + 2)) {
            u128 l3 = static_cast<u128>(l) * l * l;
            if (l3 * l3 > b_bound) break;
            if (is_prime_u64(l)) out.push_back(l);
        }
        return out;
    }
    for (u64 l = 2; l * l * l * l <= mag; l = (l == 2 ? 3 : l + 2)) {
        if (!is_prime_u64(l)) continue;
        if (mag % ipow(l, 4) == 0) out.push_back(l);
    }
    return out;
}

bool is_minimal_pair(i64 a, i64 b) {
    const u64 bmag = b < 0 ? static_cast<u64>(-b) : static_cast<u64>(b);
    if (a == 0 && b == 0) return false;
    for (u64 l : fourth_power_divisors(a, bmag == 0 ? UINT64_MAX : bmag)) {
        const u64 l6 = ipow(l, 6);
        if (bmag == 0 || bmag % l6 == 0) return false;
    }
    return true;
}

u128 height_pair(i64 a, i64 b) {
    u128 amag = a < 0 ? static_cast<u128>(-static_cast<i128>(a)) : static_cast<u128>(a);
    u128 a3 = amag * amag * amag;
    u128 b2 = static_cast<u128>(b < 0 ? -static_cast<i128>(b) : static_cast<i128>(b));
    b2 *= b2;
    return std::max(a3, b2);
}

PrimeScanReport scan_primes(i64 a, i64 b, u64 Y) {
    if (Y < 5) throw std::invalid_argument("scan_primes: Y must be at least 5");
    const i128 disc = discriminant_z(a, b);
    if (disc == 0) throw singular_curve("scan_primes: singular curve over Z");

    PrimeScanReport report;
    report.a = a;
    report.b = b;
    report.Y = Y;

    const auto primes = primes_in(5, Y);
    struct Slot {
        bool bad = false, anomalous = false, lt = false;
    };
    std::vector<Slot> slots(primes.size());

#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const u64 p = primes[i];
        if (mod_i128(disc, p) == 0) {
            slots[i].bad = true;
            continue;
        }
        const u64 ar = mod_signed(a, p), br = mod_signed(b, p);
        if (count_points(ar, br, p) % p != 0) continue;
        slots[i].anomalous = true;
        const u64 p2 = p * p;
        slots[i].lt = rank_mod_p_squared(mod_signed(a, p2), mod_signed(b, p2), p).rank == 2;
    }

    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (slots[i].bad) report.bad.push_back(primes[i]);
        if (slots[i].anomalous) report.anomalous.push_back(primes[i]);
        if (slots[i].lt) report.local_torsion.push_back(primes[i]);
    }
    return report;
}

static std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

FineSelmerVerdict fine_selmer_verdict(i64 a, i64 b, const FineSelmerInputs& in) {
    require_census_prime(in.p);
    if (in.rank < 0 || in.rank > 1) {
        throw std::domain_error("fine_selmer_verdict: rank must be 0 or 1");
    }
    if (in.sha_order == 0) throw std::invalid_argument("fine_selmer_verdict: sha order must be >= 1");
    for (u64 c : in.tamagawa) {
        if (c == 0) throw std::invalid_argument("fine_selmer_verdict: Tamagawa numbers are >= 1");
    }
    const i128 disc = discriminant_z(a, b);
    if (disc == 0) throw singular_curve("fine_selmer_verdict: singular curve");
    if (mod_i128(disc, in.p) == 0) {
        throw bad_reduction("fine_selmer_verdict: bad reduction at p");
    }

    FineSelmerVerdict verdict;
    u128 product = 2 * static_cast<u128>(in.sha_order);
    for (u64 c : in.tamagawa) product *= c;
    // The product stays modest at desk scale; fold prime divisors of each factor.
    {
        std::vector<u64> primes = prime_divisors(2 * in.sha_order);
        for (u64 c : in.tamagawa) {
            for (u64 q : prime_divisors(c)) primes.push_back(q);
        }
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        verdict.bad_set = std::move(primes);
    }

    const u64 p2 = in.p * in.p;
    const u64 ar = mod_signed(a, in.p), br = mod_signed(b, in.p);
    verdict.local_torsion = count_points(ar, br, in.p) % in.p == 0 &&
                            rank_mod_p_squared(mod_signed(a, p2), mod_signed(b, p2), in.p).rank == 2;

    if (in.sha_order % in.p == 0) {
        verdict.reason = "sha";
        return verdict;
    }
    for (u64 c : in.tamagawa) {
        if (c % in.p == 0) {
            verdict.reason = "tamagawa";
            return verdict;
        }
    }
    if (verdict.local_torsion) {
        verdict.reason = "local-torsion";
        return verdict;
    }
    if (in.rank == 1 && !in.phi_iso) {
        verdict.reason = "phi-isomorphism";
        return verdict;
    }
    verdict.finite = true;
    return verdict;
}

PairBoxCount count_minimal_pairs_box(u64 A, u64 B) {
    PairBoxCount out;
    out.total = (2 * static_cast<u128>(A) + 1) * (2 * static_cast<u128>(B) + 1);
    u128 nonminimal = 0;
    for (i64 a = -static_cast<i64>(A); a <= static_cast<i64>(A); ++a) {
        const auto ells = fourth_power_divisors(a, B);
        if (ells.empty()) continue;
        // Inclusion-exclusion over subsets of the qualifying primes.
        const std::size_t n = ells.size();
        i128 row = 0;
        for (std::size_t mask = 1; mask < (1u << n); ++mask) {
            u128 l6 = 1;
            bool overflow = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    l6 *= ipow(ells[i], 6);
                    if (l6 > static_cast<u128>(B) * 2) overflow = true;
                }
            }
            u64 multiples = overflow ? 0 : static_cast<u64>(B / static_cast<u64>(l6));
            i128 term = 2 * static_cast<i128>(multiples) + 1;  // b = 0 included
            row += (__builtin_popcount(static_cast<unsigned>(mask)) % 2 == 1) ? term : -term;
        }
        nonminimal += static_cast<u128>(row);
    }
    out.minimal = out.total - nonminimal;
    return out;
}

double minimal_fraction(const PairBoxCount& c) {
    return static_cast<double>(c.minimal) / static_cast<double>(c.total);
}

}  // namespace selmerstat
