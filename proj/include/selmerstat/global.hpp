#pragma once

#include <string>
#include <vector>

#include "selmerstat/util.hpp"

namespace selmerstat {

// No prime l has l^4 | a and l^6 | b.
bool is_minimal_pair(i64 a, i64 b);

// H(E) = max(|a|^3, b^2).
u128 height_pair(i64 a, i64 b);

struct PrimeScanReport {
    i64 a = 0;
    i64 b = 0;
    u64 Y = 0;
    std::vector<u64> anomalous;      // good primes p <= Y with p | #E(F_p)
    std::vector<u64> local_torsion;  // of those, rank 2 mod p^2
    std::vector<u64> bad;            // primes 5 <= p <= Y dividing Delta, skipped
};

// Scans good primes 5 <= p <= Y; 2 and 3 are never considered.
PrimeScanReport scan_primes(i64 a, i64 b, u64 Y);

struct FineSelmerInputs {
    u64 p = 0;
    int rank = 0;               // Mordell-Weil rank, 0 or 1 (user input)
    u64 sha_order = 1;          // #Sha(E/Q) (user input)
    std::vector<u64> tamagawa;  // Tamagawa numbers c_l at bad primes (user input)
    bool phi_iso = false;       // rank 1 only: user asserts phi_E is an isomorphism
};

struct FineSelmerVerdict {
    bool finite = false;        // mu = lambda = 0 certified
    std::string reason;         // violated condition when not finite
    bool local_torsion = false;
    std::vector<u64> bad_set;   // primes dividing 2 * sha_order * prod(c_l)
};

// Unit-criterion verdict: "finite" only when every hypothesis holds; the
// verdict never claims the invariants are positive.
FineSelmerVerdict fine_selmer_verdict(i64 a, i64 b, const FineSelmerInputs& in);

struct PairBoxCount {
    u128 total = 0;
    u128 minimal = 0;
};

// Exact count of minimal pairs in |a| <= A, |b| <= B, by inclusion-exclusion
// per a-row (never by iterating b).
PairBoxCount count_minimal_pairs_box(u64 A, u64 B);

double minimal_fraction(const PairBoxCount& c);

}  // namespace selmerstat
