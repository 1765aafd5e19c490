#pragma once

#include <map>
#include <optional>
#include <vector>

#include "selmerstat/ring.hpp"
#include "selmerstat/util.hpp"

namespace selmerstat {

// Short Weierstrass pair y^2 = x^3 + a x + b over the integers.
struct CurvePair {
    i64 a = 0;
    i64 b = 0;
};

// The same pair reduced into F_p (or Z/p^2 when the modulus is p^2).
struct PairMod {
    u64 a = 0;
    u64 b = 0;
    u64 modulus = 0;
};

struct AffinePoint {
    u64 x = 0;
    u64 y = 0;
    bool operator==(const AffinePoint&) const = default;
};

// nullopt plays the role of the point at infinity.
using PointFp = std::optional<AffinePoint>;

// Delta = -16(4a^3 + 27b^2) over Z; inputs limited to |a|,|b| <= 10^9.
i128 discriminant_z(i64 a, i64 b);
u64 discriminant_mod(u64 a, u64 b, u64 m);

void require_census_prime(u64 p);  // p >= 5 and prime, else invalid_modulus

bool is_nonsingular(u64 a, u64 b, u64 p);

// 1728 * 4a^3 / (4a^3 + 27b^2) mod p; exact 0 at a=0 and 1728 at b=0.
u64 j_invariant(u64 a, u64 b, u64 p);

// chi[v] = Legendre symbol (v|p) as -1/0/+1.
std::vector<signed char> chi_table(u64 p);

u64 count_points_tab(u64 a, u64 b, u64 p, const signed char* chi);
u64 count_points(u64 a, u64 b, u64 p);

int trace_of_frobenius(u64 a, u64 b, u64 p);
bool is_anomalous(u64 a, u64 b, u64 p);

struct LocalCurveSummary {
    u64 p = 0;
    u64 order = 0;
    int trace = 0;
    bool anomalous = false;
    bool supersingular = false;
    std::optional<u64> j;  // undefined for singular pairs
};

LocalCurveSummary summarize_curve(u64 a, u64 b, u64 p);

// Affine chord-tangent group law on a nonsingular curve mod p.
PointFp ec_add(u64 a, u64 p, PointFp P, PointFp Q);
PointFp ec_mul(u64 a, u64 p, u64 k, PointFp P);
bool on_curve(u64 a, u64 b, u64 p, const AffinePoint& P);

// A point of exact order p when p | #E(F_p), else nullopt. Seeded random
// x-search with an exhaustive fallback after 4p trials, so results are
// reproducible.
std::optional<AffinePoint> find_point_of_order_p(u64 a, u64 b, u64 p, u64 seed = 1);

struct IsoClass {
    u64 a = 0, b = 0;   // orbit representative
    u64 order = 0;
    int trace = 0;
    u64 orbit_size = 0;
    u64 j = 0;
};

struct IsogenyCensus {
    u64 p = 0;
    std::vector<IsoClass> classes;

    std::map<int, u64> counts_by_trace() const;
    u64 class_count_with_trace(int t) const;
};

// Walks the (a,b) ~ (c^4 a, c^6 b) orbits explicitly; one point count per class.
IsogenyCensus isogeny_census(u64 p);

}  // namespace selmerstat
