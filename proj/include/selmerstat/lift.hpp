#pragma once

#include <optional>

#include "selmerstat/curve.hpp"
#include "selmerstat/util.hpp"

namespace selmerstat {

enum class RankMethod { forced_by_reduction, division_polynomial, padic_oracle };

enum class RankAlgo { division_polynomial, padic_oracle };

struct LiftTestResult {
    int rank = 1;  // always 1 or 2
    RankMethod method = RankMethod::forced_by_reduction;
    std::optional<AffinePoint> order_p_point;  // witness on the reduction, if one was used
};

// Value of the division polynomial psi_m at an affine point of E_{A,B} over
// Z/modulus, m odd. The double-index recurrences only ever invert 2y, so y
// must be a unit mod p.
u64 division_poly_value(u64 m, AffinePoint P, u64 A, u64 B, u64 modulus, u64 p);

// Lifts the order-p point Pbar of the reduction into E(Q_p) at 8 working
// digits (Hensel on y), walks to (p-1)*P by chord-tangent additions, and
// inspects the valuation of x(p*P) with PAdicScalar tracking. True means the
// lift dies in E(Z/p^2), i.e. v(x(p*P)) <= -4 or p*P is O outright.
// Precision exhaustion escalates (doubling, twice) before failing loudly.
bool padic_order_oracle(u64 A, u64 B, u64 p, AffinePoint Pbar);

// p-rank of E_{A,B}(Z/p^2), which is 1 or 2. Rank is 1 outright when the
// reduction is not anomalous; otherwise an order-p point of the reduction is
// lifted (same x, Hensel-lifted y) and the lift's order decides.
LiftTestResult rank_mod_p_squared(u64 A, u64 B, u64 p,
                                  RankAlgo algo = RankAlgo::division_polynomial,
                                  u64 seed = 1);

// Membership in the mod-p^2 local-torsion locus: p does not divide Delta and
// the rank above is 2. Pairs with p | Delta are simply not members.
bool is_in_Ap(u64 A, u64 B, u64 p, RankAlgo algo = RankAlgo::division_polynomial);

// Counts the lifts (A,B) = (a,b) mod p that are members, over all p^2 lifts.
// Requires (a,b) anomalous nonsingular with j not in {0, 1728}.
u64 verify_fibers(u64 a, u64 b, u64 p);

}  // namespace selmerstat
