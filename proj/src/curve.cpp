#include "selmerstat/curve.hpp"

#include <stdexcept>

#include "selmerstat/errors.hpp"

namespace selmerstat {

static constexpr i64 kCoeffLimit = 1'000'000'000;

i128 discriminant_z(i64 a, i64 b) {
    if (a > kCoeffLimit || a < -kCoeffLimit || b > kCoeffLimit || b < -kCoeffLimit) {
        throw std::invalid_argument("discriminant_z: coefficients limited to |a|,|b| <= 10^9");
    }
    i128 a3 = static_cast<i128>(a) * a * a;
    i128 b2 = static_cast<i128>(b) * b;
    return static_cast<i128>(-16) * (4 * a3 + 27 * b2);
}

u64 discriminant_mod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    u64 a3 = mulmod(mulmod(a, a, m), a, m);
    u64 b2 = mulmod(b, b, m);
    u64 inner = addmod(mulmod(4 % m, a3, m), mulmod(27 % m, b2, m), m);
    return mulmod(m - (16 % m), inner, m);
}

void require_census_prime(u64 p) {
    if (p < 5 || !is_prime_u64(p)) {
        throw invalid_modulus("prime must be >= 5 (2 and 3 are rejected)");
    }
}

bool is_nonsingular(u64 a, u64 b, u64 p) {
    require_census_prime(p);
    return discriminant_mod(a, b, p) != 0;
}

u64 j_invariant(u64 a, u64 b, u64 p) {
    require_census_prime(p);
    a %= p;
    b %= p;
    u64 a3 = mulmod(4, mulmod(mulmod(a, a, p), a, p), p);
    u64 den = addmod(a3, mulmod(27, mulmod(b, b, p), p), p);
    if (den == 0) throw singular_curve("j_invariant: singular curve");
    return mulmod(1728 % p, mulmod(a3, invmod(den, p), p), p);
}

std::vector<signed char> chi_table(u64 p) {
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (u64 x = 1; x < p; ++x) chi[mulmod(x, x, p)] = 1;
    return chi;
}

u64 count_points_tab(u64 a, u64 b, u64 p, const signed char* chi) {
    // #E(F_p) = 1 + sum_x (1 + chi(x^3 + a x + b))
    i64 acc = 0;
    for (u64 x = 0; x < p; ++x) {
        u64 fx = (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
        acc += chi[fx];
    }
    return static_cast<u64>(static_cast<i64>(p) + 1 + acc);
}

u64 count_points(u64 a, u64 b, u64 p) {
    require_census_prime(p);
    a %= p;
    b %= p;
    if (discriminant_mod(a, b, p) == 0) throw singular_curve("count_points: singular curve");
    auto chi = chi_table(p);
    return count_points_tab(a, b, p, chi.data());
}

int trace_of_frobenius(u64 a, u64 b, u64 p) {
    return static_cast<int>(static_cast<i64>(p) + 1 - static_cast<i64>(count_points(a, b, p)));
}

bool is_anomalous(u64 a, u64 b, u64 p) { return count_points(a, b, p) % p == 0; }

LocalCurveSummary summarize_curve(u64 a, u64 b, u64 p) {
    LocalCurveSummary s;
    s.p = p;
    s.order = count_points(a, b, p);
    s.trace = static_cast<int>(static_cast<i64>(p) + 1 - static_cast<i64>(s.order));
    s.anomalous = s.order % p == 0;
    s.supersingular = static_cast<u64>(std::abs(static_cast<i64>(s.trace))) % p == 0;
    s.j = j_invariant(a, b, p);
    return s;
}

PointFp ec_add(u64 a, u64 p, PointFp P, PointFp Q) {
    if (!P) return Q;
    if (!Q) return P;
    u64 x1 = P->x, y1 = P->y, x2 = Q->x, y2 = Q->y;
    u64 lambda;
    if (x1 == x2) {
        if (addmod(y1, y2, p) == 0) return std::nullopt;
        // tangent: (3x^2 + a) / (2y)
        u64 num = addmod(mulmod(3, mulmod(x1, x1, p), p), a % p, p);
        lambda = mulmod(num, invmod(mulmod(2, y1, p), p), p);
    } else {
        lambda = mulmod(submod(y2, y1, p), invmod(submod(x2, x1, p), p), p);
    }
    u64 x3 = submod(submod(mulmod(lambda, lambda, p), x1, p), x2, p);
    u64 y3 = submod(mulmod(lambda, submod(x1, x3, p), p), y1, p);
    return AffinePoint{x3, y3};
}

PointFp ec_mul(u64 a, u64 p, u64 k, PointFp P) {
    PointFp acc = std::nullopt;
    PointFp base = P;
    while (k > 0) {
        if (k & 1) acc = ec_add(a, p, acc, base);
        base = ec_add(a, p, base, base);
        k >>= 1;
    }
    return acc;
}

bool on_curve(u64 a, u64 b, u64 p, const AffinePoint& P) {
    u64 lhs = mulmod(P.y, P.y, p);
    u64 rhs = (mulmod(mulmod(P.x, P.x, p), P.x, p) + mulmod(a % p, P.x, p) + b % p) % p;
    return lhs == rhs;
}

std::optional<AffinePoint> find_point_of_order_p(u64 a, u64 b, u64 p, u64 seed) {
    require_census_prime(p);
    a %= p;
    b %= p;
    if (discriminant_mod(a, b, p) == 0) throw singular_curve("find_point_of_order_p: singular curve");
    const u64 n = count_points(a, b, p);
    if (n % p != 0) return std::nullopt;
    const u64 cofactor = n / p;

    auto try_x = [&](u64 x) -> std::optional<AffinePoint> {
        u64 fx = (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
        auto y = sqrt_mod_p(fx, p);
        if (!y) return std::nullopt;
        PointFp Q = ec_mul(a, p, cofactor, AffinePoint{x, *y});
        if (!Q) return std::nullopt;
        return *Q;  // order divides p and Q != O, so order is exactly p
    };

    SplitMix rng(seed ^ (a * 0x9E3779B97F4A7C15ull) ^ (b + p));
    for (u64 trial = 0; trial < 4 * p; ++trial) {
        if (auto P = try_x(rng.below(p))) return P;
    }
    for (u64 x = 0; x < p; ++x) {
        if (auto P = try_x(x)) return P;
    }
    throw std::logic_error("find_point_of_order_p: exhaustive search failed on anomalous curve");
}

std::map<int, u64> IsogenyCensus::counts_by_trace() const {
    std::map<int, u64> m;
    for (const auto& c : classes) m[c.trace]++;
    return m;
}

u64 IsogenyCensus::class_count_with_trace(int t) const {
    u64 n = 0;
    for (const auto& c : classes) {
        if (c.trace == t) ++n;
    }
    return n;
}

IsogenyCensus isogeny_census(u64 p) {
    require_census_prime(p);
    IsogenyCensus out;
    out.p = p;
    auto chi = chi_table(p);
    std::vector<bool> visited(p * p, false);

    // Fourth/sixth powers of the units, for the orbit walk.
    std::vector<u64> c4(p), c6(p);
    for (u64 c = 1; c < p; ++c) {
        u64 c2 = mulmod(c, c, p);
        c4[c] = mulmod(c2, c2, p);
        c6[c] = mulmod(c4[c], c2, p);
    }

    for (u64 a = 0; a < p; ++a) {
        for (u64 b = 0; b < p; ++b) {
            if (visited[a * p + b]) continue;
            if (discriminant_mod(a, b, p) == 0) {
                visited[a * p + b] = true;
                continue;
            }
            u64 orbit = 0;
            for (u64 c = 1; c < p; ++c) {
                u64 aa = mulmod(c4[c], a, p);
                u64 bb = mulmod(c6[c], b, p);
                if (!visited[aa * p + bb]) {
                    visited[aa * p + bb] = true;
                    ++orbit;
                }
            }
            IsoClass cls;
            cls.a = a;
            cls.b = b;
            cls.order = count_points_tab(a, b, p, chi.data());
            cls.trace = static_cast<int>(static_cast<i64>(p) + 1 - static_cast<i64>(cls.order));
            cls.orbit_size = orbit;
            cls.j = j_invariant(a, b, p);
            out.classes.push_back(cls);
        }
    }
    return out;
}

}  // namespace selmerstat
