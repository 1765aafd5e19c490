#include "selmerstat/lift.hpp"

#include <stdexcept>
#include <unordered_map>

#include "selmerstat/errors.hpp"
#include "selmerstat/padic.hpp"

namespace selmerstat {

namespace {

// psi_1 = 1, psi_2 = 2y,
// psi_3 = 3x^4 + 6ax^2 + 12bx - a^2,
// psi_4 = 4y(x^6 + 5ax^4 + 20bx^3 - 5a^2x^2 - 4abx - 8b^2 - a^3),
// psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3,
// psi_{2k}   = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y).
class DivisionPolyEvaluator {
  public:
    DivisionPolyEvaluator(AffinePoint P, u64 A, u64 B, u64 modulus)
        : x_(P.x % modulus), y_(P.y % modulus), a_(A % modulus), b_(B % modulus), m_(modulus) {
        inv2y_ = invmod(mulmod(2, y_, m_), m_);
    }

    u64 psi(u64 n) {
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
        u64 v = compute(n);
        memo_.emplace(n, v);
        return v;
    }

  private:
    u64 compute(u64 n) {
        switch (n) {
            case 0:
                return 0;
            case 1:
                return 1;
            case 2:
                return mulmod(2, y_, m_);
            case 3: {
                u64 x2 = mulmod(x_, x_, m_);
                u64 x4 = mulmod(x2, x2, m_);
                u64 t = mulmod(3, x4, m_);
                t = addmod(t, mulmod(6, mulmod(a_, x2, m_), m_), m_);
                t = addmod(t, mulmod(12, mulmod(b_, x_, m_), m_), m_);
                return submod(t, mulmod(a_, a_, m_), m_);
            }
            case 4: {
                u64 x2 = mulmod(x_, x_, m_);
                u64 x3 = mulmod(x2, x_, m_);
                u64 x4 = mulmod(x2, x2, m_);
                u64 x6 = mulmod(x3, x3, m_);
                u64 a2 = mulmod(a_, a_, m_);
                u64 t = x6;
                t = addmod(t, mulmod(5, mulmod(a_, x4, m_), m_), m_);
                t = addmod(t, mulmod(20, mulmod(b_, x3, m_), m_), m_);
                t = submod(t, mulmod(5, mulmod(a2, x2, m_), m_), m_);
                t = submod(t, mulmod(4, mulmod(mulmod(a_, b_, m_), x_, m_), m_), m_);
                t = submod(t, mulmod(8, mulmod(b_, b_, m_), m_), m_);
                t = submod(t, mulmod(a2, a_, m_), m_);
                return mulmod(mulmod(4, y_, m_), t, m_);
            }
            default:
                break;
        }
        u64 k = n / 2;
        if (n & 1) {
            u64 t1 = mulmod(psi(k + 2), cube(psi(k)), m_);
            u64 t2 = mulmod(psi(k - 1), cube(psi(k + 1)), m_);
            return submod(t1, t2, m_);
        }
        u64 t1 = mulmod(psi(k + 2), sq(psi(k - 1)), m_);
        u64 t2 = mulmod(psi(k - 2), sq(psi(k + 1)), m_);
        return mulmod(mulmod(psi(k), submod(t1, t2, m_), m_), inv2y_, m_);
    }

    u64 sq(u64 v) const { return mulmod(v, v, m_); }
    u64 cube(u64 v) const { return mulmod(sq(v), v, m_); }

    u64 x_, y_, a_, b_, m_;
    u64 inv2y_;
    std::unordered_map<u64, u64> memo_;
};

// Chord-tangent addition on residues mod p^k. Valid as long as the slope
// denominator is a unit mod p, which holds for every step used below.
AffinePoint residue_add(const AffinePoint& P, const AffinePoint& Q, u64 A, u64 pk, u64 p) {
    u64 lambda;
    if (P.x == Q.x && P.y == Q.y) {
        u64 num = addmod(mulmod(3, mulmod(P.x, P.x, pk), pk), A % pk, pk);
        lambda = mulmod(num, invmod(mulmod(2, P.y, pk), pk), pk);
    } else {
        u64 dx = submod(Q.x, P.x, pk);
        if (dx % p == 0) throw std::logic_error("residue_add: non-unit denominator");
        lambda = mulmod(submod(Q.y, P.y, pk), invmod(dx, pk), pk);
    }
    u64 x3 = submod(submod(mulmod(lambda, lambda, pk), P.x, pk), Q.x, pk);
    u64 y3 = submod(mulmod(lambda, submod(P.x, x3, pk), pk), P.y, pk);
    return AffinePoint{x3, y3};
}

bool oracle_attempt(u64 A, u64 B, u64 p, AffinePoint Pbar, unsigned prec) {
    const u64 pk = pow_checked(p, prec);

    // Lift Pbar: keep x, lift y through y^2 = x^3 + Ax + B (mod p^prec).
    const u64 x0 = Pbar.x % p;
    const u64 fx = (mulmod(mulmod(x0, x0, pk), x0, pk) + mulmod(A % pk, x0, pk) + B % pk) % pk;
    const u64 y0 = hensel_sqrt_lift(fx, Pbar.y, p, prec);
    const AffinePoint P{x0, y0};

    // k*P for k <= p-1 stays integral: it reduces to k*Pbar != O mod p.
    AffinePoint Q = residue_add(P, P, A, pk, p);
    for (u64 k = 3; k <= p - 1; ++k) Q = residue_add(Q, P, A, pk, p);

    // Final addition (p-1)P + P degenerates mod p; track it p-adically.
    const auto X1 = PAdicScalar::from_integer(static_cast<i64>(P.x), p, prec);
    const auto Y1 = PAdicScalar::from_integer(static_cast<i64>(P.y), p, prec);
    const auto X2 = PAdicScalar::from_integer(static_cast<i64>(Q.x), p, prec);
    const auto Y2 = PAdicScalar::from_integer(static_cast<i64>(Q.y), p, prec);

    PAdicScalar dx = PAdicScalar::zero(p, prec);
    try {
        dx = X2.sub(X1);
    } catch (const precision_exhausted&) {
        // x((p-1)P) = x(P) to full precision: p*P is O or lies at least
        // prec >= 8 levels deep in the formal group, so v(x(pP)) <= -16.
        return true;
    }
    PAdicScalar lambda = Y2.sub(Y1).div(dx);
    PAdicScalar x3 = lambda.mul(lambda).sub(X1).sub(X2);
    return x3.valuation() <= -4;
}

}  // namespace

u64 division_poly_value(u64 m, AffinePoint P, u64 A, u64 B, u64 modulus, u64 p) {
    if (m % 2 == 0) throw precondition_error("division_poly_value: index must be odd");
    if (P.y % p == 0) throw precondition_error("division_poly_value: point with non-unit y unsupported");
    DivisionPolyEvaluator eval(P, A, B, modulus);
    return eval.psi(m);
}

bool padic_order_oracle(u64 A, u64 B, u64 p, AffinePoint Pbar) {
    require_census_prime(p);
    unsigned prec = 8;
    const unsigned cap = PAdicScalar::max_precision(p);
    if (prec > cap) prec = cap;
    for (int attempt = 0; attempt < 3; ++attempt) {
        try {
            return oracle_attempt(A, B, p, Pbar, prec);
        } catch (const precision_exhausted&) {
            if (2 * prec > cap) throw oracle_failure("padic_order_oracle: precision capacity exceeded");
            prec *= 2;
        }
    }
    throw oracle_failure("padic_order_oracle: undecided after two precision escalations");
}

LiftTestResult rank_mod_p_squared(u64 A, u64 B, u64 p, RankAlgo algo, u64 seed) {
    require_census_prime(p);
    const u64 p2 = p * p;
    A %= p2;
    B %= p2;
    if (discriminant_mod(A, B, p) == 0) {
        throw bad_reduction("rank_mod_p_squared: p divides the discriminant");
    }
    const u64 a = A % p, b = B % p;
    if (count_points(a, b, p) % p != 0) {
        return LiftTestResult{1, RankMethod::forced_by_reduction, std::nullopt};
    }
    AffinePoint Pbar = *find_point_of_order_p(a, b, p, seed);

    bool rank2;
    RankMethod method;
    if (algo == RankAlgo::division_polynomial) {
        const u64 fx = (mulmod(mulmod(Pbar.x, Pbar.x, p2), Pbar.x, p2) + mulmod(A, Pbar.x, p2) + B) % p2;
        const u64 y = hensel_sqrt_lift(fx, Pbar.y, p, 2);
        const u64 psi_p = division_poly_value(p, AffinePoint{Pbar.x, y}, A, B, p2, p);
        if (psi_p % p != 0) throw std::logic_error("rank_mod_p_squared: psi_p not divisible by p");
        rank2 = psi_p == 0;
        method = RankMethod::division_polynomial;
    } else {
        rank2 = padic_order_oracle(A, B, p, Pbar);
        method = RankMethod::padic_oracle;
    }
    return LiftTestResult{rank2 ? 2 : 1, method, Pbar};
}

bool is_in_Ap(u64 A, u64 B, u64 p, RankAlgo algo) {
    require_census_prime(p);
    const u64 p2 = p * p;
    A %= p2;
    B %= p2;
    if (discriminant_mod(A, B, p) == 0) return false;
    return rank_mod_p_squared(A, B, p, algo).rank == 2;
}

u64 verify_fibers(u64 a, u64 b, u64 p) {
    require_census_prime(p);
    a %= p;
    b %= p;
    if (a == 0 || b == 0) {
        throw precondition_error("verify_fibers: j-invariant in {0, 1728} excluded");
    }
    if (discriminant_mod(a, b, p) == 0) throw precondition_error("verify_fibers: singular pair");
    if (!is_anomalous(a, b, p)) throw precondition_error("verify_fibers: pair is not anomalous");
    u64 count = 0;
    for (u64 alpha = 0; alpha < p; ++alpha) {
        for (u64 beta = 0; beta < p; ++beta) {
            if (is_in_Ap(a + alpha * p, b + beta * p, p)) ++count;
        }
    }
    return count;
}

}  // namespace selmerstat
