#include "selmerstat/padic.hpp"

#include <algorithm>
#include <stdexcept>

#include "selmerstat/errors.hpp"
#include "selmerstat/ring.hpp"

namespace selmerstat {

unsigned PAdicScalar::max_precision(u64 p) {
    const u64 limit = 1ull << 63;
    unsigned k = 0;
    u64 r = 1;
    while (r <= limit / p) {
        r *= p;
        ++k;
    }
    return k;
}

static void check_params(u64 p, unsigned precision) {
    if (p < 5 || !is_prime_u64(p)) {
        throw invalid_modulus("PAdicScalar: prime must be >= 5");
    }
    if (precision < 1 || precision > PAdicScalar::max_precision(p)) {
        throw std::invalid_argument("PAdicScalar: unsupported precision for this prime");
    }
}

PAdicScalar PAdicScalar::zero(u64 p, unsigned precision) {
    check_params(p, precision);
    PAdicScalar s;
    s.prime_ = p;
    s.precision_ = precision;
    s.zero_ = true;
    return s;
}

PAdicScalar PAdicScalar::from_integer(i64 n, u64 p, unsigned precision) {
    check_params(p, precision);
    if (n == 0) return zero(p, precision);
    int v = 0;
    u64 mag;
    bool neg = n < 0;
    mag = neg ? static_cast<u64>(-n) : static_cast<u64>(n);
    while (mag % p == 0) {
        mag /= p;
        ++v;
    }
    const u64 pk = pow_checked(p, precision);
    u64 unit = mag % pk;
    if (neg) unit = pk - unit;
    return from_unit(unit, v, p, precision);
}

PAdicScalar PAdicScalar::from_unit(u64 unit, int valuation, u64 p, unsigned precision) {
    check_params(p, precision);
    const u64 pk = pow_checked(p, precision);
    unit %= pk;
    if (unit % p == 0) throw std::invalid_argument("PAdicScalar: mantissa not a unit");
    PAdicScalar s;
    s.prime_ = p;
    s.valuation_ = valuation;
    s.unit_ = unit;
    s.precision_ = precision;
    s.zero_ = false;
    return s;
}

int PAdicScalar::valuation() const {
    if (zero_) throw std::domain_error("PAdicScalar: valuation of exact zero");
    return valuation_;
}

u64 PAdicScalar::unit() const {
    if (zero_) throw std::domain_error("PAdicScalar: unit of exact zero");
    return unit_;
}

unsigned PAdicScalar::precision() const { return precision_; }

void PAdicScalar::check_same_prime(const PAdicScalar& o) const {
    if (prime_ != o.prime_) throw std::invalid_argument("PAdicScalar: mixed primes");
}

PAdicScalar PAdicScalar::negate() const {
    if (zero_) return *this;
    const u64 pk = pow_checked(prime_, precision_);
    return from_unit(pk - unit_, valuation_, prime_, precision_);
}

PAdicScalar PAdicScalar::mul(const PAdicScalar& o) const {
    check_same_prime(o);
    const unsigned prec = std::min(precision_, o.precision_);
    if (zero_ || o.zero_) return zero(prime_, prec);
    const u64 pk = pow_checked(prime_, prec);
    return from_unit(mulmod(unit_ % pk, o.unit_ % pk, pk), valuation_ + o.valuation_, prime_, prec);
}

PAdicScalar PAdicScalar::div(const PAdicScalar& o) const {
    check_same_prime(o);
    if (o.zero_) throw std::domain_error("PAdicScalar: division by exact zero");
    const unsigned prec = std::min(precision_, o.precision_);
    if (zero_) return zero(prime_, prec);
    const u64 pk = pow_checked(prime_, prec);
    u64 inv = invmod(o.unit_ % pk, pk);
    return from_unit(mulmod(unit_ % pk, inv, pk), valuation_ - o.valuation_, prime_, prec);
}

PAdicScalar PAdicScalar::add(const PAdicScalar& o) const {
    check_same_prime(o);
    if (zero_) return o;
    if (o.zero_) return *this;

    const int v = std::min(valuation_, o.valuation_);
    // Absolute precision of each operand, then of the sum.
    const long abs_a = static_cast<long>(valuation_) + precision_;
    const long abs_b = static_cast<long>(o.valuation_) + o.precision_;
    const long abs_target = std::min(abs_a, abs_b);
    const long capacity = abs_target - v;  // digits representable above level v
    if (capacity < 1) throw precision_exhausted("PAdicScalar: add lost all significant digits");

    const unsigned cap = static_cast<unsigned>(std::min<long>(capacity, max_precision(prime_)));
    const u64 pk = pow_checked(prime_, cap);
    u64 lhs = mulmod(unit_ % pk, powmod(prime_, static_cast<u64>(valuation_ - v), pk), pk);
    u64 rhs = mulmod(o.unit_ % pk, powmod(prime_, static_cast<u64>(o.valuation_ - v), pk), pk);
    u64 s = addmod(lhs, rhs, pk);
    if (s == 0) throw precision_exhausted("PAdicScalar: add lost all significant digits");
    unsigned shift = 0;
    while (s % prime_ == 0) {
        s /= prime_;
        ++shift;
    }
    const unsigned prec = cap - shift;  // shift < cap since s != 0 mod p^cap
    return from_unit(s, v + static_cast<int>(shift), prime_, prec);
}

u64 PAdicScalar::value_mod(unsigned k) const {
    const u64 pk = pow_checked(prime_, k);
    if (zero_) return 0;
    if (valuation_ < 0) throw std::domain_error("PAdicScalar: negative valuation has no residue");
    if (static_cast<long>(valuation_) + precision_ < static_cast<long>(k)) {
        throw precision_exhausted("PAdicScalar: not enough absolute precision");
    }
    if (static_cast<unsigned>(valuation_) >= k) return 0;
    return mulmod(unit_ % pk, powmod(prime_, static_cast<u64>(valuation_), pk), pk);
}

}  // namespace selmerstat
