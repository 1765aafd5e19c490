#pragma once

#include "selmerstat/util.hpp"

namespace selmerstat {

// Bounded-precision p-adic scalar: valuation plus a unit mantissa known to
// `precision` significant p-adic digits. Exact zero is a distinguished
// sentinel, never a huge valuation within precision. The mantissa modulus
// p^precision is capped at 2^63 so every product fits a 128-bit intermediate.
class PAdicScalar {
  public:
    static unsigned max_precision(u64 p);

    static PAdicScalar zero(u64 p, unsigned precision);
    static PAdicScalar from_integer(i64 n, u64 p, unsigned precision);
    static PAdicScalar from_unit(u64 unit, int valuation, u64 p, unsigned precision);

    u64 prime() const { return prime_; }
    bool is_zero() const { return zero_; }
    // Valuation of a nonzero scalar; throws std::domain_error on the zero sentinel.
    int valuation() const;
    u64 unit() const;
    unsigned precision() const;

    PAdicScalar negate() const;
    PAdicScalar add(const PAdicScalar& o) const;
    PAdicScalar sub(const PAdicScalar& o) const { return add(o.negate()); }
    PAdicScalar mul(const PAdicScalar& o) const;
    PAdicScalar div(const PAdicScalar& o) const;

    // Value mod p^k for scalars with valuation >= 0; requires k digits of
    // absolute precision.
    u64 value_mod(unsigned k) const;

  private:
    PAdicScalar() = default;
    void check_same_prime(const PAdicScalar& o) const;

    u64 prime_ = 0;
    int valuation_ = 0;
    u64 unit_ = 0;        // in [1, p^precision), coprime to p
    unsigned precision_ = 0;
    bool zero_ = true;
};

}  // namespace selmerstat
