#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "selmerstat/util.hpp"

namespace selmerstat {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, normalized with positive denominator.
struct BigRational {
    BigInt num = 0;
    BigInt den = 1;

    BigRational() = default;
    BigRational(BigInt n, BigInt d);
    static BigRational of(u64 n, u64 d) { return BigRational(BigInt(n), BigInt(d)); }

    BigRational add(const BigRational& o) const;
    BigRational sub(const BigRational& o) const;
    BigRational mul(const BigRational& o) const;

    bool operator==(const BigRational& o) const { return num == o.num && den == o.den; }

    double to_double() const;
    std::string fraction_string() const;

    // Rounded (half-up) decimal with `sig` significant digits, plain
    // notation, e.g. 4/49 at 15 digits -> "0.0816326530612245".
    std::string decimal(unsigned sig) const;
};

std::string decimal_of_ratio(const BigInt& num, const BigInt& den, unsigned sig);

// |value - reference| <= rel_tol_times_1e15 * 1e-15 * reference, exactly.
bool within_relative_1e15(const BigRational& value, const BigRational& reference, unsigned multiple);

// Parses a plain non-negative decimal like "0.0816326530612245".
BigRational parse_decimal(const std::string& text);

}  // namespace selmerstat
