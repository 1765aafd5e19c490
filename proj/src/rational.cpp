#include "selmerstat/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <stdexcept>

namespace selmerstat {

BigRational::BigRational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw std::domain_error("BigRational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

BigRational BigRational::add(const BigRational& o) const {
    return BigRational(num * o.den + o.num * den, den * o.den);
}

BigRational BigRational::sub(const BigRational& o) const {
    return BigRational(num * o.den - o.num * den, den * o.den);
}

BigRational BigRational::mul(const BigRational& o) const {
    return BigRational(num * o.num, den * o.den);
}

double BigRational::to_double() const {
    return static_cast<double>(boost::multiprecision::cpp_bin_float_50(num) /
                               boost::multiprecision::cpp_bin_float_50(den));
}

std::string BigRational::fraction_string() const { return num.str() + "/" + den.str(); }

std::string BigRational::decimal(unsigned sig) const { return decimal_of_ratio(num, den, sig); }

std::string decimal_of_ratio(const BigInt& num_in, const BigInt& den_in, unsigned sig) {
    if (sig == 0) throw std::invalid_argument("decimal_of_ratio: need at least one digit");
    if (den_in == 0) throw std::domain_error("decimal_of_ratio: zero denominator");
    bool negative = (num_in < 0) != (den_in < 0);
    BigInt N = num_in < 0 ? BigInt(-num_in) : num_in;
    BigInt D = den_in < 0 ? BigInt(-den_in) : den_in;
    if (N == 0) return "0";

    // Normalize so N/D is in [1, 10); e tracks the decimal exponent.
    int e = 0;
    while (N >= 10 * D) {
        D *= 10;
        ++e;
    }
    while (N < D) {
        N *= 10;
        --e;
    }

    BigInt scaled = N;
    for (unsigned i = 1; i < sig; ++i) scaled *= 10;
    BigInt digits = scaled / D;
    BigInt rem = scaled % D;
    if (2 * rem >= D) ++digits;  // round half-up

    std::string ds = digits.str();
    if (ds.size() > sig) {  // rounding carried into a new leading digit
        ds.pop_back();
        ++e;
    }

    std::string out;
    if (e >= 0) {
        if (static_cast<unsigned>(e) + 1 >= ds.size()) {
            out = ds + std::string(static_cast<unsigned>(e) + 1 - ds.size(), '0');
        } else {
            out = ds.substr(0, e + 1) + "." + ds.substr(e + 1);
        }
    } else {
        out = "0." + std::string(static_cast<unsigned>(-e) - 1, '0') + ds;
    }
    return negative ? "-" + out : out;
}

bool within_relative_1e15(const BigRational& value, const BigRational& reference, unsigned multiple) {
    // |v - r| <= multiple * 1e-15 * r, cross-multiplied exactly.
    BigInt lhs = value.num * reference.den - reference.num * value.den;
    if (lhs < 0) lhs = -lhs;
    BigInt scale("1000000000000000");
    BigInt rhs = BigInt(multiple) * reference.num * value.den;
    return lhs * scale <= rhs;
}

BigRational parse_decimal(const std::string& text) {
    auto dot = text.find('.');
    std::string digits;
    unsigned frac = 0;
    if (dot == std::string::npos) {
        digits = text;
    } else {
        digits = text.substr(0, dot) + text.substr(dot + 1);
        frac = static_cast<unsigned>(text.size() - dot - 1);
    }
    // cpp_int reads a leading zero as an octal prefix; strip them.
    const auto nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? "0" : digits.substr(nz);
    BigInt n(digits);
    BigInt d = 1;
    for (unsigned i = 0; i < frac; ++i) d *= 10;
    return BigRational(n, d);
}

}  // namespace selmerstat
