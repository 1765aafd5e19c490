#include "selmerstat/util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace selmerstat {

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> sieve(n + 1, true);
    sieve[0] = sieve[1] = false;
    for (u64 i = 2; i * i <= n; ++i) {
        if (!sieve[i]) continue;
        for (u64 j = i * i; j <= n; j += i) sieve[j] = false;
    }
    for (u64 i = 2; i <= n; ++i) {
        if (sieve[i]) out.push_back(i);
    }
    return out;
}

std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi < lo) return out;
    for (u64 p : primes_up_to(hi)) {
        if (p >= lo) out.push_back(p);
    }
    return out;
}

std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string to_string_i128(i128 v) {
    if (v < 0) return "-" + to_string_u128(static_cast<u128>(-v));
    return to_string_u128(static_cast<u128>(v));
}

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::pair<u64, u64> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b");
    u64 lo = std::stoull(text.substr(0, dots));
    u64 hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("range upper bound below lower bound");
    return {lo, hi};
}

}  // namespace selmerstat
