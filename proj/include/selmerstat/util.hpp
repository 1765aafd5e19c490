#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace selmerstat {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr const char* kVersion = "0.1.0";

// SplitMix64: keyed substreams, one per sample index, so parallel draws
// never depend on scheduling.
inline u64 splitmix64(u64& state) {
    state += 0x9E3779B97F4A7C15ull;
    u64 z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class SplitMix {
  public:
    explicit SplitMix(u64 seed) : state_(seed) {}

    static SplitMix substream(u64 seed, u64 index) {
        u64 s = seed ^ (0x9E3779B97F4A7C15ull * (index + 1));
        splitmix64(s);
        return SplitMix(s);
    }

    u64 next() { return splitmix64(state_); }

    // Uniform in [0, bound), rejection sampling, no modulo bias.
    u64 below(u64 bound) {
        const u64 q = UINT64_MAX / bound;
        const u64 cap = q * bound;
        for (;;) {
            u64 r = next();
            if (r < cap) return r / q;
        }
    }

    // Uniform in [lo, hi] inclusive.
    i64 range(i64 lo, i64 hi) {
        return lo + static_cast<i64>(below(static_cast<u64>(hi - lo) + 1));
    }

  private:
    u64 state_;
};

std::vector<u64> primes_up_to(u64 n);
std::vector<u64> primes_in(u64 lo, u64 hi);

std::string to_string_u128(u128 v);
std::string to_string_i128(i128 v);

u64 isqrt_u64(u64 n);

// Parses "a..b" into an inclusive pair; throws std::invalid_argument.
std::pair<u64, u64> parse_range(const std::string& text);

}  // namespace selmerstat
