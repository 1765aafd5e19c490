#pragma once

#include <optional>

#include "selmerstat/util.hpp"

namespace selmerstat {

// Plain modular arithmetic on uint64 residues. Moduli up to 2^63 so that
// products fit in a 128-bit intermediate.

inline u64 mod_signed(i64 x, u64 m) {
    i64 r = x % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

inline u64 mod_i128(i128 x, u64 m) {
    i128 r = x % static_cast<i128>(m);
    if (r < 0) r += static_cast<i128>(m);
    return static_cast<u64>(r);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

// Inverse of a mod m; throws std::domain_error when gcd(a, m) != 1.
u64 invmod(u64 a, u64 m);

bool is_prime_u64(u64 n);

// p^k with an overflow check against 2^63; throws std::overflow_error.
u64 pow_checked(u64 p, unsigned k);

// Residue in [0, m) with its modulus attached; m is a prime or prime power.
struct Residue {
    u64 value = 0;
    u64 modulus = 0;

    static Residue make(i64 v, u64 m) { return Residue{mod_signed(v, m), m}; }

    Residue add(const Residue& o) const;
    Residue sub(const Residue& o) const;
    Residue mul(const Residue& o) const;
    Residue inverse() const;
    Residue pow(u64 e) const;

    bool operator==(const Residue& o) const = default;
};

// Legendre symbol (a|p) via Euler's criterion; p must be an odd prime.
int legendre_symbol(i64 a, u64 p);

// Smaller of the two square roots of a mod p, or nullopt for a non-residue.
std::optional<u64> sqrt_mod_p(u64 a, u64 p);

// Lifts root with root^2 = a (mod p), root != 0 (mod p), to y mod p^k
// with y^2 = a (mod p^k) and y = root (mod p). Unique by Hensel's lemma.
u64 hensel_sqrt_lift(u64 a, u64 root, u64 p, unsigned k);

}  // namespace selmerstat
