#include "selmerstat/ring.hpp"

#include <sstream>
#include <stdexcept>

#include "selmerstat/errors.hpp"

namespace selmerstat {

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 invmod(u64 a, u64 m) {
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
    while (new_r != 0) {
        i64 q = r / new_r;
        i64 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("invmod: element not invertible");
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 pow_checked(u64 p, unsigned k) {
    const u64 limit = 1ull << 63;
    u64 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (r > limit / p) throw std::overflow_error("pow_checked: p^k exceeds 2^63");
        r *= p;
    }
    return r;
}

Residue Residue::add(const Residue& o) const { return Residue{addmod(value, o.value, modulus), modulus}; }
Residue Residue::sub(const Residue& o) const { return Residue{submod(value, o.value, modulus), modulus}; }
Residue Residue::mul(const Residue& o) const { return Residue{mulmod(value, o.value, modulus), modulus}; }
Residue Residue::inverse() const { return Residue{invmod(value, modulus), modulus}; }
Residue Residue::pow(u64 e) const { return Residue{powmod(value, e, modulus), modulus}; }

int legendre_symbol(i64 a, u64 p) {
    if (p == 2 || !is_prime_u64(p)) {
        throw invalid_modulus("legendre_symbol: modulus must be an odd prime");
    }
    u64 r = mod_signed(a, p);
    if (r == 0) return 0;
    u64 e = powmod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

std::optional<u64> sqrt_mod_p(u64 a, u64 p) {
    if (p == 2 || !is_prime_u64(p)) {
        throw invalid_modulus("sqrt_mod_p: modulus must be an odd prime");
    }
    a %= p;
    if (a == 0) return 0;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;

    u64 r;
    if (p % 4 == 3) {
        r = powmod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        u64 q = p - 1;
        unsigned s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
        u64 m = s;
        u64 c = powmod(z, q, p);
        u64 t = powmod(a, q, p);
        r = powmod(a, (q + 1) / 2, p);
        while (t != 1) {
            u64 i = 0;
            u64 t2 = t;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, p);
                ++i;
            }
            u64 b = c;
            for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
    }
    return std::min(r, p - r);
}

u64 hensel_sqrt_lift(u64 a, u64 root, u64 p, unsigned k) {
    if (p == 2 || !is_prime_u64(p)) {
        throw invalid_modulus("hensel_sqrt_lift: modulus must be an odd prime power");
    }
    if (k < 1) throw precondition_error("hensel_sqrt_lift: k must be >= 1");
    root %= p;
    if (root == 0) throw hensel_failure("hensel_sqrt_lift: root is 0 mod p (non-simple)");
    if (mulmod(root, root, p) != a % p) {
        throw precondition_error("hensel_sqrt_lift: root^2 != a (mod p)");
    }
    const u64 pk = pow_checked(p, k);
    a %= pk;
    u64 y = root;
    u64 pj = p;  // p^j, y correct mod p^j
    for (unsigned j = 1; j < k; ++j) {
        // y <- y + t*p^j with t = (a - y^2)/p^j * (2y)^{-1} mod p
        u64 y2 = mulmod(y, y, pk);
        u64 diff = submod(a, y2, pk);
        u64 t = mulmod((diff / pj) % p, invmod((2 * y) % p, p), p);
        y = (y + static_cast<u64>(static_cast<u128>(t) * pj % pk)) % pk;
        pj *= p;
    }
    return y;
}

}  // namespace selmerstat
