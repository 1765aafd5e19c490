#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "selmerstat/errors.hpp"
#include "selmerstat/ring.hpp"
#include "selmerstat/util.hpp"

using namespace selmerstat;

TEST_CASE("legendre symbol on small cases") {
    CHECK(legendre_symbol(4, 7) == 1);
    CHECK(legendre_symbol(0, 7) == 0);

    // Independent oracle: the nonzero squares mod 7 are exactly {1, 2, 4}.
    std::set<u64> squares;
    for (u64 x = 1; x < 7; ++x) squares.insert(x * x % 7);
    CHECK(squares == std::set<u64>{1, 2, 4});
    CHECK(squares.count(3) == 0);
    CHECK(legendre_symbol(3, 7) == -1);
}

TEST_CASE("legendre symbol rejects bad moduli") {
    CHECK_THROWS_AS(legendre_symbol(1, 8), invalid_modulus);
    CHECK_THROWS_AS(legendre_symbol(1, 15), invalid_modulus);
    CHECK_THROWS_AS(legendre_symbol(1, 2), invalid_modulus);
}

TEST_CASE("legendre symbol is multiplicative, exhaustive for p <= 100") {
    for (u64 p : primes_in(3, 100)) {
        for (i64 a = 0; a < static_cast<i64>(p); ++a) {
            for (i64 b = 0; b < static_cast<i64>(p); ++b) {
                CHECK(legendre_symbol(a, p) * legendre_symbol(b, p) == legendre_symbol(a * b, p));
            }
        }
    }
}

TEST_CASE("sqrt_mod_p on the worked examples") {
    CHECK(sqrt_mod_p(4, 7) == 2);  // the smaller of {2, 5}
    auto r = sqrt_mod_p(2, 7);
    REQUIRE(r.has_value());
    CHECK(*r * *r % 7 == 2);
    CHECK(*r == 3);
    CHECK_FALSE(sqrt_mod_p(3, 7).has_value());
    CHECK(sqrt_mod_p(0, 11) == 0);
}

TEST_CASE("sqrt_mod_p round-trips every square, p <= 100") {
    for (u64 p : primes_in(3, 100)) {
        for (u64 r = 1; r < p; ++r) {
            auto s = sqrt_mod_p(mulmod(r, r, p), p);
            REQUIRE(s.has_value());
            CHECK((*s == r || *s == p - r));
            CHECK(*s == std::min(r, p - r));
        }
    }
}

TEST_CASE("hensel lift of square roots") {
    CHECK(hensel_sqrt_lift(4, 2, 7, 2) == 2);
    u64 y = hensel_sqrt_lift(2, 3, 7, 2);
    CHECK(y == 10);
    CHECK(y * y % 49 == 2);
    CHECK_THROWS_AS(hensel_sqrt_lift(0, 0, 7, 2), hensel_failure);
    CHECK_THROWS_AS(hensel_sqrt_lift(2, 1, 7, 2), precondition_error);  // 1^2 != 2 mod 7
}

TEST_CASE("hensel lift squares back exhaustively, p <= 13, k <= 4") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
        for (unsigned k = 1; k <= 4; ++k) {
            const u64 pk = pow_checked(p, k);
            for (u64 r = 1; r < p; ++r) {
                // Any residue a = r^2 mod p lifts along each of its p^{k-1} square
                // classes; check the canonical one a = r^2 as an integer mod p^k.
                const u64 a = mulmod(r, r, pk);
                const u64 y = hensel_sqrt_lift(a, r, p, k);
                CHECK(mulmod(y, y, pk) == a);
                CHECK(y % p == r % p);
            }
        }
    }
}

TEST_CASE("residue wrapper stays reduced") {
    auto x = Residue::make(-3, 7);
    CHECK(x.value == 4);
    CHECK(x.mul(x).value == 2);
    CHECK(x.add(Residue::make(3, 7)).value == 0);
    CHECK(x.inverse().mul(x).value == 1);
}

TEST_CASE("deterministic Miller-Rabin agrees with trial division below 20000") {
    auto naive = [](u64 n) {
        if (n < 2) return false;
        for (u64 d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
        }
        return true;
    };
    for (u64 n = 0; n < 20000; ++n) CHECK(is_prime_u64(n) == naive(n));
}
