#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "selmerstat/census.hpp"
#include "selmerstat/densities.hpp"
#include "selmerstat/util.hpp"

using namespace selmerstat;

TEST_CASE("zeta values with certified tails") {
    auto z10 = zeta_value(10);
    CHECK(z10.error <= 1e-12);
    CHECK(std::abs(z10.value - 1.000994575128) <= 1e-11);

    auto z7m1 = zeta_minus_one(7);
    CHECK(std::abs(z7m1.value - 0.008349277) <= 1e-9);
    CHECK(z7m1.error <= 1e-12);

    CHECK_THROWS_AS(zeta_value(1), std::domain_error);
}

TEST_CASE("zeta(p)-1 obeys the 2^-p (p+1)/(p-1) ceiling for 5 <= p <= 50") {
    for (u64 p : primes_in(5, 50)) {
        auto z = zeta_minus_one(static_cast<unsigned>(p), std::pow(2.0, -static_cast<double>(p)) * 1e-3);
        double ceiling = std::pow(2.0, -static_cast<double>(p)) *
                         (static_cast<double>(p) + 1.0) / (static_cast<double>(p) - 1.0);
        CHECK(z.value + z.error < ceiling);
        CHECK(z.value > 0.0);
    }
}

TEST_CASE("delaunay share at p = 5 and its asymptotics") {
    CHECK(std::abs(delaunay_share(5) - 0.2066645) <= 1e-6);
    CHECK(delaunay_share(5) > 0.2);  // first factor alone
    for (u64 p : primes_in(7, 50)) {
        double pd = static_cast<double>(p);
        double expansion_gap = std::abs(delaunay_share(p) - 1.0 / pd - 1.0 / (pd * pd * pd));
        CHECK(expansion_gap < 2.0 / (pd * pd * pd * pd));
    }
}

static PrimeCensusRecord record_for(u64 p) { return compute_census(p, ApMode::fiber); }

TEST_CASE("rank-0 Selmer bound assembles the three terms") {
    auto rec = record_for(7);
    auto rep = bound_selmer_rank0(rec);
    CHECK(rec.sp == 4);
    double expect = zeta_value(10).value * 4.0 / 49.0;
    CHECK(std::abs(rep.census_term - expect) <= 1e-15);
    CHECK(rep.total == rep.census_term + rep.delaunay_term + rep.tamagawa_term + rep.e5_term);
    CHECK(rep.census_term >= 0.0);
    CHECK(rep.delaunay_term >= 0.0);
    CHECK(rep.tamagawa_term >= 0.0);
    CHECK_FALSE(rep.disclaimer.empty());
}

TEST_CASE("rank-0 fine bound differs from the Selmer bound by the census terms exactly") {
    for (u64 p : {5ull, 7ull, 11ull}) {
        auto rec = record_for(p);
        auto full = bound_selmer_rank0(rec);
        auto fine = bound_fine_rank0(rec);
        double z10 = zeta_value(10).value;
        double pd = static_cast<double>(p);
        double lhs = fine.total - full.total;
        double rhs = z10 * (static_cast<double>(rec.ap) / (pd * pd * pd * pd) -
                            static_cast<double>(rec.sp) / (pd * pd));
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("structural decay of the fine-vs-full census terms") {
    for (u64 p : primes_in(7, 150)) {
        auto rec = compute_census(p, ApMode::fiber);
        if (rec.sp == 0) continue;
        // (ap/p^4)/(sp/p^2) <= (2p^3 + p*sp)/(p^2*sp), from the ap1/ap2 split.
        double lhs = (static_cast<double>(rec.ap) / std::pow(static_cast<double>(p), 4)) /
                     (static_cast<double>(rec.sp) / std::pow(static_cast<double>(p), 2));
        double rhs = (2.0 * std::pow(static_cast<double>(p), 3) +
                      static_cast<double>(p) * static_cast<double>(rec.sp)) /
                     (std::pow(static_cast<double>(p), 2) * static_cast<double>(rec.sp));
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("rank-1 bound adds the defect density") {
    auto rec = record_for(7);
    auto with_default = bound_fine_rank1(rec, std::nullopt);
    CHECK(with_default.e5_term == 1.0 / 14.0);
    CHECK(with_default.e5_heuristic);

    auto zero = bound_fine_rank1(rec, 0.0);
    auto fine = bound_fine_rank0(rec);
    CHECK(zero.total == fine.total);
    CHECK_FALSE(zero.e5_heuristic);

    auto one = bound_fine_rank1(rec, 1.0);
    CHECK(one.vacuous);
    CHECK_THROWS_AS(bound_fine_rank1(rec, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(bound_fine_rank1(rec, -0.5), std::invalid_argument);
}

TEST_CASE("reports are bit-identical across repeated evaluation") {
    auto rec = record_for(11);
    auto a = bound_fine_rank0(rec);
    auto b = bound_fine_rank0(rec);
    CHECK(a.census_term == b.census_term);
    CHECK(a.delaunay_term == b.delaunay_term);
    CHECK(a.tamagawa_term == b.tamagawa_term);
    CHECK(a.total == b.total);
    CHECK(a.tail_error == b.tail_error);
}
