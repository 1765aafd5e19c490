#include "selmerstat/densities.hpp"

#include <cmath>
#include <stdexcept>

namespace selmerstat {

ValueWithError zeta_minus_one(unsigned s, double tol) {
    if (s < 2) throw std::domain_error("zeta: s must be >= 2");
    const double sd = static_cast<double>(s);
    // Kahan-compensated partial sum so the rounding bound stays a few ulps of
    // the total, independent of the term count.
    double partial = 0.0, comp = 0.0;
    for (u64 n = 2; n <= 4'000'000; ++n) {
        double term = std::pow(static_cast<double>(n), -sd);
        double y = term - comp;
        double t = partial + y;
        comp = (t - partial) - y;
        partial = t;
        // Tail bracket: integral bounds for sum_{m > n} m^-s.
        double hi = std::pow(static_cast<double>(n), 1.0 - sd) / (sd - 1.0);
        double lo = std::pow(static_cast<double>(n) + 1.0, 1.0 - sd) / (sd - 1.0);
        double rounding = 4e-16 * partial + 1e-300;
        if (0.5 * (hi - lo) + rounding <= tol) {
            return ValueWithError{partial + 0.5 * (hi + lo), 0.5 * (hi - lo) + rounding};
        }
    }
    throw std::runtime_error("zeta: tolerance unreachable within term budget");
}

ValueWithError zeta_value(unsigned s, double tol) {
    auto zm1 = zeta_minus_one(s, tol);
    return ValueWithError{1.0 + zm1.value, zm1.error + 3e-16};
}

double delaunay_share(u64 p) {
    if (p < 5) throw std::domain_error("delaunay_share: p must be >= 5");
    double prod = 1.0;
    const double pd = static_cast<double>(p);
    for (int i = 1;; ++i) {
        double factor = std::pow(pd, -(2.0 * i - 1.0));
        if (factor < 1e-15) break;
        prod *= 1.0 - factor;
    }
    return 1.0 - prod;
}

static const char* kConditionalNote =
    "conditional bound: assumes finiteness of Sha at p and the Delaunay distribution throughout; "
    "the rank-1 variant additionally inherits cotorsion/regulator hypotheses that are not checked here";

static DensityBoundReport assemble(const PrimeCensusRecord& rec, const std::string& theorem,
                                   const std::string& symbol, u64 count, double census_den,
                                   double e5_term, bool e5_heuristic) {
    DensityBoundReport r;
    r.p = rec.p;
    r.theorem = theorem;
    r.census_symbol = symbol;
    r.census_count = count;

    const auto z10 = zeta_value(10);
    const auto zp1 = zeta_minus_one(static_cast<unsigned>(rec.p), std::pow(2.0, -static_cast<double>(rec.p)) * 1e-3 + 1e-300);

    r.census_term = z10.value * (static_cast<double>(count) / census_den);
    r.delaunay_term = delaunay_share(rec.p);
    r.tamagawa_term = zp1.value;
    r.e5_term = e5_term;
    r.e5_heuristic = e5_heuristic;
    r.total = r.census_term + r.delaunay_term + r.tamagawa_term + r.e5_term;
    r.tail_error = z10.error * (static_cast<double>(count) / census_den) + 1e-14 + zp1.error +
                   8e-16 * (1.0 + r.total);
    r.vacuous = r.total >= 1.0;
    r.disclaimer = kConditionalNote;
    return r;
}

DensityBoundReport bound_selmer_rank0(const PrimeCensusRecord& rec) {
    const double p2 = static_cast<double>(rec.p) * static_cast<double>(rec.p);
    return assemble(rec, "4.4", "sp", rec.sp, p2, 0.0, false);
}

DensityBoundReport bound_fine_rank0(const PrimeCensusRecord& rec) {
    const double p4 = std::pow(static_cast<double>(rec.p), 4.0);
    return assemble(rec, "4.6", "ap", rec.ap, p4, 0.0, false);
}

DensityBoundReport bound_fine_rank1(const PrimeCensusRecord& rec, std::optional<double> e5_density) {
    double e5 = e5_density.value_or(1.0 / (2.0 * static_cast<double>(rec.p)));
    if (e5 < 0.0 || e5 > 1.0) throw std::invalid_argument("e5 density must lie in [0,1]");
    const double p4 = std::pow(static_cast<double>(rec.p), 4.0);
    return assemble(rec, "4.8", "ap", rec.ap, p4, e5, !e5_density.has_value());
}

}  // namespace selmerstat
