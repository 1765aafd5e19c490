#include "selmerstat/hurwitz.hpp"

#include <algorithm>
#include <numeric>

#include "selmerstat/curve.hpp"
#include "selmerstat/errors.hpp"

namespace selmerstat {

static void require_valid_disc(i64 disc) {
    if (disc >= 0) throw invalid_discriminant("discriminant must be negative");
    i64 r = ((disc % 4) + 4) % 4;
    if (r != 0 && r != 1) throw invalid_discriminant("discriminant must be 0 or 1 mod 4");
}

bool is_reduced(const QuadForm& f) {
    if (f.a <= 0 || f.discriminant() >= 0) return false;
    i64 ab = f.b < 0 ? -f.b : f.b;
    if (!(ab <= f.a && f.a <= f.c)) return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

QuadForm reduce_form(QuadForm f) {
    require_valid_disc(f.discriminant());
    if (f.a <= 0) throw precondition_error("reduce_form: form must be positive definite");
    const i64 disc = f.discriminant();
    for (;;) {
        // Translate b into (-a, a].
        if (f.b > f.a || f.b <= -f.a) {
            i64 two_a = 2 * f.a;
            i64 b = f.b % two_a;
            if (b > f.a) b -= two_a;
            if (b <= -f.a) b += two_a;
            f.b = b;
            f.c = (f.b * f.b - disc) / (4 * f.a);
        }
        if (f.a > f.c) {
            f = QuadForm{f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        if (f.b == -f.a) f.b = f.a;
        return f;
    }
}

std::vector<QuadForm> enumerate_reduced_forms(i64 disc) {
    require_valid_disc(disc);
    std::vector<QuadForm> out;
    // a <= sqrt(|disc|/3), b = disc (mod 2), |b| <= a, c = (b^2 - disc)/(4a).
    for (i64 a = 1; 3 * a * a <= -disc; ++a) {
        for (i64 b = -a; b <= a; ++b) {
            if (((b - disc) % 2 + 2) % 2 != 0) continue;
            i64 num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            QuadForm f{a, b, c};
            if (is_reduced(f)) out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 hurwitz_class_number(i64 disc) { return enumerate_reduced_forms(disc).size(); }

u64 primitive_class_number(i64 disc) {
    u64 n = 0;
    for (const auto& f : enumerate_reduced_forms(disc)) {
        if (std::gcd(std::gcd(f.a, f.b < 0 ? -f.b : f.b), f.c) == 1) ++n;
    }
    return n;
}

WaterhouseSchoofReport verify_waterhouse_schoof(u64 p) {
    require_census_prime(p);
    WaterhouseSchoofReport report;
    report.p = p;
    const auto census = isogeny_census(p);
    const i64 bound = static_cast<i64>(isqrt_u64(4 * p));
    bool pass = true;
    for (i64 t = -bound; t <= bound; ++t) {
        if (t == 0 || (static_cast<u64>(t < 0 ? -t : t) % p == 0)) continue;
        WaterhouseSchoofRow row;
        row.t = static_cast<int>(t);
        row.class_count = census.class_count_with_trace(row.t);
        row.hurwitz = hurwitz_class_number(t * t - 4 * static_cast<i64>(p));
        row.match = row.class_count == row.hurwitz;
        pass = pass && row.match;
        report.rows.push_back(row);
    }
    report.pass = pass;
    return report;
}

}  // namespace selmerstat
