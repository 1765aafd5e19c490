#pragma once

#include <vector>

#include "selmerstat/util.hpp"

namespace selmerstat {

// Positive-definite integral binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    i64 a = 0;
    i64 b = 0;
    i64 c = 0;

    i64 discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm&) const = default;
    auto operator<=>(const QuadForm&) const = default;
};

bool is_reduced(const QuadForm& f);

// Canonical SL2(Z)-reduced representative of a positive-definite form.
QuadForm reduce_form(QuadForm f);

// Every reduced form of discriminant disc (< 0, = 0 or 1 mod 4), imprimitive
// forms included, one per SL2(Z)-class, sorted lexicographically.
std::vector<QuadForm> enumerate_reduced_forms(i64 disc);

// Hurwitz class number H(disc): the raw class count, no weighting at -3, -4.
u64 hurwitz_class_number(i64 disc);

// Count of primitive reduced forms only (gcd(a,b,c) = 1); test support.
u64 primitive_class_number(i64 disc);

struct WaterhouseSchoofRow {
    int t = 0;
    u64 class_count = 0;  // N(t) from the isogeny census
    u64 hurwitz = 0;      // H(t^2 - 4p)
    bool match = false;
};

struct WaterhouseSchoofReport {
    u64 p = 0;
    std::vector<WaterhouseSchoofRow> rows;
    bool pass = false;
};

// Checks N(t) = H(t^2 - 4p) for every t with p not dividing t and t^2 < 4p.
WaterhouseSchoofReport verify_waterhouse_schoof(u64 p);

}  // namespace selmerstat
