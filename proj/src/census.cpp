#include "selmerstat/census.hpp"

#include <algorithm>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "selmerstat/curve.hpp"
#include "selmerstat/errors.hpp"
#include "selmerstat/hurwitz.hpp"
#include "selmerstat/lift.hpp"

namespace selmerstat {

SpCounts count_sp(u64 p) {
    require_census_prime(p);
    const auto chi = chi_table(p);
    const signed char* tab = chi.data();
    u64 sp = 0, j0 = 0, j1728 = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : sp, j0, j1728)
    for (u64 a = 0; a < p; ++a) {
        for (u64 b = 0; b < p; ++b) {
            if (discriminant_mod(a, b, p) == 0) continue;
            if (count_points_tab(a, b, p, tab) % p != 0) continue;
            ++sp;
            if (a == 0) ++j0;
            if (b == 0) ++j1728;
        }
    }
    return SpCounts{sp, j0, j1728};
}

SpCounts count_sp_reference(u64 p) {
    require_census_prime(p);
    SpCounts out;
    for (u64 a = 0; a < p; ++a) {
        for (u64 b = 0; b < p; ++b) {
            if (discriminant_mod(a, b, p) == 0) continue;
            i64 acc = 0;
            for (u64 x = 0; x < p; ++x) {
                u64 fx = (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
                acc += legendre_symbol(static_cast<i64>(fx), p);
            }
            u64 order = static_cast<u64>(static_cast<i64>(p) + 1 + acc);
            if (order % p != 0) continue;
            ++out.sp;
            if (a == 0) ++out.j0;
            if (b == 0) ++out.j1728;
        }
    }
    return out;
}

u64 count_sbar(u64 p) {
    require_census_prime(p);
    const auto census = isogeny_census(p);
    u64 enumerated = census.class_count_with_trace(1);
    if (p == 5) enumerated += census.class_count_with_trace(1 - static_cast<int>(p));

    u64 formula = hurwitz_class_number(1 - 4 * static_cast<i64>(p));
    if (p == 5) {
        formula += hurwitz_class_number(static_cast<i64>(p) * static_cast<i64>(p) + 1 -
                                        6 * static_cast<i64>(p));
    }
    if (enumerated != formula) {
        throw census_integrity_error("count_sbar: enumeration and class-number formula disagree at p=" +
                                     std::to_string(p));
    }
    return enumerated;
}

const char* to_string(ApMode mode) { return mode == ApMode::fiber ? "fiber" : "exhaustive"; }

// Anomalous pairs with a = 0 or b = 0; at most 2p candidates.
static std::vector<std::pair<u64, u64>> star_pairs(u64 p) {
    std::vector<std::pair<u64, u64>> out;
    for (u64 b = 1; b < p; ++b) {
        if (is_anomalous(0, b, p)) out.emplace_back(0, b);
    }
    for (u64 a = 1; a < p; ++a) {
        if (is_anomalous(a, 0, p)) out.emplace_back(a, 0);
    }
    return out;
}

ApCounts count_ap(u64 p, ApMode mode) {
    require_census_prime(p);
    ApCounts out;
    if (mode == ApMode::fiber) {
        const SpCounts s = count_sp(p);
        out.ap2 = p * (s.sp - s.star());
        u64 ap1 = 0;
        for (const auto& [a, b] : star_pairs(p)) {
#pragma omp parallel for schedule(dynamic) reduction(+ : ap1)
            for (u64 alpha = 0; alpha < p; ++alpha) {
                for (u64 beta = 0; beta < p; ++beta) {
                    if (is_in_Ap(a + alpha * p, b + beta * p, p)) ++ap1;
                }
            }
        }
        out.ap1 = ap1;
        out.ap = out.ap1 + out.ap2;
        return out;
    }
    const u64 p2 = p * p;
    u64 ap = 0, ap1 = 0, ap2 = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : ap, ap1, ap2)
    for (u64 A = 0; A < p2; ++A) {
        for (u64 B = 0; B < p2; ++B) {
            if (!is_in_Ap(A, B, p)) continue;
            ++ap;
            if (A % p == 0 || B % p == 0) {
                ++ap1;
            } else {
                ++ap2;
            }
        }
    }
    return ApCounts{ap, ap1, ap2};
}

ApCounts count_ap_reference(u64 p) {
    require_census_prime(p);
    ApCounts out;
    const u64 p2 = p * p;
    for (u64 A = 0; A < p2; ++A) {
        for (u64 B = 0; B < p2; ++B) {
            if (!is_in_Ap(A, B, p, RankAlgo::padic_oracle)) continue;
            ++out.ap;
            if (A % p == 0 || B % p == 0) {
                ++out.ap1;
            } else {
                ++out.ap2;
            }
        }
    }
    return out;
}

PrimeCensusRecord compute_census(u64 p, ApMode mode) {
    PrimeCensusRecord rec;
    rec.p = p;
    rec.sbar = count_sbar(p);
    const SpCounts s = count_sp(p);
    rec.sp = s.sp;
    rec.sp_j0 = s.j0;
    rec.sp_j1728 = s.j1728;
    rec.sp_star = s.star();
    const ApCounts a = count_ap(p, mode);
    rec.ap = a.ap;
    rec.ap1 = a.ap1;
    rec.ap2 = a.ap2;
    rec.method = to_string(mode);
    rec.version = kVersion;
    validate_record(rec);
    return rec;
}

void validate_record(const PrimeCensusRecord& rec) {
    const u64 p = rec.p;
    auto fail = [&](const std::string& what) {
        throw census_integrity_error("census record p=" + std::to_string(p) + ": " + what);
    };
    if (rec.sp_star != rec.sp_j0 + rec.sp_j1728) fail("sp_star != sp_j0 + sp_j1728");
    if (rec.ap != rec.ap1 + rec.ap2) fail("ap != ap1 + ap2");
    if (!(rec.ap1 < 2 * p * p * p)) fail("ap1 >= 2p^3");
    if (!(rec.ap2 <= p * rec.sp)) fail("ap2 > p*sp");
    u64 classes = hurwitz_class_number(1 - 4 * static_cast<i64>(p));
    if (p <= 5) {
        classes += hurwitz_class_number(static_cast<i64>(p * p) + 1 - 6 * static_cast<i64>(p));
    }
    if (rec.sp > ((p - 1) / 2) * classes) fail("sp exceeds the class-number bound");
}

CensusCache::CensusCache(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records_.push_back(record_from_jsonl(line));
    }
}

std::filesystem::path CensusCache::default_path() {
    if (const char* env = std::getenv("SELMER_CENSUS_CACHE")) return env;
    return "census.jsonl";
}

std::optional<PrimeCensusRecord> CensusCache::lookup(u64 p) const {
    // Newest record wins; older lines stay for audit.
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
        if (it->p == p) return *it;
    }
    return std::nullopt;
}

void CensusCache::append(const PrimeCensusRecord& rec) {
    validate_record(rec);
    for (const auto& old : records_) {
        if (old.p != rec.p) continue;
        if (old.sp != rec.sp || old.sbar != rec.sbar || old.ap != rec.ap || old.ap1 != rec.ap1 ||
            old.ap2 != rec.ap2 || old.sp_star != rec.sp_star) {
            throw census_integrity_error("cache append: conflicting counts for p=" +
                                         std::to_string(rec.p) + " (" + old.method + " vs " +
                                         rec.method + ")");
        }
    }
    records_.push_back(rec);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open census cache for append: " + path_.string());
    out << record_to_jsonl(rec) << "\n";
}

const PrimeCensusRecord& CensusCache::ensure(u64 p, ApMode mode) {
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
        if (it->p == p && it->method == to_string(mode)) return *it;
    }
    PrimeCensusRecord rec = compute_census(p, mode);
    append(rec);
    return records_.back();
}

std::string record_to_jsonl(const PrimeCensusRecord& rec) {
    nlohmann::ordered_json j;
    j["p"] = std::to_string(rec.p);
    j["sbar"] = std::to_string(rec.sbar);
    j["sp"] = std::to_string(rec.sp);
    j["sp_j0"] = std::to_string(rec.sp_j0);
    j["sp_j1728"] = std::to_string(rec.sp_j1728);
    j["sp_star"] = std::to_string(rec.sp_star);
    j["ap"] = std::to_string(rec.ap);
    j["ap1"] = std::to_string(rec.ap1);
    j["ap2"] = std::to_string(rec.ap2);
    j["method"] = rec.method;
    j["version"] = rec.version;
    return j.dump();
}

PrimeCensusRecord record_from_jsonl(const std::string& line) {
    auto j = nlohmann::json::parse(line);
    PrimeCensusRecord rec;
    auto get = [&](const char* key) { return std::stoull(j.at(key).get<std::string>()); };
    rec.p = get("p");
    rec.sbar = get("sbar");
    rec.sp = get("sp");
    rec.sp_j0 = get("sp_j0");
    rec.sp_j1728 = get("sp_j1728");
    rec.sp_star = get("sp_star");
    rec.ap = get("ap");
    rec.ap1 = get("ap1");
    rec.ap2 = get("ap2");
    rec.method = j.at("method").get<std::string>();
    rec.version = j.at("version").get<std::string>();
    return rec;
}

std::vector<Table1Row> table1_rows(u64 min_p, u64 max_p) {
    if (min_p < 5 || max_p > 10000) {
        throw std::invalid_argument("table1: prime range limited to [5, 10^4]");
    }
    const auto primes = primes_in(std::max<u64>(min_p, 5), max_p);
    std::vector<Table1Row> rows(primes.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const u64 p = primes[i];
        const u64 sp = count_sp(p).sp;
        rows[i] = Table1Row{p, sp, decimal_of_ratio(BigInt(sp), BigInt(p) * p, 15)};
    }
    return rows;
}

const std::array<PublishedRatio, 32>& published_table1() {
    static const std::array<PublishedRatio, 32> table = {{
        {7, "0.0816326530612245"},    {11, "0.0413223140495868"},  {13, "0.0710059171597633"},
        {17, "0.0276816608996540"},   {19, "0.0581717451523546"},  {23, "0.0415879017013233"},
        {29, "0.0332936979785969"},   {31, "0.0312174817898023"},  {37, "0.0306793279766253"},
        {41, "0.0118976799524093"},   {43, "0.0567874526771228"},  {47, "0.0208239022181983"},
        {53, "0.0277678889284443"},   {59, "0.0166618787704683"},  {61, "0.0349368449341575"},
        {67, "0.0147026063711294"},   {71, "0.0208292005554453"},  {73, "0.0270219553387127"},
        {79, "0.0374939913475405"},   {83, "0.0178545507330527"},  {89, "0.0222194167403106"},
        {97, "0.0255074928260176"},   {101, "0.00980296049406921"}, {103, "0.0288434348194929"},
        {107, "0.00925845051969604"}, {109, "0.0181802878545577"}, {113, "0.0263137285613595"},
        {127, "0.0169260338520677"},  {131, "0.0189382903094225"}, {137, "0.0108689860940913"},
        {139, "0.0142849748977796"},  {149, "0.0133327327597856"},
    }};
    return table;
}

Table1Check check_table1(const std::vector<Table1Row>& rows) {
    Table1Check result;
    u64 max_p = 0;
    for (const auto& row : rows) max_p = std::max(max_p, row.p);
    for (const auto& ref : published_table1()) {
        if (ref.p > max_p) continue;  // outside the computed range
        const Table1Row* found = nullptr;
        for (const auto& row : rows) {
            if (row.p == ref.p) {
                found = &row;
                break;
            }
        }
        if (!found) {
            result.pass = false;
            result.failed_primes.push_back(ref.p);
            continue;
        }
        BigRational computed(BigInt(found->sp), BigInt(ref.p) * ref.p);
        BigRational reference = parse_decimal(ref.value);
        if (!within_relative_1e15(computed, reference, 5)) {
            result.pass = false;
            result.failed_primes.push_back(ref.p);
        }
    }
    return result;
}

}  // namespace selmerstat
