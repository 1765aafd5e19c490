#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "selmerstat/rational.hpp"
#include "selmerstat/util.hpp"

namespace selmerstat {

// Census arithmetic is exact end to end; floating point never enters a count.

struct SpCounts {
    u64 sp = 0;       // anomalous nonsingular pairs (a,b) in F_p x F_p
    u64 j0 = 0;       // of those, a = 0 (j-invariant 0)
    u64 j1728 = 0;    // of those, b = 0 (j-invariant 1728)
    u64 star() const { return j0 + j1728; }
};

// OpenMP kernel, parallel over a-slices with deterministic integer reduction.
SpCounts count_sp(u64 p);
// Plain serial loop using per-pair Legendre sums; the reference the kernel is
// tested against.
SpCounts count_sp_reference(u64 p);

// Isomorphism classes with a point of order p, derived two independent ways
// (isogeny census enumeration and the Hurwitz class number formula); raises
// census_integrity_error if they ever disagree.
u64 count_sbar(u64 p);

struct ApCounts {
    u64 ap = 0;    // pairs mod p^2 with unit discriminant and p-rank 2
    u64 ap1 = 0;   // of those, p | A*B (j in {0, 1728} mod p)
    u64 ap2 = 0;   // the rest
};

enum class ApMode { fiber, exhaustive };
const char* to_string(ApMode mode);

// fiber: ap2 = p * (sp - sp_star) through the order-p fiber structure of the
// reduction map, ap1 by direct membership tests over the lifts of the
// star pairs. exhaustive: every pair mod p^2 is tested.
ApCounts count_ap(u64 p, ApMode mode);

// Serial exhaustive count driven by the p-adic oracle instead of the
// division-polynomial fast path; used as the independent reference.
ApCounts count_ap_reference(u64 p);

struct PrimeCensusRecord {
    u64 p = 0;
    u64 sbar = 0;
    u64 sp = 0;
    u64 sp_j0 = 0;
    u64 sp_j1728 = 0;
    u64 sp_star = 0;
    u64 ap = 0;
    u64 ap1 = 0;
    u64 ap2 = 0;
    std::string method;   // "fiber" or "exhaustive"
    std::string version;
};

PrimeCensusRecord compute_census(u64 p, ApMode mode);

// Exact integer invariants every record must satisfy; throws
// census_integrity_error when violated.
void validate_record(const PrimeCensusRecord& rec);

// Append-only JSON-lines cache, one record per line, integers as decimal
// strings. A recomputation with a different method appends a new line; the
// two lines' counts are cross-checked on load and append.
class CensusCache {
  public:
    explicit CensusCache(std::filesystem::path path);
    static std::filesystem::path default_path();

    const std::filesystem::path& path() const { return path_; }
    std::optional<PrimeCensusRecord> lookup(u64 p) const;
    void append(const PrimeCensusRecord& rec);
    const PrimeCensusRecord& ensure(u64 p, ApMode mode);
    const std::vector<PrimeCensusRecord>& records() const { return records_; }

  private:
    std::filesystem::path path_;
    std::vector<PrimeCensusRecord> records_;
};

std::string record_to_jsonl(const PrimeCensusRecord& rec);
PrimeCensusRecord record_from_jsonl(const std::string& line);

struct Table1Row {
    u64 p = 0;
    u64 sp = 0;
    std::string ratio;  // sp / p^2 rendered to 15 significant digits
};

std::vector<Table1Row> table1_rows(u64 min_p, u64 max_p);

struct PublishedRatio {
    u64 p;
    const char* value;
};

// The 32 reference ratios for 7 <= p < 150.
const std::array<PublishedRatio, 32>& published_table1();

struct Table1Check {
    bool pass = true;
    std::vector<u64> failed_primes;
};

// Relative error at most 5e-15 against the reference rows, compared with
// exact rational arithmetic.
Table1Check check_table1(const std::vector<Table1Row>& rows);

}  // namespace selmerstat
