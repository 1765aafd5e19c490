#include "selmerstat/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <json.hpp>
#include <omp.h>
#include <ostream>
#include <sstream>

#include "selmerstat/census.hpp"
#include "selmerstat/curve.hpp"
#include "selmerstat/densities.hpp"
#include "selmerstat/errors.hpp"
#include "selmerstat/global.hpp"
#include "selmerstat/hurwitz.hpp"
#include "selmerstat/lift.hpp"
#include "selmerstat/sieve.hpp"
#include "selmerstat/util.hpp"
#include "selmerstat/verify.hpp"

namespace selmerstat {

namespace {

using nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Common {
    std::string cache_path;
    int threads = 0;
    bool json = false;
    bool csv = false;

    CensusCache open_cache() const {
        return CensusCache(cache_path.empty() ? CensusCache::default_path()
                                              : std::filesystem::path(cache_path));
    }
};

void log_config(std::ostream& err, const std::string& line) {
    err << "selmerstat " << kVersion << " | " << line << "\n";
}

ordered_json json_header(const std::string& command) {
    ordered_json j;
    j["schema"] = std::string("selmerstat.") + command + ".v1";
    j["version"] = kVersion;
    return j;
}

ordered_json record_json(const PrimeCensusRecord& rec) {
    ordered_json j;
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
    return j;
}

int cmd_hurwitz(i64 disc, const Common& common, std::ostream& out) {
    const auto forms = enumerate_reduced_forms(disc);
    if (common.json) {
        auto j = json_header("hurwitz");
        j["disc"] = disc;
        j["h"] = forms.size();
        auto arr = ordered_json::array();
        for (const auto& f : forms) arr.push_back({f.a, f.b, f.c});
        j["forms"] = arr;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "H(" << disc << ") = " << forms.size() << "\n";
    for (const auto& f : forms) {
        out << "  (" << f.a << ", " << f.b << ", " << f.c << ")\n";
    }
    return 0;
}

int cmd_census(u64 p, ApMode mode, bool force, const Common& common, std::ostream& out) {
    require_census_prime(p);
    if (p >= 500 && !force) {
        throw std::invalid_argument("census: p >= 500 needs --force (minutes of CPU)");
    }
    if (mode == ApMode::exhaustive && p > 13 && !force) {
        throw std::invalid_argument("census: exhaustive mode beyond p = 13 needs --force (p^4 tests)");
    }
    auto cache = common.open_cache();
    const PrimeCensusRecord rec = cache.ensure(p, mode);
    if (common.csv) {
        out << "p,sbar,sp,sp_j0,sp_j1728,ap,ap1,ap2\n";
        out << rec.p << "," << rec.sbar << "," << rec.sp << "," << rec.sp_j0 << ","
            << rec.sp_j1728 << "," << rec.ap << "," << rec.ap1 << "," << rec.ap2 << "\n";
        return 0;
    }
    if (common.json) {
        auto j = json_header("census");
        j["record"] = record_json(rec);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "p = " << rec.p << "\n"
        << "sbar = " << rec.sbar << "\n"
        << "sp = " << rec.sp << " (j0: " << rec.sp_j0 << ", j1728: " << rec.sp_j1728 << ")\n"
        << "ap = " << rec.ap << " (ap1: " << rec.ap1 << ", ap2: " << rec.ap2 << ")\n"
        << "method = " << rec.method << "\n";
    return 0;
}

int cmd_table1(u64 min_p, u64 max_p, bool check, const Common& common, std::ostream& out) {
    const auto rows = table1_rows(min_p, max_p);
    if (common.json) {
        auto j = json_header("table1");
        auto arr = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json r;
            r["p"] = row.p;
            r["sp"] = std::to_string(row.sp);
            r["ratio"] = row.ratio;
            arr.push_back(r);
        }
        j["rows"] = arr;
        if (check) {
            const auto res = check_table1(rows);
            j["check_pass"] = res.pass;
            j["failed_primes"] = res.failed_primes;
            out << j.dump(2) << "\n";
            return res.pass ? 0 : 1;
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    for (const auto& row : rows) {
        out << row.p << " " << row.ratio << "\n";
    }
    if (check) {
        const auto res = check_table1(rows);
        if (!res.pass) {
            for (u64 p : res.failed_primes) out << "regression failure at p=" << p << "\n";
            return 1;
        }
        out << "table1 check: all " << published_table1().size() << " reference rows match\n";
    }
    return 0;
}

int cmd_scan(i64 a, i64 b, u64 Y, const Common& common, std::ostream& out) {
    const auto report = scan_primes(a, b, Y);
    if (common.json) {
        auto j = json_header("scan");
        j["a"] = report.a;
        j["b"] = report.b;
        j["Y"] = report.Y;
        j["anomalous"] = report.anomalous;
        j["local_torsion"] = report.local_torsion;
        j["bad"] = report.bad;
        out << j.dump(2) << "\n";
        return 0;
    }
    auto list = [&](const char* label, const std::vector<u64>& v) {
        out << label << ":";
        for (u64 p : v) out << " " << p;
        out << "\n";
    };
    out << "curve y^2 = x^3 + " << a << "x + " << b << ", primes 5.." << Y << "\n";
    list("anomalous", report.anomalous);
    list("local_torsion", report.local_torsion);
    list("bad", report.bad);
    return 0;
}

int cmd_verdict(i64 a, i64 b, const FineSelmerInputs& inputs, const Common& common,
                std::ostream& out) {
    const auto verdict = fine_selmer_verdict(a, b, inputs);
    if (common.json) {
        auto j = json_header("verdict");
        j["a"] = a;
        j["b"] = b;
        j["p"] = inputs.p;
        j["rank"] = inputs.rank;
        j["finite"] = verdict.finite;
        j["reason"] = verdict.reason;
        j["local_torsion"] = verdict.local_torsion;
        j["bad_set"] = verdict.bad_set;
        out << j.dump(2) << "\n";
        return 0;
    }
    if (verdict.finite) {
        out << "verdict: finite (mu = 0, lambda = 0)\n";
    } else {
        out << "verdict: inconclusive (" << verdict.reason << ")\n";
    }
    out << "local torsion prime: " << (verdict.local_torsion ? "yes" : "no") << "\n";
    out << "bad set:";
    for (u64 q : verdict.bad_set) out << " " << q;
    out << "\n";
    return 0;
}

int cmd_bounds(u64 p, const std::string& theorem, std::optional<double> e5, const Common& common,
               std::ostream& out) {
    auto cache = common.open_cache();
    const PrimeCensusRecord rec = cache.ensure(p, ApMode::fiber);
    DensityBoundReport report;
    if (theorem == "4.4") {
        report = bound_selmer_rank0(rec);
    } else if (theorem == "4.6") {
        report = bound_fine_rank0(rec);
    } else if (theorem == "4.8") {
        report = bound_fine_rank1(rec, e5);
    } else {
        throw std::invalid_argument("bounds: theorem must be one of 4.4, 4.6, 4.8");
    }
    if (common.json) {
        auto j = json_header("bounds");
        j["p"] = report.p;
        j["theorem"] = report.theorem;
        j["census_symbol"] = report.census_symbol;
        j["census_count"] = std::to_string(report.census_count);
        j["census_term"] = report.census_term;
        j["delaunay_term"] = report.delaunay_term;
        j["tamagawa_term"] = report.tamagawa_term;
        j["e5_term"] = report.e5_term;
        j["e5_heuristic"] = report.e5_heuristic;
        j["total"] = report.total;
        j["tail_error"] = report.tail_error;
        j["vacuous"] = report.vacuous;
        j["disclaimer"] = report.disclaimer;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "upper density bound, variant " << report.theorem << ", p = " << report.p << "\n";
    out << "  census term    = " << fmt_double(report.census_term) << "  (" << report.census_symbol
        << " = " << report.census_count << ")\n";
    out << "  delaunay term  = " << fmt_double(report.delaunay_term) << "\n";
    out << "  tamagawa term  = " << fmt_double(report.tamagawa_term) << "\n";
    if (report.theorem == "4.8") {
        out << "  e5 term        = " << fmt_double(report.e5_term)
            << (report.e5_heuristic ? "  (heuristic 1/(2p))" : "") << "\n";
    }
    out << "  total          = " << fmt_double(report.total) << " +/- "
        << fmt_double(report.tail_error) << "\n";
    if (report.vacuous) out << "  note: total >= 1, the bound is vacuous\n";
    out << "  " << report.disclaimer << "\n";
    return 0;
}

int cmd_sieve(const SieveConfig& cfg, const Common& common, std::ostream& out) {
    auto cache = common.open_cache();
    for (u64 p : primes_in(5, cfg.Y)) cache.ensure(p, ApMode::fiber);
    const auto rep = run_sieve_experiment(cfg, cache);
    if (common.csv) {
        out << "beta,observed_fraction,chebyshev_ceiling\n";
        for (const auto& band : rep.bands) {
            out << fmt_double(band.beta) << "," << fmt_double(band.observed_fraction) << ","
                << fmt_double(band.chebyshev_ceiling) << "\n";
        }
        return 0;
    }
    if (common.json) {
        auto j = json_header("sieve");
        j["Y"] = rep.Y;
        j["box_c"] = rep.box_c;
        j["box_d"] = rep.box_d;
        j["exhaustive"] = rep.exhaustive;
        j["minimal_only"] = rep.minimal_only;
        j["seed"] = rep.seed;
        j["samples"] = rep.sample_count;
        j["p_y"] = rep.p_y.fraction_string();
        j["p_y_decimal"] = rep.p_y_decimal;
        j["sum_counts"] = rep.sum_counts;
        j["sum_sq_counts"] = to_string_u128(rep.sum_sq_counts);
        j["empirical_mean"] = rep.empirical_mean;
        j["empirical_variance"] = rep.empirical_variance;
        j["mean_square_ratio"] = rep.mean_square_ratio;
        auto arr = ordered_json::array();
        for (const auto& band : rep.bands) {
            ordered_json bj;
            bj["beta"] = band.beta;
            bj["outside"] = band.outside;
            bj["observed_fraction"] = band.observed_fraction;
            bj["chebyshev_ceiling"] = band.chebyshev_ceiling;
            arr.push_back(bj);
        }
        j["bands"] = arr;
        if (rep.exact_mean_available) {
            j["exact_mean"] = rep.exact_mean.fraction_string();
            j["exact_mean_matches"] = rep.exact_mean_matches;
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "P(" << rep.Y << ") = " << rep.p_y.fraction_string() << " = " << rep.p_y_decimal << "\n";
    out << "samples = " << rep.sample_count << (rep.exhaustive ? " (exhaustive grid)" : "") << "\n";
    out << "mean P(Y;m) = " << fmt_double(rep.empirical_mean)
        << ", variance = " << fmt_double(rep.empirical_variance)
        << ", mean-square ratio = " << fmt_double(rep.mean_square_ratio) << "\n";
    for (const auto& band : rep.bands) {
        out << "  beta " << fmt_double(band.beta) << ": outside " << band.outside << " ("
            << fmt_double(band.observed_fraction)
            << "), ceiling = " << fmt_double(band.chebyshev_ceiling) << "\n";
    }
    if (rep.exact_mean_available) {
        out << "exact grid mean = " << rep.exact_mean.fraction_string()
            << (rep.exact_mean_matches ? " = P(Y)" : " != P(Y) (UNEXPECTED)") << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& which, u64 lo, u64 hi, u64 seed, std::ostream& out) {
    std::vector<CheckResult> results;
    auto clamp_list = [&](std::vector<u64> primes) {
        std::vector<u64> kept;
        for (u64 p : primes) {
            if (p >= lo && p <= hi) kept.push_back(p);
        }
        return kept;
    };
    const bool all = which == "all";
    if (all || which == "waterhouse-schoof") {
        results.push_back(check_waterhouse_schoof(lo, hi));
    }
    if (all || which == "fibers") {
        results.push_back(check_fibers(clamp_list({5, 7, 11, 13})));
    }
    if (all || which == "lemma-rank") {
        results.push_back(check_lemma_rank(clamp_list({5, 7})));
    }
    if (all || which == "oracle-equivalence") {
        results.push_back(check_oracle_equivalence(clamp_list({5, 7}),
                                                   clamp_list(primes_in(11, std::min<u64>(hi, 47))),
                                                   1000, seed));
    }
    if (all || which == "table1") {
        results.push_back(check_table1_rows(std::max<u64>(hi, 150)));
    }
    if (results.empty()) {
        throw std::invalid_argument(
            "verify: unknown check (use waterhouse-schoof, fibers, lemma-rank, "
            "oracle-equivalence, table1 or all)");
    }
    bool pass = true;
    for (const auto& res : results) {
        for (const auto& line : res.lines) out << res.name << ": " << line << "\n";
        out << res.name << ": " << (res.pass ? "PASS" : "FAIL") << "\n";
        pass = pass && res.pass;
    }
    return pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact censuses, class numbers and density bounds for elliptic-curve local torsion"};
    app.set_version_flag("--version", std::string("selmerstat ") + kVersion);
    app.require_subcommand(1);

    Common common;

    auto add_common = [&](CLI::App* sub, bool with_csv = true) {
        sub->add_option("--cache", common.cache_path, "census cache path (JSON lines)");
        sub->add_option("--threads", common.threads, "worker threads (default: all cores)");
        sub->add_flag("--json", common.json, "JSON output");
        if (with_csv) sub->add_flag("--csv", common.csv, "CSV output");
    };

    // hurwitz
    i64 disc = 0;
    auto* hurwitz = app.add_subcommand("hurwitz", "Hurwitz class number and reduced forms");
    hurwitz->add_option("--disc", disc, "negative discriminant, 0 or 1 mod 4")->required();
    add_common(hurwitz, false);

    // census
    u64 census_p = 0;
    std::string mode_name = "fiber";
    bool exact_ap = false, force = false;
    auto* census = app.add_subcommand("census", "exact per-prime counts");
    census->add_option("--prime", census_p, "prime p >= 5")->required();
    census->add_option("--mode", mode_name, "fiber or exhaustive")
        ->check(CLI::IsMember({"fiber", "exhaustive"}));
    census->add_flag("--exact-ap", exact_ap, "force the exhaustive mode");
    census->add_flag("--force", force, "allow large p or large exhaustive runs");
    add_common(census);

    // table1
    u64 min_p = 7, max_p = 150;
    bool check = false;
    auto* table1 = app.add_subcommand("table1", "sp/p^2 ratios with the reference regression");
    table1->add_option("--min-p", min_p, "lowest prime (default 7)");
    table1->add_option("--max-p", max_p, "scan primes p < this bound")->required();
    table1->add_flag("--check", check, "compare against the reference rows");
    add_common(table1, false);

    // scan
    i64 scan_a = 0, scan_b = 0;
    u64 scan_y = 0;
    auto* scan = app.add_subcommand("scan", "anomalous and local-torsion primes of a curve");
    scan->add_option("--a", scan_a, "coefficient a")->required();
    scan->add_option("--b", scan_b, "coefficient b")->required();
    scan->add_option("--max-p", scan_y, "scan ceiling Y")->required();
    add_common(scan, false);

    // verdict
    i64 verdict_a = 0, verdict_b = 0;
    FineSelmerInputs inputs;
    std::string tamagawa_csv;
    auto* verdict = app.add_subcommand("verdict", "fine Selmer finiteness certificate");
    verdict->add_option("--a", verdict_a, "coefficient a")->required();
    verdict->add_option("--b", verdict_b, "coefficient b")->required();
    verdict->add_option("--prime", inputs.p, "prime p >= 5")->required();
    verdict->add_option("--rank", inputs.rank, "Mordell-Weil rank (0 or 1)")->required();
    verdict->add_option("--sha-order", inputs.sha_order, "order of Sha(E/Q)")->required();
    verdict->add_option("--tamagawa", tamagawa_csv, "comma-separated Tamagawa numbers");
    verdict->add_flag("--phi-iso", inputs.phi_iso, "assert the rank-1 completion map is an isomorphism");
    add_common(verdict, false);

    // bounds
    u64 bounds_p = 0;
    std::string theorem;
    double e5_value = -1.0;
    auto* bounds = app.add_subcommand("bounds", "upper density bounds from the census");
    bounds->add_option("--prime", bounds_p, "prime p >= 5")->required();
    bounds->add_option("--theorem", theorem, "4.4, 4.6 or 4.8")->required();
    bounds->add_option("--e5-density", e5_value, "rank-1 defect density in [0,1]");
    add_common(bounds, false);

    // sieve
    SieveConfig cfg;
    std::string betas_csv;
    auto* sieve = app.add_subcommand("sieve", "local-torsion concentration experiment");
    sieve->add_option("--y", cfg.Y, "prime ceiling Y")->required();
    sieve->add_option("--box-c", cfg.box_c, "strict bound |a| < C")->required();
    sieve->add_option("--box-d", cfg.box_d, "strict bound |b| < D")->required();
    sieve->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    sieve->add_option("--seed", cfg.seed, "sampler seed");
    sieve->add_flag("--exhaustive", cfg.exhaustive, "walk the whole grid");
    sieve->add_option("--betas", betas_csv, "comma-separated band widths (default 1,2,4,8)");
    sieve->add_flag("--minimal-only", cfg.minimal_only, "sample minimal pairs only");
    sieve->add_flag("--allow-small-box", cfg.allow_small_box, "waive the C,D > Y^4 requirement");
    add_common(sieve);

    // verify
    std::string which = "all";
    std::string range = "5..50";
    u64 verify_seed = 1;
    auto* verify = app.add_subcommand("verify", "user-runnable identity suites");
    verify->add_option("--check", which,
                       "waterhouse-schoof | fibers | lemma-rank | oracle-equivalence | table1 | all");
    verify->add_option("--prime-range", range, "inclusive range a..b (default 5..50)");
    verify->add_option("--seed", verify_seed, "seed for sampled comparisons");
    add_common(verify, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << "\n";
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << "selmerstat " << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (common.threads > 0) omp_set_num_threads(common.threads);

    try {
        if (hurwitz->parsed()) {
            log_config(err, "hurwitz --disc " + std::to_string(disc));
            return cmd_hurwitz(disc, common, out);
        }
        if (census->parsed()) {
            ApMode mode = exact_ap || mode_name == "exhaustive" ? ApMode::exhaustive : ApMode::fiber;
            log_config(err, "census --prime " + std::to_string(census_p) + " --mode " +
                                to_string(mode) + " --cache " + common.open_cache().path().string());
            return cmd_census(census_p, mode, force, common, out);
        }
        if (table1->parsed()) {
            log_config(err, "table1 --min-p " + std::to_string(min_p) + " --max-p " +
                                std::to_string(max_p) + (check ? " --check" : ""));
            return cmd_table1(min_p, max_p, check, common, out);
        }
        if (scan->parsed()) {
            log_config(err, "scan --a " + std::to_string(scan_a) + " --b " + std::to_string(scan_b) +
                                " --max-p " + std::to_string(scan_y));
            return cmd_scan(scan_a, scan_b, scan_y, common, out);
        }
        if (verdict->parsed()) {
            if (!tamagawa_csv.empty()) {
                std::stringstream ss(tamagawa_csv);
                std::string item;
                while (std::getline(ss, item, ',')) inputs.tamagawa.push_back(std::stoull(item));
            }
            log_config(err, "verdict --a " + std::to_string(verdict_a) + " --b " +
                                std::to_string(verdict_b) + " --prime " + std::to_string(inputs.p) +
                                " --rank " + std::to_string(inputs.rank) + " --sha-order " +
                                std::to_string(inputs.sha_order) + " --tamagawa " + tamagawa_csv);
            return cmd_verdict(verdict_a, verdict_b, inputs, common, out);
        }
        if (bounds->parsed()) {
            std::optional<double> e5;
            if (e5_value >= 0.0) e5 = e5_value;
            log_config(err, "bounds --prime " + std::to_string(bounds_p) + " --theorem " + theorem);
            return cmd_bounds(bounds_p, theorem, e5, common, out);
        }
        if (sieve->parsed()) {
            if (!betas_csv.empty()) {
                cfg.betas.clear();
                std::stringstream ss(betas_csv);
                std::string item;
                while (std::getline(ss, item, ',')) cfg.betas.push_back(std::stod(item));
            }
            log_config(err, "sieve --y " + std::to_string(cfg.Y) + " --box-c " +
                                std::to_string(cfg.box_c) + " --box-d " + std::to_string(cfg.box_d) +
                                (cfg.exhaustive ? " --exhaustive"
                                                : " --samples " + std::to_string(cfg.samples) +
                                                      " --seed " + std::to_string(cfg.seed)));
            return cmd_sieve(cfg, common, out);
        }
        if (verify->parsed()) {
            auto [lo, hi] = parse_range(range);
            log_config(err, "verify --check " + which + " --prime-range " + range);
            return cmd_verify(which, lo, hi, verify_seed, out);
        }
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace selmerstat
