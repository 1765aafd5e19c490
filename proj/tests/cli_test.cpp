#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "selmerstat/cli.hpp"

using namespace selmerstat;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return RunResult{code, out.str(), err.str()};
}

std::string temp_cache(const char* tag) {
    auto path = std::filesystem::temp_directory_path() /
                (std::string("selmerstat_cli_") + tag + ".jsonl");
    std::filesystem::remove(path);
    return path.string();
}

}  // namespace

TEST_CASE("hurwitz subcommand prints the class number and forms") {
    auto r = run({"hurwitz", "--disc", "-23"});
    CHECK(r.code == 0);
    CHECK(r.out.find("H(-23) = 3") != std::string::npos);
    CHECK(r.out.find("(2, -1, 3)") != std::string::npos);
    CHECK(r.err.find("selmerstat") != std::string::npos);  // version/config line

    auto j = run({"hurwitz", "--disc", "-23", "--json"});
    CHECK(j.code == 0);
    CHECK(j.out.find("\"h\": 3") != std::string::npos);
}

TEST_CASE("unknown flags are usage errors with exit 2") {
    auto r = run({"hurwitz", "--disc", "-23", "--nonsense"});
    CHECK(r.code == 2);
    auto s = run({"census", "--prime", "9", "--cache", temp_cache("badp")});
    CHECK(s.code == 2);  // 9 is not prime
    auto t = run({"nosuchcommand"});
    CHECK(t.code == 2);
}

TEST_CASE("census csv uses the fixed header") {
    auto cache = temp_cache("censuscsv");
    auto r = run({"census", "--prime", "7", "--csv", "--cache", cache});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("p,sbar,sp,sp_j0,sp_j1728,ap,ap1,ap2\n", 0) == 0);
    std::filesystem::remove(cache);
}

TEST_CASE("census exhaustive beyond 13 needs force") {
    auto cache = temp_cache("forcewall");
    auto r = run({"census", "--prime", "17", "--mode", "exhaustive", "--cache", cache});
    CHECK(r.code == 2);
    std::filesystem::remove(cache);
}

TEST_CASE("table1 --check exits 0 on a correct build") {
    auto r = run({"table1", "--max-p", "31", "--check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("7 0.0816326530612245") != std::string::npos);
}

TEST_CASE("scan emits sorted prime arrays in json") {
    auto r = run({"scan", "--a", "3", "--b", "2", "--max-p", "10", "--json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"anomalous\": [") != std::string::npos);
    CHECK(r.out.find("\"local_torsion\"") != std::string::npos);
    CHECK(r.out.find("\"bad\"") != std::string::npos);
}

TEST_CASE("verdict subcommand reports the failing condition") {
    auto r = run({"verdict", "--a", "1", "--b", "1", "--prime", "5", "--rank", "0", "--sha-order",
                  "1", "--tamagawa", "5,2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("inconclusive (tamagawa)") != std::string::npos);
    auto s = run({"verdict", "--a", "1", "--b", "1", "--prime", "5", "--rank", "2", "--sha-order",
                  "1", "--tamagawa", "1"});
    CHECK(s.code == 1);  // out-of-scope rank
}

TEST_CASE("bounds subcommand needs a valid theorem id") {
    auto cache = temp_cache("bounds");
    auto r = run({"bounds", "--prime", "7", "--theorem", "4.6", "--cache", cache, "--json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"census_symbol\": \"ap\"") != std::string::npos);
    auto bad = run({"bounds", "--prime", "7", "--theorem", "9.9", "--cache", cache});
    CHECK(bad.code == 2);
    std::filesystem::remove(cache);
}

TEST_CASE("verify waterhouse-schoof over a small range") {
    auto r = run({"verify", "--check", "waterhouse-schoof", "--prime-range", "5..13"});
    CHECK(r.code == 0);
    CHECK(r.out.find("waterhouse-schoof: PASS") != std::string::npos);
    CHECK(r.out.find("p=7 t=1 N(t)=2 H(t^2-4p)=2 match") != std::string::npos);
}

TEST_CASE("json and csv outputs are byte-identical across reruns") {
    auto cache = temp_cache("determinism");
    std::vector<std::vector<std::string>> cases = {
        {"hurwitz", "--disc", "-47", "--json"},
        {"census", "--prime", "7", "--json", "--cache", cache},
        {"census", "--prime", "7", "--csv", "--cache", cache},
        {"table1", "--max-p", "20", "--json"},
        {"scan", "--a", "3", "--b", "2", "--max-p", "12", "--json"},
        {"verdict", "--a", "1", "--b", "1", "--prime", "5", "--rank", "0", "--sha-order", "1",
         "--tamagawa", "2", "--json"},
        {"bounds", "--prime", "7", "--theorem", "4.8", "--json", "--cache", cache},
        {"sieve", "--y", "5", "--box-c", "626", "--box-d", "626", "--samples", "300", "--seed",
         "11", "--json", "--cache", cache},
        {"sieve", "--y", "5", "--box-c", "626", "--box-d", "626", "--samples", "300", "--seed",
         "11", "--csv", "--cache", cache},
    };
    for (const auto& args : cases) {
        auto first = run(args);
        auto second = run(args);
        CHECK(first.code == 0);
        CHECK(second.code == 0);
        CHECK(first.out == second.out);
    }
    std::filesystem::remove(cache);
}
