#include "kempner/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace kempner;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("encode, decode, member, count") {
    CHECK(run({"encode", "409"}).out == "9,0,4\n");
    CHECK(run({"--preset", "power2-no-zero", "encode", "7"}).out == "1,3\n");
    CHECK(run({"decode", "9,0,4"}).out == "409\n");
    CHECK(run({"member", "1914"}).out == "false\n");
    CHECK(run({"member", "1814"}).out == "true\n");
    CHECK(run({"count", "--upto", "500"}).out == "405\n");
    CHECK(run({"count", "--k", "1"}).out == "k=1 |A_k|=72 product_bound=81\n");
    const auto j = nlohmann::json::parse(run({"--format", "json", "count", "--k", "2"}).out);
    CHECK(j["exact"] == "648");
}

TEST_CASE("sum, budget and truncation") {
    const auto s = run({"--format", "json", "sum", "--upto", "9"});
    CHECK(s.code == cli::kExitOk);
    const auto j = nlohmann::json::parse(s.out);
    CHECK(j["sum"]["num"] == "761");
    CHECK(j["sum"]["den"] == "280");
    CHECK(run({"sum", "--upto", "100000", "--budget", "10"}).code == cli::kExitTruncated);

    ::setenv("KEMPNER_LAB_BUDGET", "5", 1);
    CHECK(run({"sum", "--upto", "100"}).code == cli::kExitTruncated);
    ::setenv("KEMPNER_LAB_BUDGET", "junk", 1);
    CHECK(run({"sum", "--upto", "100"}).code == cli::kExitInvalid);
    ::unsetenv("KEMPNER_LAB_BUDGET");
    CHECK(run({"sum", "--upto", "100"}).code == cli::kExitOk);
}

TEST_CASE("blocks CSV") {
    const auto r = run({"blocks", "--max-k", "2", "--check"});
    CHECK(r.code == cli::kExitOk);
    std::istringstream lines(r.out);
    std::string header, row0, row1;
    std::getline(lines, header);
    std::getline(lines, row0);
    std::getline(lines, row1);
    CHECK(header ==
          "k,g_k,g_k1,count,bracket_lo_num,bracket_lo_den,bracket_hi_num,bracket_hi_den,cum_lo_num,cum_lo_den,"
          "cum_hi_num,cum_hi_den");
    CHECK(row0 == "0,1,10,8,4,5,8,1,4,5,8,1");
    CHECK(row1 == "1,10,100,72,18,25,36,5,38,25,76,5");
    for (const auto& name : {"kempner10", "base-g-no-c", "power2-no-zero", "fixed-bits", "div-log", "open-boundary"})
        CHECK(run({"--preset", name, "blocks", "--max-k", "6", "--check"}).code == cli::kExitOk);
}

TEST_CASE("classify output") {
    const auto k = nlohmann::json::parse(run({"--format", "json", "classify"}).out);
    CHECK(k["verdict"] == "Convergent");
    const auto p = nlohmann::json::parse(run({"--preset", "power2-no-zero", "--format", "json", "classify"}).out);
    CHECK(p["verdict"] == "Divergent");
    CHECK(p["margin"]["threshold_index"] == 2);
    CHECK(p["margin"]["delta"]["num"] == "3");
    CHECK(p["margin"]["delta"]["den"] == "16");
    CHECK(run({"classify", "--delta", "-1"}).code == cli::kExitInvalid);
    CHECK(run({"--preset", "open-boundary", "classify"}).out.find("Inconclusive") != std::string::npos);
}

TEST_CASE("density, verify and presets") {
    CHECK(run({"density", "--at", "9,999"}).out.find("728/999") != std::string::npos);
    CHECK(run({"verify", "--upto", "100000"}).code == cli::kExitOk);
    CHECK(run({"--preset", "power2-no-zero", "verify", "--upto", "20000"}).code == cli::kExitOk);
    const auto list = run({"preset", "--list"});
    CHECK(list.out.find("div-log\n") != std::string::npos);
    const auto named = run({"preset", "--name", "kempner10"});
    CHECK(nlohmann::json::parse(named.out)["sequence"]["d"] == 10);
}

TEST_CASE("config files and errors") {
    const auto path = std::filesystem::temp_directory_path() / "kempner_cli_test.json";
    {
        std::ofstream f(path);
        f << run({"preset", "--name", "power2-no-zero"}).out;
    }
    CHECK(run({"--config", path.string(), "member", "5"}).out == "true\n");
    {
        std::ofstream f(path);
        f << R"({"sequence": {"kind": "constant", "d": 1},
                 "constraint": {"index_set": {"kind": "all"}, "forbidden": {"default": [0]}}})";
    }
    const auto bad = run({"--config", path.string(), "member", "5"});
    CHECK(bad.code == cli::kExitInvalid);
    CHECK(bad.err.find("sequence") != std::string::npos);
    std::filesystem::remove(path);

    CHECK(run({"--config", "/nonexistent/x.json", "member", "5"}).code == cli::kExitInvalid);
    CHECK(run({"frobnicate"}).code == cli::kExitInvalid);
    CHECK(run({}).code == cli::kExitInvalid);
    CHECK(run({"member", "0"}).code == cli::kExitInvalid);
    CHECK(run({"member", "abc"}).code == cli::kExitInvalid);
    CHECK(run({"--preset", "nope", "member", "5"}).code == cli::kExitInvalid);
}

TEST_CASE("deterministic output") {
    for (const auto& args : std::vector<std::vector<std::string>>{{"blocks", "--max-k", "8"},
                                                                  {"--format", "json", "blocks", "--max-k", "8"},
                                                                  {"--format", "json", "classify"}}) {
        CHECK(run(args).out == run(args).out);
    }
}
