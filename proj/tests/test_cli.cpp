#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace toehold::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        v.push_back(l);
    }
    return v;
}

std::vector<std::string> split(const std::string& row, char sep) {
    std::vector<std::string> v;
    std::stringstream in(row);
    for (std::string cell; std::getline(in, cell, sep);) {
        v.push_back(cell);
    }
    return v;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("toehold_cli_" + name)).string();
}

}  // namespace

TEST(CliParams, JsonForSingleN) {
    const auto r = run_cli({"params", "--n", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out,
              "{\"n\": 1, \"sigma\": \"2/3\", \"x0\": \"4/9\", \"p0\": \"20/27\", \"x1\": \"2/3\", "
              "\"p1\": \"8/9\", \"profit\": \"8/9\"}\n");
}

TEST(CliParams, JsonLinesParseBack) {
    const auto r = run_cli({"params", "--n-range", "1..5"});
    ASSERT_EQ(r.code, kExitOk);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 5u);
    const auto j = nlohmann::json::parse(ls[1]);
    EXPECT_EQ(j["n"], 2);
    EXPECT_EQ(j["p1"], "513/625");
    EXPECT_EQ(j["profit"], "648/625");
}

TEST(CliParams, Csv) {
    const auto r = run_cli({"params", "--n-range", "1..3", "--format", "csv", "--digits", "4"});
    ASSERT_EQ(r.code, kExitOk);
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 4u);
    EXPECT_EQ(ls[0], "n,sigma,x0,p0,x1,p1,profit,p1_minus_p0,x1_minus_x0");
    const auto row = split(ls[2], ',');
    ASSERT_EQ(row.size(), 9u);
    EXPECT_EQ(row[0], "2");
    EXPECT_EQ(row[1], "0.6000");
    EXPECT_EQ(row[5], "0.8208");  // 513/625
    EXPECT_EQ(row[6], "1.0368");  // 648/625
}

TEST(CliParams, UsageErrors) {
    EXPECT_EQ(run_cli({"params", "--n-range", "5..2"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"params", "--n-range", "0..2"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"params", "--n-range", "1-2"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"params", "--n", "0"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"params", "--n", "2", "--n-range", "1..2"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"params"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"params", "--n", "2", "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(run_cli({}).code, kExitUsage);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kExitUsage);
}

TEST(CliVerify, DefaultSuitesPass) {
    const auto r = run_cli({"verify"});
    ASSERT_EQ(r.code, kExitOk) << r.out;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 11u);
    for (const auto& l : ls) {
        const auto j = nlohmann::json::parse(l);
        EXPECT_TRUE(j["failures"].empty()) << l;
    }
    EXPECT_EQ(nlohmann::json::parse(ls[0])["n_checked"], 150);
    EXPECT_EQ(nlohmann::json::parse(ls[5])["identity"], "beta_equality");
    EXPECT_EQ(nlohmann::json::parse(ls[5])["n_checked"], 25 * 25 * 6);
}

TEST(CliVerify, SmallRangeAndErrors) {
    const auto r = run_cli({"verify", "--n-max", "1", "--beta-max", "2"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("{\"identity\": \"golden_n1\", \"n_checked\": 1, \"failures\": []}"),
              std::string::npos);
    EXPECT_EQ(run_cli({"verify", "--n-max", "0"}).code, kExitUsage);
}

TEST(CliAudit, SomeLemmaRange) {
    const auto r = run_cli({"audit", "--claims", "SOME_1,SOME_2,SOME_3,SOME_4", "--n-range", "1..300"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_EQ(lines(r.out).size(), 1200u);
}

TEST(CliAudit, ProfitBoundHolds) {
    const auto r =
        run_cli({"audit", "--claims", "PI_BOUNDS", "--n-range", "1..1", "--precision-bits", "128"});
    ASSERT_EQ(r.code, kExitOk);
    const auto j = nlohmann::json::parse(lines(r.out).at(0));
    EXPECT_EQ(j["claim"], "PI_BOUNDS");
    EXPECT_EQ(j["status"], "HOLDS");
    EXPECT_EQ(j["precision_bits"], 128);
}

TEST(CliAudit, GoldenComparison) {
    const auto ok = run_cli({"audit", "--golden", TOEHOLD_GOLDEN_PATH, "--workers", "4"});
    EXPECT_EQ(ok.code, kExitOk) << ok.err;

    std::ifstream in(TOEHOLD_GOLDEN_PATH);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string tampered = buf.str();
    const auto pos = tampered.find("HOLDS");
    ASSERT_NE(pos, std::string::npos);
    tampered.replace(pos, 5, "FAILS");
    const std::string path = temp_path("tampered.jsonl");
    std::ofstream(path) << tampered;
    const auto bad = run_cli({"audit", "--golden", path});
    EXPECT_EQ(bad.code, kExitGoldenMismatch);
    EXPECT_NE(bad.err.find("golden mismatch at line"), std::string::npos);
    std::remove(path.c_str());

    EXPECT_EQ(run_cli({"audit", "--golden", temp_path("does_not_exist")}).code, kExitUsage);
}

TEST(CliAudit, UsageErrors) {
    EXPECT_EQ(run_cli({"audit", "--precision-bits", "32"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"audit", "--claims", "NOPE"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"audit", "--n-range", "3..1"}).code, kExitUsage);
}

TEST(CliSimulate, DeterministicAcrossRunsAndWorkers) {
    const std::vector<std::string> base = {"simulate", "--n", "3",      "--strategy", "1",
                                           "--trials", "200000", "--seed", "11"};
    auto with_workers = [&](const char* w) {
        auto a = base;
        a.push_back("--workers");
        a.push_back(w);
        return run_cli(a);
    };
    const auto a = with_workers("1");
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, with_workers("1").out);
    EXPECT_EQ(a.out, with_workers("4").out);
    EXPECT_EQ(a.out, with_workers("0").out);

    const auto j = nlohmann::json::parse(a.out);
    const auto ordered = nlohmann::ordered_json::parse(a.out);
    std::vector<std::string> keys;
    for (const auto& item : ordered.items()) {
        keys.push_back(item.key());
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"n", "strategy", "sigma", "trials", "seed",
                                              "takeover_frequency", "mean_profit", "stderr_takeover",
                                              "stderr_profit", "exact_takeover", "exact_profit",
                                              "z_takeover", "z_profit"}));
    EXPECT_EQ(j["strategy"], "toehold");
    EXPECT_EQ(j["sigma"], "4/7");
    EXPECT_LE(j["z_takeover"].get<double>(), 4.0);
    EXPECT_LE(j["z_profit"].get<double>(), 4.0);
}

TEST(CliSimulate, SigmaOverride) {
    const auto r = run_cli({"simulate", "--n", "2", "--sigma", "1/2", "--trials", "1000"});
    ASSERT_EQ(r.code, kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["sigma"], "1/2");
    EXPECT_EQ(j["strategy"], "no_toehold");
    EXPECT_EQ(j["exact_profit"], "15/16");
}

TEST(CliSimulate, UsageErrors) {
    for (const char* bad : {"1", "0", "3/2", "-1/2", "x", "1/0"}) {
        EXPECT_EQ(run_cli({"simulate", "--n", "2", "--sigma", bad, "--trials", "10"}).code,
                  kExitUsage)
            << bad;
    }
    EXPECT_EQ(run_cli({"simulate", "--n", "0"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"simulate", "--strategy", "2"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"simulate", "--trials", "0"}).code, kExitUsage);
}

TEST(CliSweep, FirstRow) {
    const auto r = run_cli({"sweep", "--n-range", "1..3"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 4u);
    const auto header = split(ls[0], ',');
    ASSERT_EQ(header.size(), 22u);
    EXPECT_EQ(header[0], "n");
    EXPECT_EQ(header[1], "profit_exact");
    EXPECT_EQ(header[2], "profit_approx");
    const auto row = split(ls[1], ',');
    ASSERT_EQ(row.size(), 22u);
    EXPECT_EQ(row[1], "0.888889");
    EXPECT_EQ(row[2], "0.564190");  // 1/sqrt(pi)
    EXPECT_EQ(run_cli({"sweep"}).code, kExitUsage);
    EXPECT_EQ(run_cli({"sweep", "--n-range", "1..2", "--digits", "0"}).code, kExitUsage);
}

TEST(CliHelp, ExitsCleanly) {
    const auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("audit"), std::string::npos);
}
