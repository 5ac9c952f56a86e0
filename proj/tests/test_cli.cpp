#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "primeforms/cli.hpp"

using namespace primeforms;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "primeforms");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("primeforms_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST(Cli, Represent) {
    auto r = run({"represent", "--family", "E", "--q", "7", "--n", "23"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("witness (4,1)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("23 = 4^2 + 7*1^2"), std::string::npos) << r.out;

    auto none = run({"represent", "--family", "H2", "--q", "8", "--n", "7"});
    EXPECT_EQ(none.code, 0);
    EXPECT_NE(none.out.find("no representation"), std::string::npos);

    auto h1 = run({"represent", "--family", "H1", "--q", "5", "--n", "11"});
    EXPECT_NE(h1.out.find("11 = 5*2^2 - 3^2"), std::string::npos) << h1.out;
}

TEST(Cli, UsageErrors) {
    auto unknown = run({"represent", "--family", "E", "--q", "7", "--n", "23", "--bogus"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_NE(unknown.err.find("Usage"), std::string::npos) << unknown.err;
    EXPECT_TRUE(unknown.out.empty());

    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"represent", "--family", "F", "--q", "7", "--n", "23"}).code, 2);
    EXPECT_EQ(run({"represent", "--family", "E", "--q", "7", "--n", "0"}).code, 2);
    EXPECT_EQ(run({"verify", "--theorem", "thm1_E", "--q", "11", "--bound", "100"}).code, 2);
    EXPECT_EQ(run({"verify", "--theorem", "thm4_poly", "--q", "27", "--bound", "5000000"}).code, 2);
    EXPECT_EQ(run({"explore", "problem2", "--q1", "2", "--q2", "4", "--bound", "100"}).code, 2);
    EXPECT_EQ(run({"check", "--q", "7", "--p", "15"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, VerifyExitCodes) {
    auto clean = run({"verify", "--theorem", "thm1_E", "--q", "7", "--bound", "100000", "--format", "json"});
    EXPECT_EQ(clean.code, 0);
    auto j = json::parse(clean.out);
    EXPECT_TRUE(j["mismatches"].empty());
    EXPECT_EQ(j["theorem"], "thm1_E");

    auto erratum = run({"verify", "--theorem", "thm3_H2", "--q", "8", "--bound", "1000"});
    EXPECT_EQ(erratum.code, 1);
    auto e = json::parse(erratum.out);
    ASSERT_EQ(e["mismatches"].size(), 1u);
    EXPECT_EQ(e["mismatches"][0]["p"], 7);

    auto csv = run({"verify", "--theorem", "thm3_H2", "--q", "8", "--bound", "1000", "--format", "csv"});
    EXPECT_EQ(csv.code, 1);
    EXPECT_NE(csv.out.find("thm3_H2,8,H2,7,true,false"), std::string::npos);
}

TEST(Cli, VerifyWritesReportFile) {
    auto path = temp_file("report.json");
    std::filesystem::remove(path);
    auto r = run({"verify", "--theorem", "thm3_H2", "--q", "8", "--bound", "1000", "--out", path.string()});
    EXPECT_EQ(r.code, 1);  // report still written
    auto j = json::parse(slurp(path));
    EXPECT_EQ(j["mismatches"][0]["p"], 7);
    std::filesystem::remove(path);
}

TEST(Cli, RepeatedVerifyIsByteIdenticalWithoutElapsed) {
    auto strip = [](const std::string& text) {
        auto j = json::parse(text);
        j.erase("elapsed_ms");
        return j.dump();
    };
    auto a = run({"verify", "--theorem", "thm2_H1", "--q", "7", "--bound", "5000", "--workers", "1"});
    auto b = run({"verify", "--theorem", "thm2_H1", "--q", "7", "--bound", "5000", "--workers", "4"});
    EXPECT_EQ(strip(a.out), strip(b.out));
}

TEST(Cli, Check) {
    auto r = run({"check", "--q", "7", "--p", "23", "--theorem", "thm1_E"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("thm1_E q=7 p=23: predicate=true witness=(4,1) l=1 agree"), std::string::npos) << r.out;

    // without --theorem every family for q is checked; the H2(7) rule fails at 23
    auto all = run({"check", "--q", "7", "--p", "23"});
    EXPECT_EQ(all.code, 1);
    EXPECT_NE(all.out.find("thm3_H2 q=7 p=23: predicate=true witness=none DISAGREE"), std::string::npos) << all.out;

    auto bad = run({"check", "--q", "8", "--p", "7", "--theorem", "thm3_H2"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("DISAGREE"), std::string::npos);

    auto q17 = run({"check", "--q", "17", "--p", "89"});
    EXPECT_EQ(q17.code, 0);
    EXPECT_NE(q17.out.find("thm41_q17"), std::string::npos);
    EXPECT_NE(q17.out.find("l=2"), std::string::npos) << q17.out;

    EXPECT_EQ(run({"check", "--q", "26", "--p", "29"}).code, 2);
}

TEST(Cli, Explore) {
    auto p1 = run({"explore", "problem1", "--qmax", "5", "--bound", "1000"});
    EXPECT_EQ(p1.code, 0);
    auto j = json::parse(p1.out);
    EXPECT_EQ(j["verdicts"].size(), 5u);
    EXPECT_EQ(j["verdicts"][2]["first_divergence"], 2);

    auto p2 = run({"explore", "problem2", "--q1", "2", "--q2", "5", "--bound", "1000"});
    EXPECT_EQ(p2.code, 0);
    EXPECT_TRUE(json::parse(p2.out)["product_result"]["equal"].get<bool>()) << p2.out;
}

TEST(Cli, Trinity) {
    auto r = run({"trinity", "--bound", "300"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    auto j = json::parse(r.out);
    EXPECT_TRUE(j["inclusions"]["violations"].empty());
    EXPECT_EQ(run({"trinity", "--bound", "50"}).code, 2);
}

TEST(Cli, TablesExport) {
    auto path = temp_file("tables.json");
    auto r = run({"tables", "export", "--out", path.string()});
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(slurp(path));
    EXPECT_EQ(j["table_version"], table_version);
    EXPECT_EQ(j["rules"].size(), 36u);
    std::filesystem::remove(path);
}
