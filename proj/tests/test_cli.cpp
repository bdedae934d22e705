#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(MONOGEN_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
    int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, BasisSimplestCubic) {
    auto r = run("basis --family quad-simplest-cubic -n 5 -m 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("1/2 + 1/2*alpha"), std::string::npos);
    EXPECT_NE(r.out.find("D_K = 3570125 = 5^3*13^4"), std::string::npos);
    EXPECT_NE(r.out.find("match"), std::string::npos);
}

TEST(Cli, BasisSexticJson) {
    auto r = run("basis --family omega-pure-sextic -m 2 --format json");
    ASSERT_EQ(r.code, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["basis"].size(), 12u);
    EXPECT_EQ(j["table"]["row"], "2");
    EXPECT_EQ(j["table"]["match"], true);
}

TEST(Cli, InvalidParameters) {
    auto r = run("basis --family quad-pure-cubic -n 7 -m 12");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(run("check --family nonsense -m 3").code, 2);
    EXPECT_EQ(run("check --family omega-pure-sextic -n 1 -m 2").code, 2);
    EXPECT_EQ(run("check --family quad-pure-quartic -m 7").code, 2);
    EXPECT_EQ(run("").code, 2);
}

TEST(Cli, TableMismatchCode) {
    // printed pure cubic row 19 is not integral once v > 1; the erratum reading matches
    auto r = run("basis --family quad-pure-cubic -n 3 -m -98 --format json");
    EXPECT_EQ(r.code, 4);
    auto j = json_of(r);
    EXPECT_EQ(j["table"]["match"], false);
    EXPECT_EQ(j["table"]["erratum_match"], true);
}

TEST(Cli, CheckVerdicts) {
    for (auto* form : {"-n -1 -m 7", "--n -1 --m 7", "--n=-1 --m=7"}) {
        auto r = run(std::string("check --family quad-pure-quartic ") + form);
        EXPECT_EQ(r.code, 0) << form;
        EXPECT_NE(r.out.find("not-monogenic"), std::string::npos) << form;
        EXPECT_NE(r.out.find("7 | 16 +- 1 fails"), std::string::npos) << form;
    }
    auto w = run("check --family quad-simplest-cubic -n 3 -m 1 --format json");
    EXPECT_EQ(w.code, 0);
    EXPECT_EQ(json_of(w)["status"], "inconclusive");
    auto x = run("check --family quad-simplest-cubic -n 5 -m 1 --format json");
    EXPECT_EQ(json_of(x)["status"], "not-monogenic");
}

TEST(Cli, CheckCsv) {
    auto r = run("check --family quad-simplest-cubic -n 5 -m 1 --format csv");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "family,n,m,status,mode,witnesses,reason");
    EXPECT_NE(r.out.find("quad-simplest-cubic,5,1,not-monogenic,expanded,13 | 125 +- 1,"), std::string::npos);
}

TEST(Cli, ScanAndSummary) {
    auto r = run("scan --family quad-simplest-quartic --n 1..4 --m 1..4 --format json");
    ASSERT_EQ(r.code, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["records"].size(), 16u);
    size_t sum = 0;
    for (auto& [k, v] : j["summary"]["counts"].items()) sum += v.get<size_t>();
    EXPECT_EQ(sum, 16u);
    // byte-stable across worker counts
    EXPECT_EQ(run("scan --family quad-pure-quartic -n -1 -m -9..9 --format json --workers 1").out,
              run("scan --family quad-pure-quartic -n -1 -m -9..9 --format json --workers 3").out);
    auto e = run("scan --family omega-pure-sextic -m 5..4 --format json");
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(json_of(e)["summary"]["total"], 0);
}

TEST(Cli, Corollary) {
    auto r = run("corollary --name quartic-i --limit 40 --format json");
    ASSERT_EQ(r.code, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["survivor_abs_m"], nlohmann::json({"3", "5", "15", "17"}));
    EXPECT_EQ(j["expectation_met"], true);
    EXPECT_EQ(run("corollary --name nonsense").code, 2);
}

TEST(Cli, Oracle) {
    auto r = run("oracle --family quad-simplest-cubic -n 5 -m 1 --trials 20 --format json");
    ASSERT_EQ(r.code, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["agree"], 20);
    EXPECT_EQ(j["identity"], true);
    EXPECT_TRUE(j["seconds"].contains("expansion"));
    auto z = run("oracle --family quad-simplest-cubic -n 5 -m 1 --trials 0");
    EXPECT_EQ(z.code, 0);
    auto d = run("oracle --family quad-pure-quartic -n -1 -m 3 --trials 2 --dump-factors --format json");
    EXPECT_TRUE(json_of(d)["factors"][0].contains("G"));
}

TEST(Cli, VerifyTables) {
    auto r = run("verify-tables --family quad-pure-quartic --samples 1 --format json");
    EXPECT_EQ(r.code, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["summary"]["rows"], 17);
    EXPECT_EQ(j["summary"]["failed"], 0);
    // pure cubic: 22 printed rows, row 17 has no valid parameters, v > 1 samples disagree with the printed conditions
    auto c = run("verify-tables --family quad-pure-cubic --samples 2 --seed 0 --format json");
    EXPECT_EQ(c.code, 4);
    auto k = json_of(c);
    EXPECT_EQ(k["summary"]["rows"], 22);
    for (auto& row : k["rows"])
        if (row["row"] == "17") EXPECT_TRUE(row["samples"].empty());
}

TEST(Cli, OutputFile) {
    std::string path = ::testing::TempDir() + "monogen_cli_out.json";
    auto r = run("check --family quad-simplest-cubic -n 5 -m 1 --format json --output " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    auto j = nlohmann::json::parse(f);
    EXPECT_EQ(j["command"], "check");
}
