#include <fnef/report.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace fnef;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string(FNEF_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::size_t count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST(Cli, Rank) {
    auto r = cli("rank --n 7");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "n: 7\nboundary: 56\nfcurves: 350\nrank: 42\nkernel: 14\n");
}

TEST(Cli, OutputMatchesReportSerialization) {
    EXPECT_EQ(cli("rank --n 6").out, render_text(rank_report(6)));
    EXPECT_EQ(cli("rank --n 6 --format structured").out, render(rank_report(6), true));
    EXPECT_EQ(cli("kapranov --n 6").out, render_text(kapranov_report(6)));
    EXPECT_EQ(cli("basis --params 3,5,9").out, render_text(basis_report(ParamTriple::defaults())));
}

TEST(Cli, StructuredIsJson) {
    auto r = cli("--format structured rank --n 5");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["boundary"], 10);
    EXPECT_EQ(j["rank"], 5);
}

TEST(Cli, Intersect) {
    auto r = cli("intersect --curve 'C(1|2|3|4,5,6,7)' --divisor 'D{1,2}'");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("value: 1\n"), std::string::npos);
    auto bad = cli("intersect --curve 'C(1|2|3|4,5,6)' --divisor 'D{1,2}'");
    EXPECT_EQ(bad.code, 65);
}

TEST(Cli, KeelCertificateExample) {
    auto r = cli("keel-cert --n 5 --J 1,2 --type 1,1,1,2");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("multiplicity: 6\n"), std::string::npos);
    EXPECT_NE(r.out.find("identity: PASS\n"), std::string::npos);
    auto many = cli("keel-cert --n 7 --J 1,2,3 --type 1,1,2,3 --format structured");
    EXPECT_EQ(many.code, 0);
    auto j = nlohmann::json::parse(many.out);
    EXPECT_EQ(j["split"], "1+2|1+3");
    EXPECT_EQ(j["multiplicity"], "12");
    EXPECT_EQ(j["identity"], "PASS");
}

TEST(Cli, Kapranov) {
    auto r = cli("kapranov --n 7");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("det: 32768\n"), std::string::npos);
    EXPECT_NE(r.out.find("keel_independent: PASS\n"), std::string::npos);
}

TEST(Cli, BasisSingular) {
    auto r = cli("basis --params 35,10,36");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("singular: true\n"), std::string::npos);
    EXPECT_NE(r.out.find("p_rank: 6\n"), std::string::npos);
    EXPECT_EQ(cli("basis --params 1,2").code, 65);
}

TEST(Cli, VerifyExitCodes) {
    auto dir = default_corpus_dir();
    EXPECT_EQ(cli("verify --file " + (dir / "ii.246.cert").string()).code, 0);
    EXPECT_EQ(cli("verify --file " + (dir / "ii.24.cert").string()).code, 3);
    EXPECT_EQ(cli("verify --file " + (dir / "ii.245.cert").string()).code, 2);
    auto text = read_file(dir / "ii.246.cert");
    auto at = text.find(">= 17/3");
    text.replace(at, 7, ">= 6");
    EXPECT_EQ(cli("verify --file " + temp_file("fnef_gap.cert", text).string()).code, 1);
    auto syntax = cli("verify --file " + temp_file("fnef_bad.cert", "n: 7\nbogus\n").string());
    EXPECT_EQ(syntax.code, 3);
    EXPECT_NE(syntax.out.find("status: SYNTAX\n"), std::string::npos);
}

TEST(Cli, VerifyAppendix) {
    auto r = cli("verify-appendix");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(count_lines(r.out), 16u);
    std::size_t pass = 0, repaired = 0;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);) {
        pass += line.size() > 6 && line.compare(line.size() - 6, 6, ": PASS") == 0;
        repaired += line.find(": REPAIRED") != std::string::npos;
    }
    EXPECT_EQ(pass, 10u);
    EXPECT_EQ(repaired, 6u);
    EXPECT_EQ(cli("verify-appendix").out, r.out);
}

TEST(Cli, SearchEmitsVerifiedCertificate) {
    auto path = std::filesystem::temp_directory_path() / "fnef_search.cert";
    auto r = cli("search --target 'c{1,2,4}' --set 'c{1,2,3}=-1' --emit " + path.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("optimum: 3\n"), std::string::npos);
    EXPECT_NE(r.out.find("certificate_check: PASS\n"), std::string::npos);
    auto v = cli("verify --file " + path.string());
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("implied_bound: 3\n"), std::string::npos);
}

TEST(Cli, SearchWithAssumptionsAndProblemFile) {
    auto r = cli("search --target 'c{2,4,6}' --set 'c{1,2,3}=-1' --assume 'c{1,4,5}>=-1' --assume 'c{1,4,5}<=1/6'");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("optimum: 17/3\n"), std::string::npos);
    auto p = temp_file("fnef_problem.txt", "n: 7\nminimize c{2,4,6}\nset c{1,2,3} = -1\nassume c{1,4,5} >= -1\nassume c{1,4,5} <= 1/6\n");
    EXPECT_EQ(cli("search --problem " + p.string()).out, r.out);
}

TEST(Cli, SearchNeedsNormalization) { EXPECT_EQ(cli("search --target 'c{1,2,4}'").code, 64); }

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli("").code, 64);
    EXPECT_EQ(cli("frobnicate").code, 64);
    EXPECT_EQ(cli("rank").code, 64);
    EXPECT_EQ(cli("rank --n 7 --bogus").code, 64);
    EXPECT_EQ(cli("rank --n 7 --format xml").code, 64);
}

TEST(Cli, DomainErrors) {
    EXPECT_EQ(cli("rank --n 99").code, 65);
    EXPECT_EQ(cli("keel-cert --n 7 --J 1,2 --type 1,2,2,2").code, 65);
    EXPECT_EQ(cli("verify --file /nonexistent/x.cert").code, 65);
}

TEST(Cli, ProveM07) {
    auto r = cli("prove-m07");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("verdict: PASS\n"), std::string::npos);
    EXPECT_NE(r.out.find("repaired: ii.24, ii.245, ii.267, ii.467, iii.145, iii.457\n"), std::string::npos);
}

TEST(Cli, CorpusOverride) {
    auto r = cli("--corpus /nonexistent verify-appendix");
    EXPECT_EQ(r.code, 65);
}
