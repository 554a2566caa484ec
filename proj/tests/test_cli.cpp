#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// Integration tests against the built binary (path injected by CMake).

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
};

CmdResult run(const std::string& args) {
    std::string cmd = std::string(LPLS_BIN) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {};
    CmdResult r;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string tmp_path(const std::string& name) {
    return std::string(::testing::TempDir()) + name;
}

} // namespace

TEST(Cli, GenIsByteDeterministic) {
    std::string f1 = tmp_path("g1.cmat"), f2 = tmp_path("g2.cmat");
    ASSERT_EQ(run("gen --rows 6 --cols 3 --cond 10 --seed 5 -o " + f1).status, 0);
    ASSERT_EQ(run("gen --rows 6 --cols 3 --cond 10 --seed 5 -o " + f2).status, 0);
    std::string a = slurp(f1);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(f2));
    EXPECT_NE(a.find("%%CMAT 6 3"), std::string::npos);
}

TEST(Cli, BoundScalesWithMantissaBits) {
    std::string f = tmp_path("gb.cmat");
    ASSERT_EQ(run("gen --rows 8 --cols 8 --cond 1 --seed 11 -o " + f).status, 0);
    CmdResult b10 = run("bound " + f + " --mantissa-bits 10 --csv");
    CmdResult b23 = run("bound " + f + " --mantissa-bits 23 --csv");
    ASSERT_EQ(b10.status, 0);
    ASSERT_EQ(b23.status, 0);

    auto last_field = [](const std::string& csv) {
        std::string row = csv.substr(csv.find('\n') + 1);
        return std::stod(row.substr(row.rfind(',') + 1));
    };
    double r10 = last_field(b10.out), r23 = last_field(b23.out);
    EXPECT_NEAR(r23 / r10, std::ldexp(1.0, -13), 1e-18); // eps ratio 2^-13
}

TEST(Cli, SolveIdentityHasZeroError) {
    std::string f = tmp_path("id.cmat");
    std::ofstream of(f);
    of << "%%CMAT 2 2\n1 0\n0 0\n0 0\n1 0\n";
    of.close();
    CmdResult r = run("solve " + f + " --random-rhs 1 --mantissa-bits 10");
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("rel_err:      0"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
    // Validation error: unreadable file.
    EXPECT_EQ(run("bound /nonexistent.cmat").status, 2);
    // Validation error: malformed flags.
    EXPECT_EQ(run("gen --rows").status, 2);
    EXPECT_EQ(run("solve").status, 2);

    // Numerical failure: rank-deficient matrix surfaces as exit 3.
    std::string f = tmp_path("rank1.cmat");
    std::ofstream of(f);
    of << "%%CMAT 2 2\n1 0\n1 0\n1 0\n1 0\n";
    of.close();
    EXPECT_EQ(run("bound " + f).status, 3);

    // Help is a success.
    EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, SweepWritesCsvAndSvg) {
    std::string csv = tmp_path("sw.csv"), svg = tmp_path("sw.svg");
    CmdResult r = run("sweep --rows 6 --cols 6 --cond-min 1 --cond-max 10 "
                      "--cond-points 3 --trials 5 --mantissa-bits 10 --seed 3 -o " +
                      csv + " --svg " + svg);
    ASSERT_EQ(r.status, 0) << r.out;
    std::string c = slurp(csv);
    EXPECT_NE(c.find("cond_target,"), std::string::npos);
    EXPECT_EQ(std::count(c.begin(), c.end(), '\n'), 4); // header + 3 rows
    EXPECT_NE(slurp(svg).find("</svg>"), std::string::npos);
}
