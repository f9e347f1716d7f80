#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli_support.hpp"
#include "gpur/analytic.hpp"
#include "gtest/gtest.h"

namespace fs = std::filesystem;
using namespace gpur;

namespace {

struct Run {
    int status;
    std::string out;
};

Run shell(const std::string &cmd) {
    Run r{-1, ""};
    FILE *f = popen(cmd.c_str(), "r");
    if (!f)
        return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0)
        r.out.append(buf, n);
    int st = pclose(f);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

Run gpur_cmd(const std::string &args) { return shell(std::string(GPUR_BINARY) + " " + args + " 2>/dev/null"); }

// Data rows without comments or header, split on commas (no quoting in these outputs).
std::vector<std::vector<std::string>> rows(const std::string &csv) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (header) {
            header = false;
            continue;
        }
        out.push_back(detail::split(line, ','));
    }
    return out;
}

}  // namespace

TEST(cli, ranges) {
    EXPECT_EQ(cli::parse_int_range("2..6"), (std::vector<int>{2, 3, 4, 5, 6}));
    EXPECT_EQ(cli::parse_int_range("3..9:2,12"), (std::vector<int>{3, 5, 7, 9, 12}));
    EXPECT_THROW(cli::parse_int_range("6..2"), std::invalid_argument);
    auto d = cli::parse_double_range("0.9..1:0.05");
    ASSERT_EQ(d.size(), 3u);
    EXPECT_NEAR(d[2], 1, 1e-15);
    EXPECT_THROW(cli::parse_double_range("0.9..1"), std::invalid_argument);
    EXPECT_EQ(cli::expand_spec("chain:{2..4}"), (std::vector<std::string>{"chain:2", "chain:3", "chain:4"}));
    EXPECT_EQ(cli::csv_field("gnk:10,4"), "\"gnk:10,4\"");
}

TEST(cli, state_specs) {
    auto g = share(make_chain(3));
    EXPECT_EQ(cli::parse_state(g, "pure").fidelity(), 1);
    EXPECT_NEAR(cli::parse_state(g, "werner:0.5").fidelity(), 0.5 + 0.5 / 8, 1e-15);
    EXPECT_THROW(cli::parse_state(g, "werner"), std::invalid_argument);
    EXPECT_THROW(cli::parse_state(g, "thermal:0.3"), std::invalid_argument);
}

TEST(cli, lattice_table) {
    auto r = gpur_cmd("lattice table --p 0.99 --n 2..6 --out -");
    ASSERT_EQ(r.status, 0);
    auto t = rows(r.out);
    ASSERT_EQ(t.size(), 5u);
    double f[] = {0.9900, 0.9753, 0.9608, 0.9465, 0.9324};
    double fm[] = {0.9889, 0.9836, 0.9785, 0.9734, 0.9681};
    for (int i = 0; i < 5; i++) {
        EXPECT_EQ(t[i][0], std::to_string(i + 2));
        EXPECT_NEAR(std::stod(t[i][2]), f[i], 5e-4);
        EXPECT_NEAR(std::stod(t[i][3]), fm[i], 2e-3);
    }
}

TEST(cli, ghz_pcrit) {
    auto r = gpur_cmd("analytic ghz --pcrit --n 2..14 --out -");
    ASSERT_EQ(r.status, 0);
    auto t = rows(r.out);
    ASSERT_EQ(t.size(), 13u);
    for (auto &row : t)
        EXPECT_NEAR(std::stod(row[1]), std::pow(0.5, 1.0 / (std::stoi(row[0]) - 1)), 1e-15);
}

TEST(cli, gnk_pmin) {
    auto r = gpur_cmd("scan pmin --graph gnk:10,4 --model binaryAB --out -");
    ASSERT_EQ(r.status, 0);
    auto t = rows(r.out);
    ASSERT_EQ(t.size(), 1u);
    // the quoted graph field "gnk:10,4" splits in two
    EXPECT_NEAR(std::stod(t[0][3]), 0.762, 0.005);
}

TEST(cli, config_header_lists_defaults) {
    auto r = gpur_cmd("flags run --out -");
    ASSERT_EQ(r.status, 0);
    for (auto key : {"# n=4", "# p=0.97", "# steps=30", "# start=werner:0.8", "# first=P1"})
        EXPECT_NE(r.out.find(key), std::string::npos) << key;
}

TEST(cli, reruns_are_identical) {
    auto a = gpur_cmd("scan fmax --graph chain:3 --p 0.97,0.99 --jobs 1 --out -");
    auto b = gpur_cmd("scan fmax --graph chain:3 --p 0.97,0.99 --jobs 2 --out -");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(rows(a.out), rows(b.out));
}

TEST(cli, output_directory_from_environment) {
    auto dir = fs::temp_directory_path() / "gpur_cli_test_out";
    fs::remove_all(dir);
    auto r = shell("GPUR_OUT_DIR=" + dir.string() + " " + GPUR_BINARY + " analytic cluster --m 3..7:2");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(fs::exists(dir / "analytic_cluster.csv"));
    fs::remove_all(dir);
}

TEST(cli, exit_codes) {
    EXPECT_EQ(gpur_cmd("").status, 2);
    EXPECT_EQ(gpur_cmd("nonsense").status, 2);
    EXPECT_EQ(gpur_cmd("graph show --graph chain:x").status, 2);
    EXPECT_EQ(gpur_cmd("graph show --graph chain:3:closed").status, 2);
    EXPECT_EQ(gpur_cmd("purify run --p 1.5").status, 2);
    EXPECT_EQ(gpur_cmd("purify run --graph chain:3 --state werner:0.05 --p 0.9 --out /dev/null").status, 1);
    EXPECT_EQ(gpur_cmd("lattice table --p 0.8 --n 4 --out /dev/null").status, 1);
    EXPECT_EQ(gpur_cmd("purify run --graph chain:3 --out /dev/null").status, 0);
    EXPECT_EQ(gpur_cmd("scan fmin --help").status, 0);
}

TEST(cli, hashing_readout_seeded) {
    auto r = gpur_cmd("hashing readout --graph grid:3x2 --copies 4 --trials 300 --seed 7 --out -");
    ASSERT_EQ(r.status, 0);
    for (auto &row : rows(r.out))
        EXPECT_EQ(row.back(), "0");
}
