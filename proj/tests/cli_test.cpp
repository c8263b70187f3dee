/*
 * Copyright 2026 The wmp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"

namespace wmp::test {
namespace {

namespace fs = std::filesystem;

struct Run {
    int status = -1;
    std::string out;
};

/// Runs the CLI through the shell; stderr is merged into `out` when asked.
Run wmp_cli(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + std::string(WMP_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string fix(const char* name) { return std::string(WMP_FIXTURE_DIR) + "/" + name + ".wgame"; }

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("wmp_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }
    static std::string read(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    fs::path dir_;
};

TEST_F(Cli, SolveFixedWindow) {
    auto r = wmp_cli("solve --objective fwmp --lmax 1 " + fix("FIX6"));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("winning: a b\nlosing:\n", 0), 0u) << r.out;
}

TEST_F(Cli, RequireInitFailsWhenLost) {
    auto r = wmp_cli("solve --objective fwmp --lmax 3 " + fix("FIX3") + " --require-init");
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(r.out.rfind("winning:\n", 0), 0u) << r.out;
}

TEST_F(Cli, BoundedMultiDimensionIsUnsupported) {
    auto r = wmp_cli("solve --objective bwmp " + fix("FIX5"), true);
    EXPECT_EQ(r.status, 4);
    EXPECT_NE(r.out.find("non-primitive recursive hard"), std::string::npos) << r.out;
}

TEST_F(Cli, ErrorCodes) {
    EXPECT_EQ(wmp_cli("solve --objective gw --lmax 2 " + write("bad.wgame", "wgame 1\ndims x\n")).status, 2);
    EXPECT_EQ(wmp_cli("solve --objective gw --lmax 2 " +
                      write("dead.wgame", "wgame 1\ndims 1\nstate a P1\nstate b P1\nedge a b 0\ninit a\n"))
                  .status,
              3);
    EXPECT_EQ(wmp_cli("solve --objective fwmp " + fix("FIX1")).status, 3);         // missing lmax
    EXPECT_EQ(wmp_cli("solve --objective bwmp --lmax 2 " + fix("FIX1")).status, 3);  // stray lmax
    EXPECT_EQ(wmp_cli("solve --objective fwmp --lmax 3 " + fix("FIX5"), false, "WMP_PRODUCT_CAP=4").status, 5);
    EXPECT_EQ(wmp_cli("solve --objective fwmp --lmax 3 --product-cap 4 " + fix("FIX5")).status, 5);
    EXPECT_EQ(wmp_cli("solve --objective nope " + fix("FIX1")).status, 2);
    EXPECT_EQ(wmp_cli("solve --objective gw --lmax 1 " + path("missing.wgame")).status, 3);
}

TEST_F(Cli, Thresholds) {
    EXPECT_EQ(wmp_cli("solve --objective mp --threshold -2 " + fix("FIX2")).out.rfind("winning: a\n", 0), 0u);
    EXPECT_EQ(wmp_cli("solve --objective mp --threshold 2/3 " + fix("FIX4")).out.rfind("winning: s ", 0), 0u);
    EXPECT_EQ(wmp_cli("solve --objective mp --threshold 3/4 " + fix("FIX4")).out.rfind("winning:\n", 0), 0u);
    EXPECT_EQ(wmp_cli("solve --objective tpsup --threshold -1 " + fix("FIX6")).out.rfind("winning: a b\n", 0), 0u);
    EXPECT_EQ(wmp_cli("solve --objective tpsup --threshold -1/2 " + fix("FIX6")).out.rfind("winning: b\n", 0), 0u);
    EXPECT_EQ(wmp_cli("solve --objective mp --threshold 1,2 " + fix("FIX2")).status, 3);
}

TEST_F(Cli, SynthThenVerify) {
    const auto strat = path("fix4.wstrat");
    auto s = wmp_cli("synth --objective fwmp --lmax 4 " + fix("FIX4") + " -o " + strat);
    EXPECT_EQ(s.status, 0);
    EXPECT_NE(s.out.find("memory: "), std::string::npos);
    auto ok = wmp_cli("verify " + fix("FIX4") + " " + strat + " --objective fwmp --lmax 4");
    EXPECT_EQ(ok.status, 0);
    EXPECT_EQ(ok.out.rfind("PASS\n", 0), 0u);
    auto bad = wmp_cli("verify " + fix("FIX4") + " " + strat + " --objective dfwmp --lmax 3");
    EXPECT_EQ(bad.status, 1);
    EXPECT_NE(bad.out.find("counterexample: stem:"), std::string::npos) << bad.out;
    EXPECT_EQ(wmp_cli("synth --objective fwmp --lmax 3 " + fix("FIX3")).status, 1);
    auto b = wmp_cli("synth --objective bwmp " + fix("FIX4"));
    EXPECT_NE(b.out.find("memory: 1\n"), std::string::npos);
}

TEST_F(Cli, ReduceWritesProductAndSidecar) {
    const auto out = path("p.wgame");
    EXPECT_EQ(wmp_cli("reduce --lmax 1 " + fix("FIX6") + " -o " + out).status, 0);
    auto g = parse_game(read(out));
    EXPECT_EQ(g.num_states(), 3);
    EXPECT_EQ(g.id(*g.init()), "a__0_1");
    EXPECT_EQ(read(out + ".bad"), "bad z_b\n");
    // The product solved as co-Buchi agrees with the direct solver.
    StateSet bad(g.num_states());
    bad.insert(g.require("z_b"));
    EXPECT_TRUE(solve_cobuchi(g, bad).full());
}

TEST_F(Cli, GenIsDeterministic) {
    const std::string args = "gen --states 5 --dims 2 --max-weight 3 --min-out 1 --max-out 3 --seed 11";
    auto a = wmp_cli(args), b = wmp_cli(args);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("# wmp gen: xoshiro256**", 0), 0u);
    auto g = parse_game(a.out);
    testkit::GenSpec s;
    s.states = 5;
    s.dims = 2;
    s.max_abs_weight = 3;
    s.max_out = 3;
    s.seed = 11;
    EXPECT_TRUE(g == testkit::gen_random_game(s));
}

TEST_F(Cli, Oracle) {
    EXPECT_EQ(wmp_cli("oracle --objective gw --lmax 3 " + fix("FIX3")).out, "winning: c y1 y2\n");
    EXPECT_EQ(wmp_cli("oracle --objective fwmp --lmax 3 --player 2 " + fix("FIX3")).out, "winning: c x y1 y2\n");
    EXPECT_EQ(wmp_cli("oracle --objective tpsup " + fix("FIX6")).out, "winning: b\n");
    EXPECT_EQ(wmp_cli("oracle --objective fwmp --lmax 4 --product-cap 3 " + fix("FIX4")).status, 5);
}

TEST_F(Cli, CheckReportsSuites) {
    auto r = wmp_cli("check --suite strictness-witness --suite update-count");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("SUITE strictness-witness PASS wgame 1; dims 1; state c P2"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("SUITE update-count PASS"), std::string::npos);
    auto planted = wmp_cli("check --suite mp-reduction " + fix("FIX3"));
    EXPECT_EQ(planted.status, 0);
    EXPECT_EQ(wmp_cli("check --suite nope").status, 3);
}

TEST_F(Cli, EvalLasso) {
    auto r = wmp_cli("eval-lasso " + fix("FIX3") + " --lasso 'stem: cycle: c y1 y2' --objective mp");
    EXPECT_EQ(r.out, "holds: true\nvalue: 0\n");
    auto w = wmp_cli("eval-lasso " + fix("FIX3") + " --lasso 'stem: x cycle: c x c y1 y2' --objective bwmp");
    EXPECT_EQ(w.out, "holds: true\nneeded_lmax: 5\n");
    auto t = wmp_cli("eval-lasso " + fix("FIX3") + " --lasso 'stem: x cycle: c y1 y2' --objective tpsup");
    EXPECT_EQ(t.out, "holds: false\nvalue: -1\n");
    EXPECT_EQ(wmp_cli("eval-lasso " + fix("FIX3") + " --lasso 'cycle: x y1' --objective mp").status, 3);
}

TEST_F(Cli, OutputIsByteIdentical) {
    const std::string args = "solve --objective fwmp --lmax 2 " + fix("FIX5");
    EXPECT_EQ(wmp_cli(args).out, wmp_cli(args).out);
}

}  // namespace
}  // namespace wmp::test
