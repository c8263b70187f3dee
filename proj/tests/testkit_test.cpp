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

#include "test_util.hpp"

namespace wmp::test {
namespace {

using testkit::GenSpec;

TEST(Rng, KnownXoshiroOutputs) {
    // Reference values from an independent implementation.
    testkit::Rng a(0);
    EXPECT_EQ(a.next(), 0x99ec5f36cb75f2b4ULL);
    EXPECT_EQ(a.next(), 0xbf6e1f784956452aULL);
    EXPECT_EQ(a.next(), 0x1a5f849d4933e6e0ULL);
    testkit::Rng b(42);
    EXPECT_EQ(b.next(), 0x15780b2e0c2ec716ULL);
    EXPECT_EQ(b.next(), 0x6104d9866d113a7eULL);
    for (int i = 0; i < 1000; ++i) EXPECT_LT(a.below(7), 7u);
}

TEST(Generator, SingleStateIsASelfLoop) {
    GenSpec s;
    s.seed = 7;
    auto g = testkit::gen_random_game(s);
    ASSERT_EQ(g.num_edges(), 1);
    EXPECT_EQ(g.edge(0).src, 0);
    EXPECT_EQ(g.edge(0).dst, 0);
    EXPECT_EQ(g.edge(0).weight, WeightVec{0});
}

TEST(Generator, DeterministicAndValid) {
    GenSpec s;
    s.states = 6;
    s.max_abs_weight = 3;
    s.seed = 42;
    auto g = testkit::gen_random_game(s);
    EXPECT_TRUE(g == testkit::gen_random_game(s));
    EXPECT_TRUE(validate(g).empty());
    EXPECT_LE(g.max_abs_weight(), 3);
    s.seed = 43;
    EXPECT_FALSE(g == testkit::gen_random_game(s));
}

TEST(Generator, RespectsShape) {
    GenSpec s;
    s.states = 9;
    s.dims = 3;
    s.max_abs_weight = 2;
    s.min_out = 2;
    s.max_out = 3;
    s.p2_fraction = Rational(0);
    s.seed = 5;
    auto g = testkit::gen_random_game(s);
    EXPECT_EQ(g.dims(), 3);
    EXPECT_TRUE(g.owned_by(Player::P2).empty());
    for (int v = 0; v < g.num_states(); ++v) {
        EXPECT_GE(g.out_edges(v).size(), 2u);
        EXPECT_LE(g.out_edges(v).size(), 3u);
    }
    s.min_out = 0;
    EXPECT_THROW(testkit::gen_random_game(s), InvalidInput);
}

TEST(TinyGames, CountsUpToIsomorphism) {
    // One state: 2 owners x 3 weights.
    EXPECT_EQ(testkit::for_each_tiny_game(1, 2, [](const GameStructure&) {}), 6);
    long two = testkit::for_each_tiny_game(2, 2, [](const GameStructure& g) { EXPECT_TRUE(validate(g).empty()); });
    EXPECT_GT(two, 6);
}

TEST(Oracle, WindowFixtures) {
    auto fix3 = fixture("FIX3");
    EXPECT_TRUE(oracle_window(fix3, ObjectiveSpec::window(ObjectiveKind::FixWMP, 3)).empty());
    EXPECT_STATES(fix3, oracle_window(fix3, ObjectiveSpec::window(ObjectiveKind::GW, 3)), "c", "y1", "y2");
    auto fix6 = fixture("FIX6");
    EXPECT_STATES(fix6, oracle_window(fix6, ObjectiveSpec::window(ObjectiveKind::DirFixWMP, 1)), "b");
    EXPECT_TRUE(oracle_window(fix6, ObjectiveSpec::window(ObjectiveKind::BndWMP)).full());
    EXPECT_STATES(fix6, oracle_window(fix6, ObjectiveSpec::window(ObjectiveKind::DirBndWMP)), "b");
    EXPECT_TRUE(oracle_window(fixture("FIX4"), ObjectiveSpec::window(ObjectiveKind::FixWMP, 4)).full());
}

TEST(Oracle, PlayerTwoSideIsTheComplement) {
    for (const char* name : {"FIX3", "FIX4", "FIX5", "FIX6"}) {
        auto g = fixture(name);
        for (auto k : {ObjectiveKind::GW, ObjectiveKind::DirFixWMP, ObjectiveKind::FixWMP})
            for (int l = 1; l <= 4; ++l) {
                auto spec = ObjectiveSpec::window(k, l);
                EXPECT_EQ(oracle_window_p2(g, spec), oracle_window(g, spec).complement()) << name << " " << l;
            }
    }
}

TEST(Oracle, Classical) {
    EXPECT_TRUE(oracle_classical(fixture("FIX3"), ObjectiveKind::MeanInf, 0).full());
    EXPECT_TRUE(oracle_classical(fixture("FIX2"), ObjectiveKind::TotalSup, 0).empty());
    EXPECT_TRUE(oracle_classical(fixture("FIX4"), ObjectiveKind::MeanSup, 0).full());
    auto g = fixture("FIX3");
    EXPECT_STATES(g, oracle_classical(g, ObjectiveKind::TotalSup, 0), "c", "y1", "y2");
    EXPECT_TRUE(oracle_classical(fixture("FIX4"), ObjectiveKind::MeanInf, Rational(2, 3)).full());
    EXPECT_TRUE(oracle_classical(fixture("FIX4"), ObjectiveKind::MeanInf, Rational(3, 4)).empty());
}

TEST(Oracle, Budgets) {
    OracleBudget tight;
    tight.max_product_states = 3;
    EXPECT_THROW(oracle_window(fixture("FIX4"), ObjectiveSpec::window(ObjectiveKind::FixWMP, 4), tight),
                 ResourceExceeded);
    OracleBudget few;
    few.max_states = 3;
    EXPECT_THROW(oracle_classical(fixture("FIX4"), ObjectiveKind::MeanInf, 0, few), ResourceExceeded);
}

TEST(Suites, ReportFormat) {
    testkit::SuiteResult r;
    r.name = "demo";
    EXPECT_EQ(testkit::format_suite(r), "SUITE demo PASS\n");
    r.pass = false;
    r.game = fixture("FIX1");
    r.detail = "why";
    EXPECT_EQ(testkit::format_suite(r), "SUITE demo FAIL wgame 1; dims 1; state a P1; edge a a 0; init a\n  why\n");
}

TEST(Suites, StrictnessWitnessReportsFix3First) {
    auto r = testkit::suite_strictness_witness({});
    EXPECT_TRUE(r.pass);
    ASSERT_TRUE(r.game);
    EXPECT_TRUE(*r.game == fixture("FIX3"));
}

TEST(Suites, PlantedGamesAreChecked) {
    testkit::CheckOptions opt;
    opt.planted.push_back(fixture("FIX4"));
    auto r = testkit::suite_mp_reduction(opt);
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_EQ(r.cases, 200);  // ten states: above the corpus limit
    opt.planted = {fixture("FIX3")};
    EXPECT_EQ(testkit::suite_mp_reduction(opt).cases, 201);
}

TEST(Suites, UnknownNameIsRejected) { EXPECT_THROW(testkit::run_suite("nope", {}), InvalidInput); }

}  // namespace
}  // namespace wmp::test
