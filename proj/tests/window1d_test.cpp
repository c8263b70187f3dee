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

TEST(GoodWindow, Fix3Table) {
    auto g = fixture("FIX3");
    auto t = good_win(g, 3);
    // Row 1: best first step. Row 2 at y1: -1 + max(0, 2).
    EXPECT_EQ(t.at(1, g.require("c")), -1);
    EXPECT_EQ(t.at(1, g.require("x")), -1);
    EXPECT_EQ(t.at(1, g.require("y1")), -1);
    EXPECT_EQ(t.at(1, g.require("y2")), 2);
    EXPECT_EQ(t.at(2, g.require("y1")), 1);
    // c: P2 either closes at once through x or takes -1, -1, +2.
    EXPECT_STATES(g, t.winning, "c", "y1", "y2");
    EXPECT_STATES(g, good_win(g, 2).winning, "y1", "y2");
}

TEST(GoodWindow, Trivial) {
    EXPECT_TRUE(good_win(fixture("FIX1"), 1).winning.full());
    EXPECT_TRUE(good_win(fixture("FIX2"), 10).winning.empty());
    EXPECT_THROW(good_win(fixture("FIX1"), 0), InvalidInput);
}

TEST(GoodWindow, EscapesFromLiveRegionLose) {
    auto g = fixture("FIX3");
    // Without x live, P2 at c escapes to x: c no longer wins.
    auto t = good_win(g, 3, states(g, {"c", "y1", "y2"}));
    EXPECT_STATES(g, t.winning, "y1", "y2");
}

TEST(GoodWindow, OperationCount) {
    auto g = fixture("FIX4");
    EXPECT_EQ(good_win(g, 7).operations, 7L * g.num_edges());
}

TEST(DirectFixed, Examples) {
    auto g = fixture("FIX3");
    EXPECT_TRUE(direct_fwmp(g, 3).empty());
    auto h = fixture("FIX6");
    EXPECT_STATES(h, direct_fwmp(h, 1), "b");
    EXPECT_TRUE(direct_fwmp(fixture("FIX4"), 4).full());
    EXPECT_TRUE(direct_fwmp(fixture("FIX4"), 3).empty());
}

TEST(Fixed, Examples) {
    EXPECT_TRUE(fwmp(fixture("FIX6"), 1).full());
    EXPECT_TRUE(fwmp(fixture("FIX3"), 3).empty());
    // P2 stretches the window opened at x by looping through y1 y2.
    for (int l = 4; l <= 30; l += 13) EXPECT_TRUE(fwmp(fixture("FIX3"), l).empty()) << l;
    EXPECT_TRUE(fwmp(fixture("FIX4"), 4).full());
    auto r = fwmp_detailed(fixture("FIX6"), 1);
    ASSERT_EQ(r.layers.size(), 1u);
    EXPECT_EQ(r.layers[0].attractor_move[0], 1);
}

TEST(Fixed, SingleCycleRestrictionsOfFix3Win) {
    EXPECT_TRUE(fwmp(testkit::without_edge(fixture("FIX3"), "c", "y1"), 3).full());
    EXPECT_TRUE(fwmp(testkit::without_edge(fixture("FIX3"), "c", "x"), 3).full());
}

TEST(UnboundedOpenWindow, Examples) {
    EXPECT_TRUE(unb_open_window(fixture("FIX3")).full());
    EXPECT_TRUE(unb_open_window(fixture("FIX1")).empty());
    EXPECT_TRUE(unb_open_window(fixture("FIX4")).empty());
    auto h = fixture("FIX6");
    EXPECT_STATES(h, unb_open_window(h), "a");
}

TEST(Bounded, Examples) {
    EXPECT_TRUE(bounded_wmp(fixture("FIX3")).winning_p1.empty());
    auto r = bounded_wmp(fixture("FIX4"));
    EXPECT_TRUE(r.winning_p1.full());
    EXPECT_EQ(r.witness_lmax, 999);
    EXPECT_TRUE(bounded_wmp(fixture("FIX1")).winning_p1.full());
    EXPECT_TRUE(bounded_wmp(fixture("FIX6")).winning_p1.full());
}

TEST(DirectBounded, Examples) {
    auto h = fixture("FIX6");
    EXPECT_STATES(h, direct_bounded_wmp(h), "b");
    EXPECT_TRUE(direct_bounded_wmp(fixture("FIX3")).empty());
    EXPECT_TRUE(direct_bounded_wmp(fixture("FIX1")).full());
}

TEST(SufficientWindow, Formula) {
    EXPECT_EQ(sufficient_window(fixture("FIX1")), 1);
    // Four states, W = 2.
    EXPECT_EQ(sufficient_window(fixture("FIX3")), 3 * 9);
    EXPECT_EQ(sufficient_window(fixture("FIX4")), 999);
}

TEST(MeanPayoffShift, Examples) {
    auto fix2 = shift_for_mp_reduction(fixture("FIX2"));
    EXPECT_EQ(fix2.edge(0).weight, WeightVec{-1});
    EXPECT_TRUE(bounded_wmp(fix2).winning_p1.empty());
    EXPECT_TRUE(mp_threshold_win(fixture("FIX2")).empty());
    auto fix1 = shift_for_mp_reduction(fixture("FIX1"));
    EXPECT_EQ(fix1.edge(0).weight, WeightVec{1});
    EXPECT_TRUE(bounded_wmp(fix1).winning_p1.full());
}

TEST(MeanPayoffShift, ZeroMeanCycleBecomesBounded) {
    // FIX3 has mean 0 everywhere but no bounded window; the shift fixes that.
    auto g = fixture("FIX3");
    EXPECT_TRUE(bounded_wmp(shift_for_mp_reduction(g)).winning_p1.full());
}

TEST(MeanPayoffShift, SeededSixStateGame) {
    testkit::GenSpec s;
    s.states = 6;
    s.max_abs_weight = 3;
    s.max_out = 3;
    s.seed = 42;
    auto g = testkit::gen_random_game(s);
    EXPECT_EQ(mp_threshold_win(g), bounded_wmp(shift_for_mp_reduction(g)).winning_p1);
}

}  // namespace
}  // namespace wmp::test
