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

TEST(MeanPayoff, Values) {
    EXPECT_EQ(mp_value(fixture("FIX1")), std::vector<Rational>{Rational(0)});
    EXPECT_EQ(mp_value(fixture("FIX2")), std::vector<Rational>{Rational(-1)});
    auto g = fixture("FIX4");
    auto v = mp_value(g);
    EXPECT_EQ(v[static_cast<std::size_t>(g.require("s"))], Rational(2, 3));
    for (const auto& x : v) EXPECT_EQ(x, Rational(2, 3));
    for (const auto& x : mp_value(fixture("FIX3"))) EXPECT_EQ(x, Rational(0));
}

TEST(MeanPayoff, ThresholdWinners) {
    EXPECT_TRUE(mp_threshold_win(fixture("FIX3")).full());
    EXPECT_TRUE(mp_threshold_win(fixture("FIX2")).empty());
    EXPECT_TRUE(mp_threshold_win(fixture("FIX4")).full());
    EXPECT_TRUE(mp_threshold_win(fixture("FIX6")).full());
}

TEST(MeanPayoff, ValuesWithDenominatorsUpToStateCount) {
    // A P2 choice between cycles of means -1/3 and 1/2.
    auto g = parse_game(
        "wgame 1\ndims 1\nstate u P2\nstate p P1\nstate q P1\nstate r P1\n"
        "edge u p 1\nedge p u 0\nedge u q 1\nedge q r -1\nedge r u -1\ninit u\n");
    for (const auto& x : mp_value(g)) EXPECT_EQ(x, Rational(-1, 3));
}

TEST(MeanPayoff, RejectsMultiDimension) { EXPECT_THROW(mp_value(fixture("FIX5")), Unsupported); }

TEST(TotalPayoff, Winners) {
    auto fix1 = fixture("FIX1");
    EXPECT_TRUE(tp_sup_win(fix1).full());
    EXPECT_TRUE(tp_sup_win(fixture("FIX2")).empty());
    auto g = fixture("FIX3");
    EXPECT_STATES(g, tp_sup_win(g), "c", "y1", "y2");
    auto h = fixture("FIX6");
    EXPECT_STATES(h, tp_sup_win(h), "b");
}

TEST(TotalPayoff, NegativeSupremum) {
    auto g = fixture("FIX3");
    EXPECT_STATES(g, neg_sup_tp(g), "x");
    EXPECT_TRUE(neg_sup_tp(fixture("FIX1")).empty());
    EXPECT_TRUE(neg_sup_tp(fixture("FIX2")).full());
}

TEST(TotalPayoff, WitnessIsUniform) {
    auto g = fixture("FIX4");
    auto r = tp_sup_win_with_strategy(g);
    EXPECT_TRUE(r.win.full());
    // The witness at s enters C1, the only cycle with positive sum.
    EXPECT_EQ(r.witness[static_cast<std::size_t>(g.require("s"))], g.require("a1"));
}

TEST(TotalPayoff, BudgetIsEnforced) {
    testkit::GenSpec s;
    s.states = 20;
    s.max_abs_weight = 2;
    s.seed = 9;
    EXPECT_THROW(tp_sup_win(testkit::gen_random_game(s), 14), ResourceExceeded);
}

}  // namespace
}  // namespace wmp::test
