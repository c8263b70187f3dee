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

TEST(WindowStep, CloseResetAndFail) {
    auto ws = WindowState::fresh(2, 2);
    auto a = window_step(ws, WeightVec{1, -1}, 2);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->sigma, (std::vector<Weight>{0, -1}));
    EXPECT_EQ(a->tau, (std::vector<int>{2, 1}));
    EXPECT_FALSE(window_step(*a, WeightVec{0, 0}, 2));
    auto b = window_step(*a, WeightVec{0, 1}, 2);
    ASSERT_TRUE(b);
    EXPECT_EQ(*b, ws);
}

TEST(Product, Fix6AtWindowOne) {
    auto g = fixture("FIX6");
    auto p = build_window_product(g, 1, g.all_states());
    ASSERT_EQ(p.num_states(), 3);
    std::vector<std::string> ids;
    for (int v = 0; v < p.num_states(); ++v) ids.push_back(p.node_id(g, v));
    EXPECT_EQ(ids, (std::vector<std::string>{"a__0_1", "b__0_1", "z_b"}));
    const int a = p.fresh_index[0], b = p.fresh_index[1], zb = p.bad_index[1];
    EXPECT_EQ(p.graph.successors(a), std::vector<int>{zb});
    EXPECT_EQ(p.graph.successors(zb), std::vector<int>{b});
    EXPECT_EQ(p.graph.successors(b), std::vector<int>{b});
    EXPECT_EQ(p.bad_set().count(), 1);
}

TEST(Product, NonNegativeWeightsNeverFail) {
    auto g = fixture("FIX4").map_weights([](const WeightVec& w) { return WeightVec{w[0] < 0 ? -w[0] : w[0]}; });
    for (int l = 1; l <= 3; ++l) EXPECT_TRUE(build_window_product(g, l, g.all_states()).bad_set().empty());
}

TEST(Product, GadgetSumsStayAboveMinusOne) {
    auto g = fixture("FIX5");
    auto p = build_window_product(g, 3, g.all_states());
    EXPECT_FALSE(p.bad_set().empty());
    for (int v = 0; v < p.num_states(); ++v)
        for (Weight s : p.window[static_cast<std::size_t>(v)].sigma) EXPECT_TRUE(s == 0 || s == -1);
    EXPECT_LE(p.num_states(), window_product_bound(g, 3));
}

TEST(Product, CapIsEnforced) {
    auto g = fixture("FIX4");
    EXPECT_THROW(build_window_product(g, 10, g.all_states(), 5), ResourceExceeded);
}

TEST(FixedK, OneDimensionAgreesWithRecurrence) {
    for (const char* name : {"FIX1", "FIX2", "FIX3", "FIX4", "FIX6"}) {
        auto g = fixture(name);
        for (int l = 1; l <= 5; ++l) {
            EXPECT_EQ(fwmp_k(g, l).winning_p1, fwmp(g, l)) << name << " " << l;
            EXPECT_EQ(direct_fwmp_k(g, l).winning_p1, direct_fwmp(g, l)) << name << " " << l;
            EXPECT_EQ(good_win_k(g, l), good_win(g, l).winning) << name << " " << l;
        }
    }
    auto h = fixture("FIX6");
    EXPECT_TRUE(fwmp_k(h, 1).winning_p1.full());
    EXPECT_STATES(h, direct_fwmp_k(h, 1).winning_p1, "b");
}

// The gadget: P2 picks a direction at s1, P1 at t1. Copying P1's previous
// direction keeps P1's own window open, so P2 wins at every window size.
TEST(FixedK, GadgetIsLostByPlayerOne) {
    auto g = fixture("FIX5");
    for (int l = 1; l <= 6; ++l) {
        EXPECT_TRUE(fwmp_k(g, l).winning_p1.empty()) << l;
        EXPECT_TRUE(direct_fwmp_k(g, l).winning_p1.empty()) << l;
        EXPECT_TRUE(oracle_window_p2(g, ObjectiveSpec::window(ObjectiveKind::FixWMP, l)).full()) << l;
    }
}

TEST(FixedK, CopyingPlayerTwoBeatsOppositeChoice) {
    auto g = fixture("FIX5");
    // P1 answers the opposite of P2's last move.
    auto p1 = parse_strategy(
        "wstrat 1\nplayer 1\nmemory L R\ninit L\n"
        "update L s1 L\nupdate L s1L L\nupdate L s1R R\nupdate L t1 L\nupdate L t1L L\nupdate L t1R L\n"
        "update R s1 R\nupdate R s1L L\nupdate R s1R R\nupdate R t1 R\nupdate R t1L R\nupdate R t1R R\n"
        "act L t1 t1R\nact R t1 t1L\nact L t1L s1\nact R t1L s1\nact L t1R s1\nact R t1R s1\n",
        g);
    auto v = verify_strategy(g, p1, ObjectiveSpec::window(ObjectiveKind::FixWMP, 3));
    EXPECT_FALSE(v.pass);
    ASSERT_TRUE(v.counterexample);
    EXPECT_FALSE(eval_lasso(g, *v.counterexample, ObjectiveSpec::window(ObjectiveKind::FixWMP, 3)).holds);
}

TEST(GoodWindowK, AgreesWithOracle) {
    auto g = fixture("FIX5");
    for (int l = 1; l <= 4; ++l)
        EXPECT_EQ(good_win_k(g, l), oracle_window(g, ObjectiveSpec::window(ObjectiveKind::GW, l))) << l;
}

}  // namespace
}  // namespace wmp::test
