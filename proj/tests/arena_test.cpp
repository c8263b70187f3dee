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

TEST(Attractor, PlayerTwoPullsFix3IntoX) {
    auto g = fixture("FIX3");
    EXPECT_STATES(g, attractor(g, Player::P2, states(g, {"x"})), "c", "x", "y1", "y2");
    // P1 cannot force x: c belongs to P2.
    EXPECT_STATES(g, attractor(g, Player::P1, states(g, {"x"})), "x");
}

TEST(Attractor, EmptyAndFullTargets) {
    for (const char* name : {"FIX3", "FIX4", "FIX6"}) {
        auto g = fixture(name);
        for (auto p : {Player::P1, Player::P2}) {
            EXPECT_TRUE(attractor(g, p, StateSet(g.num_states())).empty());
            EXPECT_TRUE(attractor(g, p, g.all_states()).full());
        }
    }
}

TEST(Attractor, StrategyPointsInsideAndRanksDecrease) {
    auto g = fixture("FIX6");
    auto r = attractor_with_strategy(g, Player::P1, states(g, {"b"}));
    EXPECT_TRUE(r.set.full());
    EXPECT_EQ(r.strategy[0], 1);
    EXPECT_GT(r.rank[0], r.rank[1]);
}

TEST(Attractor, WithinRestrictsMoves) {
    auto g = fixture("FIX3");
    // Inside {c, x} only, c (P2) can always stay away from y1.
    auto in = states(g, {"c", "x"});
    EXPECT_STATES(g, attractor(g, Player::P2, states(g, {"x"}), in), "c", "x");
}

TEST(Subgame, DeadEndsAreReported) {
    auto g = fixture("FIX3");
    auto sg = subgame(g, states(g, {"y1", "y2"}));
    EXPECT_EQ(sg.game.num_states(), 2);
    EXPECT_EQ(sg.game.num_edges(), 1);
    ASSERT_EQ(sg.dead_ends.count(), 1);
    EXPECT_STATES(g, sg.lift(sg.dead_ends, g.num_states()), "y2");
}

TEST(Subgame, FullAndSelfLoop) {
    auto g = fixture("FIX4");
    auto sg = subgame(g, g.all_states());
    EXPECT_TRUE(sg.dead_ends.empty());
    EXPECT_EQ(sg.game.num_edges(), g.num_edges());
    auto h = fixture("FIX6");
    auto sb = subgame(h, states(h, {"b"}));
    EXPECT_EQ(sb.game.num_edges(), 1);
    EXPECT_TRUE(sb.dead_ends.empty());
    EXPECT_STATES(h, sb.lift(sb.game.all_states(), h.num_states()), "b");
}

TEST(Safety, SmallCases) {
    auto g = fixture("FIX6");
    EXPECT_STATES(g, solve_safety(g, states(g, {"b"})), "b");
    EXPECT_TRUE(solve_safety(g, states(g, {"a"})).empty());
    auto h = fixture("FIX3");
    EXPECT_TRUE(solve_safety(h, h.all_states()).full());
    // P2 escapes {c, x} through y1, so nothing is safe there.
    EXPECT_TRUE(solve_safety(h, states(h, {"c", "x"})).empty());
}

TEST(CoBuchi, WindowProductOfFix6) {
    auto g = fixture("FIX6");
    auto p = build_window_product(g, 1, g.all_states());
    EXPECT_TRUE(solve_cobuchi(p.graph, p.bad_set()).full());
    const int n = p.num_states();
    EXPECT_TRUE(solve_cobuchi(p.graph, StateSet(n)).full());
    EXPECT_TRUE(solve_cobuchi(p.graph, StateSet(n, true)).empty());
}

TEST(CoBuchi, PlayerTwoForcesBadInfinitelyOften) {
    // a (P2) -> bad b -> a, or a -> c -> c: P2 keeps cycling through b.
    Graph g;
    int a = g.add_node(Player::P2), b = g.add_node(Player::P1), c = g.add_node(Player::P1);
    g.add_edge(a, b);
    g.add_edge(b, a);
    g.add_edge(a, c);
    g.add_edge(c, c);
    auto r = solve_cobuchi_with_strategies(g, StateSet::of(3, {b}));
    EXPECT_FALSE(r.win.contains(a));
    EXPECT_FALSE(r.win.contains(b));
    EXPECT_TRUE(r.win.contains(c));
    EXPECT_EQ(r.p2_strategy[static_cast<std::size_t>(a)], b);
}

}  // namespace
}  // namespace wmp::test
