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

#pragma once

#include <limits>
#include <vector>

#include "wmp/arena.hpp"
#include "wmp/classical.hpp"
#include "wmp/core.hpp"

namespace wmp {

/// Marker for "no way to continue inside the live region".
inline constexpr Weight kNegInf = std::numeric_limits<Weight>::min() / 4;

// ---------------------------------------------------------------------------
// Good window
// ---------------------------------------------------------------------------

/**
 * Table of best guaranteed window records.
 *
 * C[i][s] is the largest value P1 can guarantee for max_{1<=j<=i} P_j,
 * where P_j is the sum of the first j weights from s. The window opened
 * at s closes within i steps iff that record is >= 0.
 */
struct GoodWinTable {
    int lmax = 0;
    std::vector<std::vector<Weight>> C;  // (lmax + 1) rows, row 0 all zero
    StateSet winning;
    long operations = 0;  // number of edge relaxations

    Weight at(int i, int s) const { return C[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]; }
};

namespace detail {

/// Value of taking edge e with i steps left, given row i-1 of the table.
inline Weight good_win_edge_value(const Edge& e, const std::vector<Weight>& prev,
                                  const StateSet& live) {
    if (!live.contains(e.dst)) return kNegInf;
    Weight rest = prev[static_cast<std::size_t>(e.dst)];
    return e.weight[0] + (rest > 0 ? rest : 0);
}

}  // namespace detail

/**
 * Good window for one dimension.
 *
 * Edges leaving `arena` are ignored. Edges leaving `live` (but staying in
 * the arena) count as losing for whoever takes them, so P2 escapes out of
 * `live` are never overlooked. States outside `live` are not evaluated.
 */
inline GoodWinTable good_win(const GameStructure& g, int lmax, const StateSet& live, const StateSet& arena) {
    detail::require_one_dim(g, "good window");
    if (lmax < 1) throw InvalidInput("lmax must be >= 1");
    const int n = g.num_states();
    GoodWinTable t;
    t.lmax = lmax;
    t.C.assign(static_cast<std::size_t>(lmax) + 1, std::vector<Weight>(static_cast<std::size_t>(n), kNegInf));
    for (int s = 0; s < n; ++s)
        if (live.contains(s)) t.C[0][static_cast<std::size_t>(s)] = 0;
    for (int i = 1; i <= lmax; ++i) {
        const auto& prev = t.C[static_cast<std::size_t>(i) - 1];
        auto& row = t.C[static_cast<std::size_t>(i)];
        for (int s = 0; s < n; ++s) {
            if (!live.contains(s)) continue;
            const bool maxi = g.owner(s) == Player::P1;
            Weight best = 0;
            bool any = false;
            for (int e : g.out_edges(s)) {
                const Edge& ed = g.edge(e);
                if (!arena.contains(ed.dst)) continue;
                ++t.operations;
                Weight v = detail::good_win_edge_value(ed, prev, live);
                if (!any) best = v;
                else best = maxi ? std::max(best, v) : std::min(best, v);
                any = true;
            }
            row[static_cast<std::size_t>(s)] = any && best > kNegInf ? best : kNegInf;
        }
    }
    t.winning = StateSet(n);
    for (int s = 0; s < n; ++s)
        if (live.contains(s) && t.at(lmax, s) >= 0) t.winning.insert(s);
    return t;
}

inline GoodWinTable good_win(const GameStructure& g, int lmax, const StateSet& live) {
    return good_win(g, lmax, live, g.all_states());
}

inline GoodWinTable good_win(const GameStructure& g, int lmax) {
    return good_win(g, lmax, g.all_states(), g.all_states());
}

// ---------------------------------------------------------------------------
// Direct and prefix-independent fixed windows
// ---------------------------------------------------------------------------

struct DirectResult {
    StateSet winning;
    GoodWinTable table;  // good-window table for live = winning
    int rounds = 0;
    long operations = 0;
};

/// Largest X inside `arena` such that every state of X wins the good
/// window objective without leaving X.
inline DirectResult direct_fwmp_detailed(const GameStructure& g, int lmax, const StateSet& arena) {
    DirectResult r;
    StateSet live = arena;
    for (;;) {
        ++r.rounds;
        r.table = good_win(g, lmax, live, arena);
        r.operations += r.table.operations;
        if (r.table.winning == live) break;
        live = r.table.winning;
    }
    r.winning = live;
    return r;
}

inline StateSet direct_fwmp(const GameStructure& g, int lmax) {
    return direct_fwmp_detailed(g, lmax, g.all_states()).winning;
}

/// One round of the fixed-window loop.
struct FixedLayer {
    StateSet region;    // arena of the round (states not yet won)
    StateSet direct;    // direct winners inside the region
    StateSet attracted; // states added by the attractor this round, direct excluded
    std::vector<int> attractor_move;  // P1 successor for attracted P1 states
};

struct FixedResult {
    StateSet winning;
    std::vector<FixedLayer> layers;
    long operations = 0;
};

/// Prefix-independent fixed window: repeatedly solve the direct problem
/// in the unwon region and add its P1 attractor.
inline FixedResult fwmp_detailed(const GameStructure& g, int lmax) {
    const int n = g.num_states();
    FixedResult r;
    r.winning = StateSet(n);
    for (;;) {
        StateSet region = r.winning.complement();
        if (region.empty()) break;
        auto d = direct_fwmp_detailed(g, lmax, region);
        r.operations += d.operations;
        if (d.winning.empty()) break;
        auto attr = attractor_with_strategy(g, Player::P1, r.winning | d.winning);
        FixedLayer layer{region, d.winning, attr.set - r.winning - d.winning, attr.strategy};
        r.winning = attr.set;
        r.layers.push_back(std::move(layer));
    }
    return r;
}

inline StateSet fwmp(const GameStructure& g, int lmax) { return fwmp_detailed(g, lmax).winning; }

// ---------------------------------------------------------------------------
// Bounded windows
// ---------------------------------------------------------------------------

/// States of `within` from which P2 keeps some window open forever.
inline StateSet unb_open_window(const GameStructure& g, const StateSet& within, int budget = kDefaultOracleBudget) {
    detail::require_one_dim(g, "bounded window");
    StateSet lose(g.num_states());
    for (;;) {
        StateSet rest = within - lose;
        if (rest.empty()) break;
        Subgame sg = subgame(g, rest);
        if (!sg.dead_ends.empty()) throw InternalError("unbounded-window region is not closed under play");
        StateSet seed = sg.lift(neg_sup_tp(sg.game, budget), g.num_states());
        if (seed.empty()) break;
        lose |= attractor(g, Player::P2, seed, rest);
    }
    return lose;
}

inline StateSet unb_open_window(const GameStructure& g, int budget = kDefaultOracleBudget) {
    return unb_open_window(g, g.all_states(), budget);
}

/// (|S| - 1)(|S| W + 1), at least 1: a window size that always suffices.
inline long sufficient_window(const GameStructure& g) {
    const long n = g.num_states();
    long v = (n - 1) * (n * static_cast<long>(g.max_abs_weight()) + 1);
    return std::max(1L, v);
}

/// Prefix-independent bounded window, one dimension.
inline SolveReport bounded_wmp(const GameStructure& g, int budget = kDefaultOracleBudget) {
    detail::require_one_dim(g, "bounded window");
    const int n = g.num_states();
    StateSet won(n);
    int iterations = 0;
    for (;;) {
        if (++iterations > n + 1) throw InternalError("bounded window loop did not stabilize");
        StateSet region = won.complement();
        if (region.empty()) break;
        StateSet lose = unb_open_window(g, region, budget);
        if (lose == region) break;
        won = attractor(g, Player::P1, g.all_states() - lose);
    }
    SolveReport r = SolveReport::from_p1(won);
    r.iterations = iterations;
    if (!won.empty()) r.witness_lmax = sufficient_window(g);
    return r;
}

/// Direct bounded window: every window closes, no prefix forgiven.
inline StateSet direct_bounded_wmp(const GameStructure& g, int budget = kDefaultOracleBudget) {
    return unb_open_window(g, budget).complement();
}

/// Integer form of the mean-payoff game shifted by 1/(|S|+1):
/// every weight w becomes (|S|+1) w + 1.
inline GameStructure shift_for_mp_reduction(const GameStructure& g) {
    detail::require_one_dim(g, "mean-payoff reduction");
    const Weight scale = g.num_states() + 1;
    return g.map_weights([&](const WeightVec& w) {
        return WeightVec{detail::checked_add(detail::checked_mul(scale, w[0]), 1)};
    });
}

}  // namespace wmp
