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

#include <concepts>
#include <deque>
#include <vector>

#include "wmp/core.hpp"

namespace wmp {

/**
 * Anything with numbered states, owners and adjacency lists.
 * GameStructure and Graph both qualify.
 */
template <class A>
concept Arena = requires(const A& a, int v) {
    { a.num_states() } -> std::convertible_to<int>;
    { a.owner(v) } -> std::same_as<Player>;
    { a.successors(v) } -> std::convertible_to<const std::vector<int>&>;
    { a.predecessors(v) } -> std::convertible_to<const std::vector<int>&>;
};

/// Unweighted arena used for product constructions.
struct Graph {
    std::vector<Player> owners;
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;

    int add_node(Player p) {
        owners.push_back(p);
        succ.emplace_back();
        pred.emplace_back();
        return static_cast<int>(owners.size()) - 1;
    }
    void add_edge(int u, int v) {
        succ[static_cast<std::size_t>(u)].push_back(v);
        pred[static_cast<std::size_t>(v)].push_back(u);
    }
    int num_states() const noexcept { return static_cast<int>(owners.size()); }
    Player owner(int v) const { return owners[static_cast<std::size_t>(v)]; }
    const std::vector<int>& successors(int v) const { return succ[static_cast<std::size_t>(v)]; }
    const std::vector<int>& predecessors(int v) const { return pred[static_cast<std::size_t>(v)]; }
};

static_assert(Arena<Graph>);
static_assert(Arena<GameStructure>);

// ---------------------------------------------------------------------------
// Attractors
// ---------------------------------------------------------------------------

struct AttractorResult {
    StateSet set;
    /// For states of the attracting player in set \ target: a successor
    /// with strictly smaller rank. -1 elsewhere.
    std::vector<int> strategy;
    /// Layer at which each state entered (0 for target, -1 if outside).
    std::vector<int> rank;
};

/**
 * Attractor of `target` for `player` inside the sub-arena `within`.
 *
 * Edges leaving `within` are ignored. An opponent state whose edges all
 * leave `within` is never attracted; callers keep such dead ends out.
 * Runs in O(|E|) with per-state counters.
 */
template <Arena A>
AttractorResult attractor_with_strategy(const A& g, Player player, const StateSet& target, const StateSet& within) {
    const int n = g.num_states();
    AttractorResult r{StateSet(n), std::vector<int>(static_cast<std::size_t>(n), -1),
                      std::vector<int>(static_cast<std::size_t>(n), -1)};
    std::vector<int> counter(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        if (!within.contains(v)) continue;
        for (int t : g.successors(v))
            if (within.contains(t)) ++counter[static_cast<std::size_t>(v)];
    }
    std::deque<int> queue;
    for (int v = 0; v < n; ++v)
        if (within.contains(v) && target.contains(v)) {
            r.set.insert(v);
            r.rank[static_cast<std::size_t>(v)] = 0;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int v : g.predecessors(t)) {
            if (!within.contains(v) || r.set.contains(v)) continue;
            bool add = false;
            if (g.owner(v) == player) {
                add = true;
                r.strategy[static_cast<std::size_t>(v)] = t;
            } else {
                add = --counter[static_cast<std::size_t>(v)] == 0;
            }
            if (add) {
                r.set.insert(v);
                r.rank[static_cast<std::size_t>(v)] = r.rank[static_cast<std::size_t>(t)] + 1;
                queue.push_back(v);
            }
        }
    }
    return r;
}

template <Arena A>
AttractorResult attractor_with_strategy(const A& g, Player player, const StateSet& target) {
    return attractor_with_strategy(g, player, target, StateSet(g.num_states(), true));
}

template <Arena A>
StateSet attractor(const A& g, Player player, const StateSet& target, const StateSet& within) {
    return attractor_with_strategy(g, player, target, within).set;
}

template <Arena A>
StateSet attractor(const A& g, Player player, const StateSet& target) {
    return attractor_with_strategy(g, player, target).set;
}

// ---------------------------------------------------------------------------
// Subgames
// ---------------------------------------------------------------------------

struct Subgame {
    GameStructure game;
    /// Index in the parent game of each subgame state.
    std::vector<int> to_parent;
    /// Subgame states left without outgoing edges (subgame indices).
    StateSet dead_ends;

    StateSet lift(const StateSet& s, int parent_states) const {
        StateSet out(parent_states);
        for (int v : s.indices()) out.insert(to_parent[static_cast<std::size_t>(v)]);
        return out;
    }
};

/// G restricted to `keep`. Dead ends are reported, not removed.
inline Subgame subgame(const GameStructure& g, const StateSet& keep) {
    Subgame sg;
    sg.game = GameStructure(g.dims());
    std::vector<int> to_child(static_cast<std::size_t>(g.num_states()), -1);
    for (int v = 0; v < g.num_states(); ++v)
        if (keep.contains(v)) {
            to_child[static_cast<std::size_t>(v)] = sg.game.add_state(g.id(v), g.owner(v));
            sg.to_parent.push_back(v);
        }
    for (const Edge& e : g.edges()) {
        int a = to_child[static_cast<std::size_t>(e.src)];
        int b = to_child[static_cast<std::size_t>(e.dst)];
        if (a >= 0 && b >= 0) sg.game.add_edge(a, b, e.weight);
    }
    if (g.init() && to_child[static_cast<std::size_t>(*g.init())] >= 0)
        sg.game.set_init(to_child[static_cast<std::size_t>(*g.init())]);
    else if (sg.game.num_states() > 0)
        sg.game.set_init(0);
    sg.dead_ends = StateSet(sg.game.num_states());
    for (int v = 0; v < sg.game.num_states(); ++v)
        if (sg.game.out_edges(v).empty()) sg.dead_ends.insert(v);
    return sg;
}

// ---------------------------------------------------------------------------
// Safety and co-Buchi
// ---------------------------------------------------------------------------

struct SafetyResult {
    StateSet win;
    /// P1 move keeping the play inside `win`, for P1 states in `win`.
    std::vector<int> strategy;
};

/// States of `within` from which P1 keeps the play in `safe` forever.
/// Moves leaving `within` are ignored.
template <Arena A>
SafetyResult solve_safety_with_strategy(const A& g, const StateSet& safe, const StateSet& within) {
    const int n = g.num_states();
    StateSet unsafe = within - safe;
    StateSet lose = attractor(g, Player::P2, unsafe, within);
    SafetyResult r{within - lose, std::vector<int>(static_cast<std::size_t>(n), -1)};
    for (int v : r.win.indices()) {
        if (g.owner(v) != Player::P1) continue;
        for (int t : g.successors(v))
            if (r.win.contains(t)) {
                r.strategy[static_cast<std::size_t>(v)] = t;
                break;
            }
    }
    return r;
}

template <Arena A>
StateSet solve_safety(const A& g, const StateSet& safe, const StateSet& within) {
    return solve_safety_with_strategy(g, safe, within).win;
}

template <Arena A>
StateSet solve_safety(const A& g, const StateSet& safe) {
    return solve_safety(g, safe, StateSet(g.num_states(), true));
}

struct CoBuchiResult {
    StateSet win;
    /// Positional P1 strategy winning co-Buchi from every state of `win`.
    std::vector<int> p1_strategy;
    /// Positional P2 strategy visiting `bad` infinitely often from every
    /// state outside `win`.
    std::vector<int> p2_strategy;
    int rounds = 0;
};

/**
 * States from which P1 visits `bad` only finitely often.
 *
 * Each round solves safety for "avoid bad" inside the not-yet-won region,
 * then adds the P1 attractor of the result. Stops when a round wins nothing.
 */
template <Arena A>
CoBuchiResult solve_cobuchi_with_strategies(const A& g, const StateSet& bad) {
    const int n = g.num_states();
    CoBuchiResult r{StateSet(n), std::vector<int>(static_cast<std::size_t>(n), -1),
                    std::vector<int>(static_cast<std::size_t>(n), -1), 0};
    for (;;) {
        StateSet rest = r.win.complement();
        if (rest.empty()) break;
        ++r.rounds;
        auto safe = solve_safety_with_strategy(g, rest - bad, rest);
        if (safe.win.empty()) break;
        for (int v : safe.win.indices()) r.p1_strategy[static_cast<std::size_t>(v)] = safe.strategy[static_cast<std::size_t>(v)];
        auto attr = attractor_with_strategy(g, Player::P1, r.win | safe.win);
        for (int v : (attr.set - r.win - safe.win).indices())
            r.p1_strategy[static_cast<std::size_t>(v)] = attr.strategy[static_cast<std::size_t>(v)];
        r.win = attr.set;
    }
    // What is left is a P1 trap where P2 can force a visit to bad from everywhere.
    StateSet rest = r.win.complement();
    if (!rest.empty()) {
        auto reach = attractor_with_strategy(g, Player::P2, rest & bad, rest);
        for (int v : rest.indices()) {
            if (g.owner(v) != Player::P2) continue;
            int choice = reach.strategy[static_cast<std::size_t>(v)];
            if (choice < 0)
                for (int t : g.successors(v))
                    if (rest.contains(t)) {
                        choice = t;
                        break;
                    }
            r.p2_strategy[static_cast<std::size_t>(v)] = choice;
        }
    }
    return r;
}

template <Arena A>
StateSet solve_cobuchi(const A& g, const StateSet& bad) {
    return solve_cobuchi_with_strategies(g, bad).win;
}

}  // namespace wmp
