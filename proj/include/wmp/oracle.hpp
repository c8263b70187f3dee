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

// Brute-force reference solvers. Only the game model and exact lasso
// evaluation are shared with the production solvers: no attractor,
// safety, co-Buchi, window recurrence or product code is reused here.

#pragma once

#include <functional>
#include <map>
#include <vector>

#include "wmp/core.hpp"

namespace wmp {

struct OracleBudget {
    long max_product_states = 20'000;
    long max_strategies = 1'000'000;
    int max_states = 14;
};

namespace oracle_detail {

/// Explicit game graph with three node flags.
struct Net {
    std::vector<Player> owner;
    std::vector<std::vector<int>> succ;
    std::vector<char> bad;   // a window just failed / good window lost
    std::vector<char> done;  // good window won
    std::vector<int> entry;  // per base state: starting node
};

/// Window tracking per dimension: running sum of the oldest open window
/// and the number of edges it may still use. Direct tracking of the good
/// window additionally remembers closed dimensions.
struct Track {
    std::vector<Weight> sum;
    std::vector<int> left;
    std::vector<char> closed;
    auto operator<=>(const Track&) const = default;
};

/// Build the tracking graph. `good_window` selects the one-shot variant.
/// `fixed[s]` (>= 0) restricts P1 at s to a single successor.
inline Net build(const GameStructure& g, int lmax, bool good_window, const std::vector<int>* fixed, long cap) {
    const int k = g.dims();
    Net net;
    std::map<std::pair<int, Track>, int> ids;
    std::map<int, int> bad_ids;
    std::vector<std::pair<int, Track>> info;
    std::vector<int> todo;
    int done_node = -1, lost_node = -1;

    auto fresh = [&] {
        Track t;
        t.sum.assign(static_cast<std::size_t>(k), 0);
        t.left.assign(static_cast<std::size_t>(k), lmax);
        if (good_window) t.closed.assign(static_cast<std::size_t>(k), 0);
        return t;
    };
    auto make = [&](Player p) {
        if (static_cast<long>(net.owner.size()) >= cap) throw ResourceExceeded("oracle product budget exceeded");
        net.owner.push_back(p);
        net.succ.emplace_back();
        net.bad.push_back(0);
        net.done.push_back(0);
        info.emplace_back(-1, Track{});
        return static_cast<int>(net.owner.size()) - 1;
    };
    auto get = [&](int s, const Track& t) {
        auto key = std::make_pair(s, t);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int v = make(g.owner(s));
        info[static_cast<std::size_t>(v)] = key;
        ids.emplace(key, v);
        todo.push_back(v);
        return v;
    };
    auto failed_at = [&](int s) {
        auto it = bad_ids.find(s);
        if (it != bad_ids.end()) return it->second;
        int v = make(g.owner(s));
        net.bad[static_cast<std::size_t>(v)] = 1;
        bad_ids.emplace(s, v);
        int next = get(s, fresh());
        net.succ[static_cast<std::size_t>(v)].push_back(next);
        return v;
    };
    auto sink = [&](int& slot, bool won) {
        if (slot < 0) {
            slot = make(Player::P1);
            net.succ[static_cast<std::size_t>(slot)].push_back(slot);
            (won ? net.done : net.bad)[static_cast<std::size_t>(slot)] = 1;
        }
        return slot;
    };

    net.entry.assign(static_cast<std::size_t>(g.num_states()), -1);
    for (int s = 0; s < g.num_states(); ++s) net.entry[static_cast<std::size_t>(s)] = get(s, fresh());
    while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        const auto [s, tr] = info[static_cast<std::size_t>(v)];
        for (int e : g.out_edges(s)) {
            const Edge& ed = g.edge(e);
            if (fixed && g.owner(s) == Player::P1 && (*fixed)[static_cast<std::size_t>(s)] != ed.dst) continue;
            Track nt = tr;
            bool fail = false, open = false;
            for (int t = 0; t < k; ++t) {
                auto i = static_cast<std::size_t>(t);
                if (good_window && nt.closed[i]) continue;
                Weight total = tr.sum[i] + ed.weight[i];
                if (total >= 0) {
                    nt.sum[i] = 0;
                    nt.left[i] = lmax;
                    if (good_window) nt.closed[i] = 1;
                } else if (tr.left[i] <= 1) {
                    fail = true;
                } else {
                    nt.sum[i] = total;
                    nt.left[i] = tr.left[i] - 1;
                    open = true;
                }
            }
            int target;
            if (good_window) target = fail ? sink(lost_node, false) : !open ? sink(done_node, true) : get(ed.dst, nt);
            else target = fail ? failed_at(ed.dst) : get(ed.dst, nt);
            net.succ[static_cast<std::size_t>(v)].push_back(target);
        }
    }
    return net;
}

inline std::vector<char> reach(const std::vector<std::vector<int>>& succ, int from,
                               const std::function<bool(int)>& pass = nullptr) {
    std::vector<char> seen(succ.size(), 0);
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : succ[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)] && (!pass || pass(w))) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

/// Does some node satisfying `mark`, reachable from `from`, lie on a cycle
/// (made of nodes satisfying `inside`)?
inline bool reachable_cycle(const std::vector<std::vector<int>>& succ, int from, const std::function<bool(int)>& mark,
                            const std::function<bool(int)>& inside) {
    auto r = reach(succ, from);
    for (int v = 0; v < static_cast<int>(succ.size()); ++v) {
        if (!r[static_cast<std::size_t>(v)] || !mark(v) || !inside(v)) continue;
        for (int w : succ[static_cast<std::size_t>(v)]) {
            if (!inside(w)) continue;
            if (w == v) return true;
            if (reach(succ, w, inside)[static_cast<std::size_t>(v)]) return true;
        }
    }
    return false;
}

enum class Mode { Fixed, Direct, Good };

/// Whether the opponent of `chooser` wins from `from` once every node of
/// `chooser` has at most one successor (`succ` already restricted).
inline bool opponent_wins(const Net& net, const std::vector<std::vector<int>>& succ, int from, Mode mode, Player chooser) {
    auto is_bad = [&](int v) { return net.bad[static_cast<std::size_t>(v)] != 0; };
    auto not_bad = [&](int v) { return net.bad[static_cast<std::size_t>(v)] == 0; };
    auto any = [](int) { return true; };
    if (chooser == Player::P1) {
        switch (mode) {
            case Mode::Fixed: return reachable_cycle(succ, from, is_bad, any);
            case Mode::Direct:
            case Mode::Good: {
                auto r = reach(succ, from);
                for (std::size_t v = 0; v < r.size(); ++v)
                    if (r[v] && net.bad[v]) return true;
                return false;
            }
        }
    }
    switch (mode) {
        case Mode::Fixed: return reachable_cycle(succ, from, not_bad, not_bad);
        case Mode::Direct: {
            if (!not_bad(from)) return false;
            // A cycle of non-failing nodes reachable through non-failing nodes.
            auto r = reach(succ, from, not_bad);
            for (int v = 0; v < static_cast<int>(succ.size()); ++v)
                if (r[static_cast<std::size_t>(v)] && reachable_cycle(succ, v, [&](int x) { return x == v; }, not_bad))
                    return true;
            return false;
        }
        case Mode::Good: {
            auto r = reach(succ, from);
            for (std::size_t v = 0; v < r.size(); ++v)
                if (r[v] && net.done[v]) return true;
            return false;
        }
    }
    return false;
}

/**
 * Does `chooser` have a positional strategy on the tracking graph that wins
 * from `from`? Depth-first over choices at nodes reached so far; a partial
 * assignment is abandoned as soon as the opponent already wins on it, which
 * is sound because fixing more choices only adds edges.
 */
inline bool chooser_wins(const Net& net, int from, Mode mode, Player chooser, long& budget) {
    const int n = static_cast<int>(net.owner.size());
    std::vector<int> choice(static_cast<std::size_t>(n), -1);
    std::function<bool()> rec = [&]() -> bool {
        if (--budget < 0) throw ResourceExceeded("oracle strategy budget exceeded");
        std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            if (net.owner[static_cast<std::size_t>(v)] == chooser && net.succ[static_cast<std::size_t>(v)].size() > 1) {
                int c = choice[static_cast<std::size_t>(v)];
                if (c >= 0) succ[static_cast<std::size_t>(v)].push_back(net.succ[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)]);
            } else {
                succ[static_cast<std::size_t>(v)] = net.succ[static_cast<std::size_t>(v)];
            }
        }
        if (opponent_wins(net, succ, from, mode, chooser)) return false;
        auto r = reach(succ, from);
        int open = -1;
        for (int v = 0; v < n && open < 0; ++v)
            if (r[static_cast<std::size_t>(v)] && net.owner[static_cast<std::size_t>(v)] == chooser &&
                net.succ[static_cast<std::size_t>(v)].size() > 1 && choice[static_cast<std::size_t>(v)] < 0)
                open = v;
        if (open < 0) return true;
        for (std::size_t c = 0; c < net.succ[static_cast<std::size_t>(open)].size(); ++c) {
            choice[static_cast<std::size_t>(open)] = static_cast<int>(c);
            if (rec()) return true;
        }
        choice[static_cast<std::size_t>(open)] = -1;
        return false;
    };
    return rec();
}

/// Calls f(choice) for every memoryless choice of `p`; stops when f returns true.
inline void for_each_memoryless(const GameStructure& g, Player p, long max_count,
                                const std::function<bool(const std::vector<int>&)>& f) {
    std::vector<int> owned;
    for (int s = 0; s < g.num_states(); ++s)
        if (g.owner(s) == p) owned.push_back(s);
    std::vector<std::size_t> digit(owned.size(), 0);
    std::vector<int> choice(static_cast<std::size_t>(g.num_states()), -1);
    long count = 0;
    for (;;) {
        if (++count > max_count) throw ResourceExceeded("oracle strategy budget exceeded");
        for (std::size_t i = 0; i < owned.size(); ++i)
            choice[static_cast<std::size_t>(owned[i])] = g.successors(owned[i])[digit[i]];
        if (f(choice)) return;
        std::size_t i = 0;
        while (i < owned.size()) {
            if (++digit[i] < g.successors(owned[i]).size()) break;
            digit[i] = 0;
            ++i;
        }
        if (i == owned.size()) return;
    }
}

}  // namespace oracle_detail

/// Window size used by the oracle for bounded kinds (one dimension).
inline long oracle_bounded_window(const GameStructure& g) {
    long n = g.num_states();
    return std::max(1L, (n - 1) * (n * static_cast<long>(g.max_abs_weight()) + 1));
}

/**
 * Reference winning set of a window objective for P1.
 *
 * Fixed kinds: positional strategies of P1 on the window-tracking graph,
 * searched per start state. Bounded kinds (one dimension): memoryless P1
 * strategies of the game, each checked against every P2 behaviour at the
 * sufficient window size.
 */
inline StateSet oracle_window(const GameStructure& g, const ObjectiveSpec& spec, const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    if (!is_window(spec.kind)) throw InvalidInput("oracle_window handles window objectives");
    spec.check(g.dims());
    if (!spec.zero_threshold()) throw InvalidInput("normalize the threshold first");
    const int n = g.num_states();
    StateSet win(n);
    long strategies = budget.max_strategies;

    if (spec.kind == ObjectiveKind::BndWMP || spec.kind == ObjectiveKind::DirBndWMP) {
        if (g.dims() != 1) throw Unsupported("bounded window oracle needs one dimension");
        const int l = static_cast<int>(oracle_bounded_window(g));
        const Mode mode = spec.kind == ObjectiveKind::BndWMP ? Mode::Fixed : Mode::Direct;
        for_each_memoryless(g, Player::P1, budget.max_strategies, [&](const std::vector<int>& choice) {
            Net net = build(g, l, false, &choice, budget.max_product_states);
            for (int s = 0; s < n; ++s)
                if (!win.contains(s) && !opponent_wins(net, net.succ, net.entry[static_cast<std::size_t>(s)], mode, Player::P1))
                    win.insert(s);
            return win.full();
        });
        return win;
    }

    const Mode mode = spec.kind == ObjectiveKind::GW ? Mode::Good
                      : spec.kind == ObjectiveKind::DirFixWMP ? Mode::Direct
                                                              : Mode::Fixed;
    Net net = build(g, *spec.lmax, mode == Mode::Good, nullptr, budget.max_product_states);
    for (int s = 0; s < n; ++s)
        if (chooser_wins(net, net.entry[static_cast<std::size_t>(s)], mode, Player::P1, strategies)) win.insert(s);
    return win;
}

/// States where P2 has a positional strategy on the tracking graph that
/// defeats every P1 behaviour (fixed kinds only).
inline StateSet oracle_window_p2(const GameStructure& g, const ObjectiveSpec& spec, const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    if (spec.kind != ObjectiveKind::GW && spec.kind != ObjectiveKind::DirFixWMP && spec.kind != ObjectiveKind::FixWMP)
        throw InvalidInput("P2-side oracle handles fixed window kinds");
    spec.check(g.dims());
    const Mode mode = spec.kind == ObjectiveKind::GW ? Mode::Good
                      : spec.kind == ObjectiveKind::DirFixWMP ? Mode::Direct
                                                              : Mode::Fixed;
    Net net = build(g, *spec.lmax, mode == Mode::Good, nullptr, budget.max_product_states);
    long strategies = budget.max_strategies;
    StateSet win(g.num_states());
    for (int s = 0; s < g.num_states(); ++s)
        if (chooser_wins(net, net.entry[static_cast<std::size_t>(s)], mode, Player::P2, strategies)) win.insert(s);
    return win;
}

/**
 * Reference winning set for a classical payoff objective in one dimension:
 * P1 wins s iff some memoryless P1 strategy beats every memoryless P2 reply,
 * each resulting play evaluated exactly as a lasso.
 */
inline StateSet oracle_classical(const GameStructure& g, ObjectiveKind kind, Rational threshold,
                                 const OracleBudget& budget = {}) {
    using namespace oracle_detail;
    if (is_window(kind)) throw InvalidInput("oracle_classical handles payoff objectives");
    if (g.dims() != 1) throw Unsupported("classical oracle needs one dimension");
    if (g.num_states() > budget.max_states) throw ResourceExceeded("classical oracle state budget exceeded");
    const int n = g.num_states();
    const ObjectiveSpec spec = ObjectiveSpec::payoff(kind, {threshold});
    StateSet win(n);
    for_each_memoryless(g, Player::P1, budget.max_strategies, [&](const std::vector<int>& sigma) {
        std::vector<char> beaten(static_cast<std::size_t>(n), 0);
        for_each_memoryless(g, Player::P2, budget.max_strategies, [&](const std::vector<int>& tau) {
            for (int s = 0; s < n; ++s) {
                if (beaten[static_cast<std::size_t>(s)]) continue;
                std::vector<int> pos(static_cast<std::size_t>(n), -1), seq;
                int v = s;
                while (pos[static_cast<std::size_t>(v)] < 0) {
                    pos[static_cast<std::size_t>(v)] = static_cast<int>(seq.size());
                    seq.push_back(v);
                    v = g.owner(v) == Player::P1 ? sigma[static_cast<std::size_t>(v)] : tau[static_cast<std::size_t>(v)];
                }
                Lasso l;
                l.stem.assign(seq.begin(), seq.begin() + pos[static_cast<std::size_t>(v)]);
                l.cycle.assign(seq.begin() + pos[static_cast<std::size_t>(v)], seq.end());
                if (!eval_lasso(g, l, spec).holds) beaten[static_cast<std::size_t>(s)] = 1;
            }
            return false;
        });
        for (int s = 0; s < n; ++s)
            if (!beaten[static_cast<std::size_t>(s)]) win.insert(s);
        return win.full();
    });
    return win;
}

}  // namespace wmp
