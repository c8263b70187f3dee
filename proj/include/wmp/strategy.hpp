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

#include <algorithm>
#include <deque>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wmp/arena.hpp"
#include "wmp/classical.hpp"
#include "wmp/core.hpp"
#include "wmp/window1d.hpp"
#include "wmp/windowkd.hpp"

namespace wmp {

// ---------------------------------------------------------------------------
// Moore machines
// ---------------------------------------------------------------------------

/**
 * Finite-memory strategy. In memory m at state s the owner moves to
 * act(m, s); the memory then becomes next(m, s).
 */
struct MooreStrategy {
    Player player = Player::P1;
    std::vector<std::string> memory;
    int init = 0;
    int num_states = 0;
    std::vector<int> update;  // memory x states
    std::vector<int> action;  // memory x states, -1 where the player does not move

    int memory_size() const noexcept { return static_cast<int>(memory.size()); }
    int next(int m, int s) const { return update[static_cast<std::size_t>(m * num_states + s)]; }
    int act(int m, int s) const { return action[static_cast<std::size_t>(m * num_states + s)]; }
    void set(int m, int s, int upd, int act) {
        update[static_cast<std::size_t>(m * num_states + s)] = upd;
        action[static_cast<std::size_t>(m * num_states + s)] = act;
    }

    static MooreStrategy blank(Player p, int memories, int states) {
        MooreStrategy st;
        st.player = p;
        st.num_states = states;
        for (int m = 0; m < memories; ++m) st.memory.push_back("m" + std::to_string(m));
        st.update.assign(static_cast<std::size_t>(memories * states), 0);
        st.action.assign(static_cast<std::size_t>(memories * states), -1);
        return st;
    }

    /// One memory state; `choice[s]` is the successor at owned states.
    static MooreStrategy memoryless(const GameStructure& g, Player p, const std::vector<int>& choice) {
        MooreStrategy st = blank(p, 1, g.num_states());
        for (int s = 0; s < g.num_states(); ++s)
            if (g.owner(s) == p) {
                int c = choice[static_cast<std::size_t>(s)];
                st.set(0, s, 0, c >= 0 ? c : g.successors(s).front());
            }
        return st;
    }
};

/// Throws InvalidInput unless `st` is a total, edge-respecting machine over g.
inline void validate_strategy(const GameStructure& g, const MooreStrategy& st) {
    if (st.num_states != g.num_states()) throw InvalidInput("strategy covers a different number of states");
    if (st.memory.empty()) throw InvalidInput("strategy has no memory states");
    if (st.init < 0 || st.init >= st.memory_size()) throw InvalidInput("strategy init out of range");
    for (int m = 0; m < st.memory_size(); ++m)
        for (int s = 0; s < g.num_states(); ++s) {
            int u = st.next(m, s);
            if (u < 0 || u >= st.memory_size())
                throw InvalidInput("missing update for (" + st.memory[static_cast<std::size_t>(m)] + ", " + g.id(s) + ")");
            if (g.owner(s) != st.player) continue;
            int a = st.act(m, s);
            if (a < 0) throw InvalidInput("missing action for (" + st.memory[static_cast<std::size_t>(m)] + ", " + g.id(s) + ")");
            if (!g.find_edge(s, a)) throw InvalidInput("action " + g.id(s) + "->" + g.id(a) + " is not an edge");
        }
}

inline void serialize_strategy(const GameStructure& g, const MooreStrategy& st, std::ostream& out) {
    out << "wstrat 1\n";
    out << "player " << (st.player == Player::P1 ? 1 : 2) << "\n";
    out << "memory";
    for (const auto& m : st.memory) out << ' ' << m;
    out << "\n";
    out << "init " << st.memory[static_cast<std::size_t>(st.init)] << "\n";
    for (int m = 0; m < st.memory_size(); ++m)
        for (int s = 0; s < g.num_states(); ++s)
            out << "update " << st.memory[static_cast<std::size_t>(m)] << ' ' << g.id(s) << ' '
                << st.memory[static_cast<std::size_t>(st.next(m, s))] << "\n";
    for (int m = 0; m < st.memory_size(); ++m)
        for (int s = 0; s < g.num_states(); ++s)
            if (g.owner(s) == st.player)
                out << "act " << st.memory[static_cast<std::size_t>(m)] << ' ' << g.id(s) << ' ' << g.id(st.act(m, s))
                    << "\n";
}

inline std::string serialize_strategy(const GameStructure& g, const MooreStrategy& st) {
    std::ostringstream out;
    serialize_strategy(g, st, out);
    return out.str();
}

/// Parse a wstrat document against game g.
inline MooreStrategy parse_strategy(std::istream& in, const GameStructure& g) {
    std::string raw;
    int lineno = 0;
    int stage = 0;  // 0 header, 1 player, 2 memory, 3 init, 4 body
    MooreStrategy st;
    std::map<std::string, int> mem;
    std::vector<char> has_update, has_action;
    auto state_of = [&](const detail::Token& t, int ln) {
        detail::parse_id(t, ln);
        auto v = g.index_of(t.text);
        if (!v) throw InvalidInput("line " + std::to_string(ln) + ": unknown state '" + t.text + "'");
        return *v;
    };
    auto memory_of = [&](const detail::Token& t, int ln) {
        detail::parse_id(t, ln);
        auto it = mem.find(t.text);
        if (it == mem.end()) throw InvalidInput("line " + std::to_string(ln) + ": unknown memory '" + t.text + "'");
        return it->second;
    };
    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = detail::tokenize_line(raw);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;
        auto arity = [&](std::size_t n) {
            if (toks.size() != n)
                throw ParseError("'" + kw + "' expects " + std::to_string(n - 1) + " argument(s)", lineno, toks[0].column);
        };
        if (stage == 0) {
            if (kw != "wstrat") throw ParseError("expected 'wstrat 1' header", lineno, toks[0].column);
            arity(2);
            if (toks[1].text != "1") throw ParseError("unsupported wstrat version", lineno, toks[1].column);
            stage = 1;
        } else if (stage == 1) {
            if (kw != "player") throw ParseError("expected 'player <1|2>'", lineno, toks[0].column);
            arity(2);
            if (toks[1].text == "1") st.player = Player::P1;
            else if (toks[1].text == "2") st.player = Player::P2;
            else throw ParseError("player must be 1 or 2", lineno, toks[1].column);
            stage = 2;
        } else if (stage == 2) {
            if (kw != "memory") throw ParseError("expected 'memory <ids>'", lineno, toks[0].column);
            if (toks.size() < 2) throw ParseError("'memory' needs at least one id", lineno, toks[0].column);
            for (std::size_t i = 1; i < toks.size(); ++i) {
                detail::parse_id(toks[i], lineno);
                if (mem.count(toks[i].text))
                    throw InvalidInput("line " + std::to_string(lineno) + ": duplicate memory '" + toks[i].text + "'");
                mem.emplace(toks[i].text, static_cast<int>(st.memory.size()));
                st.memory.push_back(toks[i].text);
            }
            st.num_states = g.num_states();
            st.update.assign(st.memory.size() * static_cast<std::size_t>(g.num_states()), -1);
            st.action.assign(st.update.size(), -1);
            has_update.assign(st.update.size(), 0);
            has_action.assign(st.update.size(), 0);
            stage = 3;
        } else if (stage == 3) {
            if (kw != "init") throw ParseError("expected 'init <m>'", lineno, toks[0].column);
            arity(2);
            st.init = memory_of(toks[1], lineno);
            stage = 4;
        } else if (kw == "update") {
            arity(4);
            int m = memory_of(toks[1], lineno);
            int s = state_of(toks[2], lineno);
            int u = memory_of(toks[3], lineno);
            auto idx = static_cast<std::size_t>(m * st.num_states + s);
            if (has_update[idx]) throw InvalidInput("line " + std::to_string(lineno) + ": duplicate update");
            has_update[idx] = 1;
            st.update[idx] = u;
        } else if (kw == "act") {
            arity(4);
            int m = memory_of(toks[1], lineno);
            int s = state_of(toks[2], lineno);
            int t = state_of(toks[3], lineno);
            if (g.owner(s) != st.player)
                throw InvalidInput("line " + std::to_string(lineno) + ": action at a state the player does not own");
            auto idx = static_cast<std::size_t>(m * st.num_states + s);
            if (has_action[idx]) throw InvalidInput("line " + std::to_string(lineno) + ": duplicate act");
            has_action[idx] = 1;
            st.action[idx] = t;
        } else {
            throw ParseError("unknown keyword '" + kw + "'", lineno, toks[0].column);
        }
    }
    if (stage < 4) throw ParseError("truncated wstrat document", lineno + 1, 1);
    validate_strategy(g, st);
    return st;
}

inline MooreStrategy parse_strategy(const std::string& text, const GameStructure& g) {
    std::istringstream in(text);
    return parse_strategy(in, g);
}

/**
 * Smallest equivalent machine: partition refinement on (action row,
 * update classes), restricted to memory reachable from init and renumbered
 * breadth-first from init.
 */
inline MooreStrategy minimize(const GameStructure& g, const MooreStrategy& st) {
    const int M = st.memory_size();
    const int n = g.num_states();
    std::vector<int> cls(static_cast<std::size_t>(M));
    {
        std::map<std::vector<int>, int> ids;
        for (int m = 0; m < M; ++m) {
            std::vector<int> row(st.action.begin() + m * n, st.action.begin() + (m + 1) * n);
            cls[static_cast<std::size_t>(m)] = ids.emplace(row, static_cast<int>(ids.size())).first->second;
        }
    }
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(static_cast<std::size_t>(M));
        for (int m = 0; m < M; ++m) {
            std::vector<int> sig{cls[static_cast<std::size_t>(m)]};
            for (int s = 0; s < n; ++s) sig.push_back(cls[static_cast<std::size_t>(st.next(m, s))]);
            next[static_cast<std::size_t>(m)] = ids.emplace(sig, static_cast<int>(ids.size())).first->second;
        }
        bool stable = std::set<int>(next.begin(), next.end()).size() == std::set<int>(cls.begin(), cls.end()).size();
        cls.swap(next);
        if (stable) break;
    }
    // Representative per class, numbered by BFS from init.
    std::map<int, int> number;
    std::vector<int> rep;
    std::deque<int> queue{st.init};
    number[cls[static_cast<std::size_t>(st.init)]] = 0;
    rep.push_back(st.init);
    while (!queue.empty()) {
        int m = queue.front();
        queue.pop_front();
        for (int s = 0; s < n; ++s) {
            int u = st.next(m, s);
            int c = cls[static_cast<std::size_t>(u)];
            if (number.emplace(c, static_cast<int>(rep.size())).second) {
                rep.push_back(u);
                queue.push_back(u);
            }
        }
    }
    MooreStrategy out = MooreStrategy::blank(st.player, static_cast<int>(rep.size()), n);
    for (int i = 0; i < static_cast<int>(rep.size()); ++i)
        for (int s = 0; s < n; ++s)
            out.set(i, s, number[cls[static_cast<std::size_t>(st.next(rep[static_cast<std::size_t>(i)], s))]],
                    st.act(rep[static_cast<std::size_t>(i)], s));
    return out;
}

// ---------------------------------------------------------------------------
// Plays
// ---------------------------------------------------------------------------

/**
 * The unique play from `start` when both players follow machines. A player
 * without a machine always takes its first edge.
 */
inline Lasso play_out(const GameStructure& g, const MooreStrategy* p1, const MooreStrategy* p2, int start) {
    struct Conf {
        int s, m1, m2;
        auto operator<=>(const Conf&) const = default;
    };
    std::map<Conf, int> seen;
    std::vector<int> states;
    Conf c{start, p1 ? p1->init : 0, p2 ? p2->init : 0};
    while (!seen.count(c)) {
        seen.emplace(c, static_cast<int>(states.size()));
        states.push_back(c.s);
        const MooreStrategy* mover = g.owner(c.s) == Player::P1 ? p1 : p2;
        int m = g.owner(c.s) == Player::P1 ? c.m1 : c.m2;
        int t = mover ? mover->act(m, c.s) : g.successors(c.s).front();
        c = Conf{t, p1 ? p1->next(c.m1, c.s) : 0, p2 ? p2->next(c.m2, c.s) : 0};
    }
    int loop = seen[c];
    Lasso l;
    l.stem.assign(states.begin(), states.begin() + loop);
    l.cycle.assign(states.begin() + loop, states.end());
    return l;
}

/// Same play with the shortest stem and cycle.
inline Lasso shorten_lasso(Lasso l) {
    // Smallest period of the cycle.
    const std::size_t c = l.cycle.size();
    for (std::size_t p = 1; p < c; ++p) {
        if (c % p) continue;
        bool ok = true;
        for (std::size_t i = p; i < c && ok; ++i) ok = l.cycle[i] == l.cycle[i - p];
        if (ok) {
            l.cycle.resize(p);
            break;
        }
    }
    // Fold the stem into the cycle while its tail repeats the cycle's tail.
    while (!l.stem.empty() && l.stem.back() == l.cycle.back()) {
        std::rotate(l.cycle.rbegin(), l.cycle.rbegin() + 1, l.cycle.rend());
        l.stem.pop_back();
    }
    return l;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct Verdict {
    bool pass = false;
    /// P1 machine: a consistent play violating the objective.
    /// P2 machine: a consistent play satisfying it.
    std::optional<Lasso> counterexample;
    long product_states = 0;
};

namespace detail {

/// Strongly connected components, iterative Tarjan. Returns component ids.
inline std::vector<int> scc_ids(const std::vector<std::vector<int>>& succ, int& count) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
        comp(static_cast<std::size_t>(n), -1);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0;
    count = 0;
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] >= 0) continue;
        call.emplace_back(root, 0);
        while (!call.empty()) {
            auto& [v, i] = call.back();
            auto vs = static_cast<std::size_t>(v);
            if (i == 0 && index[vs] < 0) {
                index[vs] = low[vs] = counter++;
                stack.push_back(v);
                on_stack[vs] = 1;
            }
            if (i < succ[vs].size()) {
                int w = succ[vs][i++];
                auto ws = static_cast<std::size_t>(w);
                if (index[ws] < 0) {
                    call.emplace_back(w, 0);
                } else if (on_stack[ws]) {
                    low[vs] = std::min(low[vs], index[ws]);
                }
                continue;
            }
            if (low[vs] == index[vs]) {
                for (;;) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    comp[static_cast<std::size_t>(w)] = count;
                    if (w == v) break;
                }
                ++count;
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) {
                auto p = static_cast<std::size_t>(call.back().first);
                low[p] = std::min(low[p], low[static_cast<std::size_t>(done)]);
            }
        }
    }
    return comp;
}

/// BFS path from any of `sources` to a node satisfying `goal`, moving only
/// through nodes satisfying `allowed`. Returns the node sequence.
inline std::optional<std::vector<int>> bfs_path(const std::vector<std::vector<int>>& succ, const std::vector<int>& sources,
                                                const std::function<bool(int)>& goal,
                                                const std::function<bool(int)>& allowed) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> parent(static_cast<std::size_t>(n), -2);
    std::deque<int> queue;
    for (int s : sources)
        if (allowed(s) && parent[static_cast<std::size_t>(s)] == -2) {
            parent[static_cast<std::size_t>(s)] = -1;
            queue.push_back(s);
        }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (goal(v)) {
            std::vector<int> path;
            for (int x = v; x >= 0; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (int w : succ[static_cast<std::size_t>(v)])
            if (allowed(w) && parent[static_cast<std::size_t>(w)] == -2) {
                parent[static_cast<std::size_t>(w)] = v;
                queue.push_back(w);
            }
    }
    return std::nullopt;
}

/// Play graph of a machine: nodes (state, memory, window tracking).
struct PlayProduct {
    struct Key {
        int s, m;
        WindowState ws;
        std::vector<char> closed;  // good-window mode only
        char mark;                 // 1: a window just failed; 2: done sink; 3: fail sink
        auto operator<=>(const Key&) const = default;
    };
    std::vector<Key> nodes;
    std::vector<std::vector<int>> succ;
    std::vector<int> starts;
};

/// Explore the plays consistent with `st` from `starts`, tracking windows
/// either for the fixed objectives or for the good window.
inline PlayProduct explore_plays(const GameStructure& g, const MooreStrategy& st, int lmax, bool good_window,
                                 const std::vector<int>& starts, long cap) {
    const int k = g.dims();
    PlayProduct p;
    std::map<PlayProduct::Key, int> index;
    std::deque<int> queue;
    auto node = [&](PlayProduct::Key key) {
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (static_cast<long>(p.nodes.size()) >= cap)
            throw ResourceExceeded("verification product exceeds cap of " + std::to_string(cap) + " states");
        int v = static_cast<int>(p.nodes.size());
        index.emplace(key, v);
        p.nodes.push_back(std::move(key));
        p.succ.emplace_back();
        queue.push_back(v);
        return v;
    };
    const WindowState fresh = WindowState::fresh(k, lmax);
    for (int s : starts)
        p.starts.push_back(node({s, st.init, fresh, good_window ? std::vector<char>(static_cast<std::size_t>(k), 0) : std::vector<char>{}, 0}));
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        const PlayProduct::Key cur = p.nodes[static_cast<std::size_t>(v)];
        if (cur.mark >= 2) {
            p.succ[static_cast<std::size_t>(v)].push_back(v);
            continue;
        }
        std::vector<int> moves;
        if (g.owner(cur.s) == st.player) moves.push_back(st.act(cur.m, cur.s));
        else moves = g.successors(cur.s);
        const int m2 = st.next(cur.m, cur.s);
        for (int t : moves) {
            const WeightVec& w = g.edge(*g.find_edge(cur.s, t)).weight;
            PlayProduct::Key nk{t, m2, fresh, {}, 0};
            if (!good_window) {
                auto next = window_step(cur.ws, w, lmax);
                if (next) nk.ws = *next;
                else nk.mark = 1;
            } else {
                nk.closed = cur.closed;
                nk.ws = cur.ws;
                bool failed = false, all = true;
                for (int t2 = 0; t2 < k; ++t2) {
                    auto ts = static_cast<std::size_t>(t2);
                    if (nk.closed[ts]) continue;
                    Weight sum = cur.ws.sigma[ts] + w[ts];
                    if (sum >= 0) {
                        nk.closed[ts] = 1;
                        nk.ws.sigma[ts] = 0;
                        nk.ws.tau[ts] = lmax;
                    } else if (cur.ws.tau[ts] == 1) {
                        failed = true;
                    } else {
                        nk.ws.sigma[ts] = sum;
                        nk.ws.tau[ts] = cur.ws.tau[ts] - 1;
                        all = false;
                    }
                }
                // Sinks keep (state, memory) so a lasso can be completed later.
                if (failed || all) nk = PlayProduct::Key{t, m2, fresh, {}, static_cast<char>(failed ? 3 : 2)};
            }
            int u = node(std::move(nk));
            p.succ[static_cast<std::size_t>(v)].push_back(u);
        }
    }
    return p;
}

/// Extends a finite consistent play (state, memory pairs) into a lasso by
/// following the machine and first edges, looping only after the prefix.
inline Lasso complete_lasso(const GameStructure& g, const MooreStrategy& st, std::vector<std::pair<int, int>> prefix) {
    std::map<std::pair<int, int>, std::size_t> seen;
    std::size_t base = prefix.size() - 1;
    seen[prefix.back()] = base;
    for (;;) {
        auto [s, m] = prefix.back();
        int t = g.owner(s) == st.player ? st.act(m, s) : g.successors(s).front();
        std::pair<int, int> nx{t, st.next(m, s)};
        auto it = seen.find(nx);
        if (it != seen.end()) {
            Lasso l;
            for (std::size_t i = 0; i < it->second; ++i) l.stem.push_back(prefix[i].first);
            for (std::size_t i = it->second; i < prefix.size(); ++i) l.cycle.push_back(prefix[i].first);
            return shorten_lasso(l);
        }
        seen[nx] = prefix.size();
        prefix.push_back(nx);
    }
}

}  // namespace detail

/**
 * Exact check of a machine against a window objective from each start
 * state (default: the initial state). Bounded kinds are checked at the
 * sufficient window size, which is exact for one dimension.
 */
inline Verdict verify_strategy(const GameStructure& g, const MooreStrategy& st, const ObjectiveSpec& spec,
                               std::vector<int> starts = {}, long cap = product_cap_from_env()) {
    validate_strategy(g, st);
    if (!is_window(spec.kind)) throw Unsupported("verification supports window objectives only");
    ObjectiveSpec eff = spec;
    if (spec.kind == ObjectiveKind::BndWMP || spec.kind == ObjectiveKind::DirBndWMP) {
        if (g.dims() != 1) throw Unsupported("bounded window verification needs one dimension");
        eff.kind = spec.kind == ObjectiveKind::BndWMP ? ObjectiveKind::FixWMP : ObjectiveKind::DirFixWMP;
        eff.lmax = static_cast<int>(sufficient_window(g));
    }
    eff.check(g.dims());
    if (!eff.zero_threshold()) throw InvalidInput("window objectives are checked at threshold 0; normalize the game first");
    if (starts.empty()) {
        if (!g.init()) throw InvalidInput("game has no initial state");
        starts.push_back(*g.init());
    }
    const bool gw = eff.kind == ObjectiveKind::GW;
    const bool direct = eff.kind == ObjectiveKind::DirFixWMP;
    const bool p1 = st.player == Player::P1;
    auto prod = detail::explore_plays(g, st, *eff.lmax, gw, starts, cap);
    Verdict v;
    v.product_states = static_cast<long>(prod.nodes.size());
    const auto& nodes = prod.nodes;
    auto mark = [&](int x) { return nodes[static_cast<std::size_t>(x)].mark; };
    auto all = [](int) { return true; };

    auto to_pairs = [&](const std::vector<int>& path) {
        std::vector<std::pair<int, int>> out;
        for (int x : path) out.emplace_back(nodes[static_cast<std::size_t>(x)].s, nodes[static_cast<std::size_t>(x)].m);
        return out;
    };

    if (gw) {
        // P1 machine fails iff the fail sink is reachable; P2 machine fails iff done is.
        const char bad_mark = p1 ? 3 : 2;
        auto path = detail::bfs_path(prod.succ, prod.starts, [&](int x) { return mark(x) == bad_mark; }, all);
        v.pass = !path;
        if (path) v.counterexample = detail::complete_lasso(g, st, to_pairs(*path));
        return v;
    }

    if (direct && p1) {
        auto path = detail::bfs_path(prod.succ, prod.starts, [&](int x) { return mark(x) == 1; }, all);
        v.pass = !path;
        if (path) v.counterexample = detail::complete_lasso(g, st, to_pairs(*path));
        return v;
    }

    // Cycle conditions. P1 machine (fixed): fails iff a reachable cycle has
    // a failing node. P2 machine: fails iff P1 can reach a cycle without
    // failing nodes (for the direct kind, through non-failing nodes only).
    std::vector<std::vector<int>> sub = prod.succ;
    if (!p1)
        for (int x = 0; x < static_cast<int>(sub.size()); ++x) {
            if (mark(x) == 1) sub[static_cast<std::size_t>(x)].clear();
            else
                std::erase_if(sub[static_cast<std::size_t>(x)], [&](int y) { return mark(y) == 1; });
        }
    int ncomp = 0;
    auto comp = detail::scc_ids(sub, ncomp);
    std::vector<int> comp_size(static_cast<std::size_t>(ncomp), 0);
    std::vector<char> self_loop(static_cast<std::size_t>(ncomp), 0);
    for (int x = 0; x < static_cast<int>(sub.size()); ++x) {
        ++comp_size[static_cast<std::size_t>(comp[static_cast<std::size_t>(x)])];
        for (int y : sub[static_cast<std::size_t>(x)])
            if (y == x) self_loop[static_cast<std::size_t>(comp[static_cast<std::size_t>(x)])] = 1;
    }
    auto cyclic = [&](int x) {
        int c = comp[static_cast<std::size_t>(x)];
        return comp_size[static_cast<std::size_t>(c)] > 1 || self_loop[static_cast<std::size_t>(c)];
    };
    std::function<bool(int)> goal, allowed = all;
    if (p1) goal = [&](int x) { return mark(x) == 1 && cyclic(x); };
    else {
        goal = [&](int x) { return mark(x) != 1 && cyclic(x); };
        if (direct) allowed = [&](int x) { return mark(x) != 1; };
    }
    auto path = detail::bfs_path(direct && !p1 ? sub : prod.succ, prod.starts, goal, allowed);
    v.pass = !path;
    if (!path) return v;
    // Close the loop inside the component of the goal node.
    int g0 = path->back();
    int c0 = comp[static_cast<std::size_t>(g0)];
    std::vector<int> loop;
    {
        std::vector<int> firsts;
        for (int y : sub[static_cast<std::size_t>(g0)])
            if (comp[static_cast<std::size_t>(y)] == c0) firsts.push_back(y);
        auto back = detail::bfs_path(sub, firsts, [&](int x) { return x == g0; },
                                     [&](int x) { return comp[static_cast<std::size_t>(x)] == c0; });
        loop = *back;  // ends with g0
    }
    Lasso l;
    for (std::size_t i = 0; i + 1 < path->size(); ++i) l.stem.push_back(nodes[static_cast<std::size_t>((*path)[i])].s);
    l.cycle.push_back(nodes[static_cast<std::size_t>(g0)].s);
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) l.cycle.push_back(nodes[static_cast<std::size_t>(loop[i])].s);
    v.counterexample = shorten_lasso(l);
    return v;
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

namespace detail {

/**
 * Machine whose memory is (previous state, window state there), plus a
 * fresh initial memory. `policy(s, ws)` picks P1's move at s given the
 * window state on arrival at s. Failed windows restart fresh.
 */
inline MooreStrategy machine_from_window_policy(const GameStructure& g, int lmax, const StateSet& starts,
                                                const std::function<int(int, const WindowState&)>& policy) {
    const int n = g.num_states();
    const WindowState fresh = WindowState::fresh(g.dims(), lmax);
    std::map<std::pair<int, WindowState>, int> index;  // memory (prev, ws) -> id; 0 is the fresh memory
    std::vector<std::pair<int, WindowState>> mems{{-1, fresh}};
    std::deque<int> queue{0};
    auto memory = [&](int s, const WindowState& ws) {
        auto key = std::make_pair(s, ws);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(mems.size());
        index.emplace(key, id);
        mems.push_back(key);
        queue.push_back(id);
        return id;
    };
    // Window state on arrival at s with memory m.
    auto arrive = [&](int m, int s) {
        const auto& [prev, ws] = mems[static_cast<std::size_t>(m)];
        if (prev < 0) return fresh;
        auto e = g.find_edge(prev, s);
        if (!e) return fresh;
        auto next = window_step(ws, g.edge(*e).weight, lmax);
        return next ? *next : fresh;
    };
    // Explore only memories that arise on consistent plays from `starts`.
    std::vector<std::vector<char>> visited;
    std::deque<std::pair<int, int>> work;
    auto visit = [&](int m, int s) {
        if (static_cast<int>(visited.size()) <= m) visited.resize(static_cast<std::size_t>(m) + 1);
        auto& row = visited[static_cast<std::size_t>(m)];
        if (row.empty()) row.assign(static_cast<std::size_t>(n), 0);
        if (row[static_cast<std::size_t>(s)]) return;
        row[static_cast<std::size_t>(s)] = 1;
        work.emplace_back(m, s);
    };
    for (int s : starts.indices()) visit(0, s);
    while (!work.empty()) {
        auto [m, s] = work.front();
        work.pop_front();
        WindowState ws = arrive(m, s);
        int m2 = memory(s, ws);
        if (g.owner(s) == Player::P1) visit(m2, policy(s, ws));
        else
            for (int t : g.successors(s)) visit(m2, t);
    }
    MooreStrategy st = MooreStrategy::blank(Player::P1, static_cast<int>(mems.size()), n);
    const std::size_t known = mems.size();
    for (int m = 0; m < static_cast<int>(known); ++m)
        for (int s = 0; s < n; ++s) {
            WindowState ws = arrive(m, s);
            auto it = index.find({s, ws});
            // Unvisited combinations restart from the fresh memory's behaviour.
            st.set(m, s, it != index.end() ? it->second : 0, g.owner(s) == Player::P1 ? policy(s, ws) : -1);
        }
    return minimize(g, st);
}

inline void require_pass(const GameStructure& g, const MooreStrategy& st, const ObjectiveSpec& spec,
                         const StateSet& from, const char* what) {
    Verdict v = verify_strategy(g, st, spec, from.indices());
    if (!v.pass)
        throw InternalError(std::string(what) + " produced a strategy that fails verification: " +
                            format_lasso(g, *v.counterexample));
}

}  // namespace detail

/**
 * Winning P1 strategy for the fixed window in one dimension.
 * Attractor moves outside the direct regions; inside a direct region the
 * move maximizing w + max(0, C_{tau-1}(t)) for the oldest open window.
 */
inline MooreStrategy synth_fwmp_1d(const GameStructure& g, int lmax) {
    detail::require_one_dim(g, "fixed window synthesis");
    auto res = fwmp_detailed(g, lmax);
    if (res.winning.empty()) throw PreconditionFailed("empty winning set");
    const int n = g.num_states();
    std::vector<int> layer_of(static_cast<std::size_t>(n), -1);
    std::vector<char> in_direct(static_cast<std::size_t>(n), 0);
    std::vector<int> attract(static_cast<std::size_t>(n), -1);
    std::vector<GoodWinTable> tables;
    for (std::size_t i = 0; i < res.layers.size(); ++i) {
        const auto& L = res.layers[i];
        tables.push_back(direct_fwmp_detailed(g, lmax, L.region).table);
        for (int s : L.direct.indices()) {
            layer_of[static_cast<std::size_t>(s)] = static_cast<int>(i);
            in_direct[static_cast<std::size_t>(s)] = 1;
        }
        for (int s : L.attracted.indices()) {
            layer_of[static_cast<std::size_t>(s)] = static_cast<int>(i);
            attract[static_cast<std::size_t>(s)] = L.attractor_move[static_cast<std::size_t>(s)];
        }
    }
    auto policy = [&](int s, const WindowState& ws) -> int {
        if (attract[static_cast<std::size_t>(s)] >= 0) return attract[static_cast<std::size_t>(s)];
        if (!in_direct[static_cast<std::size_t>(s)]) return g.successors(s).front();
        const auto& L = res.layers[static_cast<std::size_t>(layer_of[static_cast<std::size_t>(s)])];
        const auto& tab = tables[static_cast<std::size_t>(layer_of[static_cast<std::size_t>(s)])];
        const int tau = ws.tau[0];
        int best = -1;
        Weight best_v = 0;
        for (int e : g.out_edges(s)) {
            const Edge& ed = g.edge(e);
            if (!L.direct.contains(ed.dst)) continue;
            Weight rest = tab.at(tau - 1, ed.dst);
            Weight v = ed.weight[0] + (rest > 0 ? rest : 0);
            if (best < 0 || v > best_v) {
                best = ed.dst;
                best_v = v;
            }
        }
        return best >= 0 ? best : g.successors(s).front();
    };
    MooreStrategy st = detail::machine_from_window_policy(g, lmax, res.winning, policy);
    detail::require_pass(g, st, ObjectiveSpec::window(ObjectiveKind::FixWMP, lmax), res.winning, "fixed window synthesis");
    return st;
}

/**
 * Memoryless P1 strategy for the bounded window in one dimension: attractor
 * moves toward each layer, and a uniform total-payoff strategy inside it.
 */
inline MooreStrategy synth_bwmp(const GameStructure& g, int budget = kDefaultOracleBudget) {
    detail::require_one_dim(g, "bounded window synthesis");
    const int n = g.num_states();
    std::vector<int> choice(static_cast<std::size_t>(n), -1);
    StateSet won(n);
    for (int it = 0; it <= n + 1; ++it) {
        StateSet region = won.complement();
        if (region.empty()) break;
        StateSet lose = unb_open_window(g, region, budget);
        if (lose == region) break;
        StateSet core = region - lose;
        Subgame sg = subgame(g, core);
        auto tp = tp_sup_win_with_strategy(sg.game, budget);
        if (tp.witness.empty()) throw InternalError("no uniform total-payoff strategy on a bounded-window layer");
        for (int v = 0; v < sg.game.num_states(); ++v)
            if (sg.game.owner(v) == Player::P1)
                choice[static_cast<std::size_t>(sg.to_parent[static_cast<std::size_t>(v)])] =
                    sg.to_parent[static_cast<std::size_t>(tp.witness[static_cast<std::size_t>(v)])];
        auto attr = attractor_with_strategy(g, Player::P1, won | core);
        for (int v : (attr.set - won - core).indices())
            choice[static_cast<std::size_t>(v)] = attr.strategy[static_cast<std::size_t>(v)];
        won = attr.set;
    }
    if (won.empty()) throw PreconditionFailed("empty winning set");
    MooreStrategy st = MooreStrategy::memoryless(g, Player::P1, choice);
    detail::require_pass(g, st, ObjectiveSpec::window(ObjectiveKind::BndWMP), won, "bounded window synthesis");
    return st;
}

/// P1 strategy for the fixed (or direct fixed) window in any dimension,
/// read off the positional strategy on the window product.
inline MooreStrategy synth_fwmp_k(const GameStructure& g, int lmax, bool direct, long cap = product_cap_from_env()) {
    ProductGame p = build_window_product(g, lmax, g.all_states(), cap);
    std::vector<int> move(static_cast<std::size_t>(p.num_states()), -1);
    StateSet pwin;
    if (direct) {
        auto safe = solve_safety_with_strategy(p.graph, p.bad_set().complement(), StateSet(p.num_states(), true));
        pwin = safe.win;
        move = safe.strategy;
    } else {
        auto res = solve_cobuchi_with_strategies(p.graph, p.bad_set());
        pwin = res.win;
        move = res.p1_strategy;
    }
    StateSet win(g.num_states());
    for (int s = 0; s < g.num_states(); ++s)
        if (pwin.contains(p.fresh_index[static_cast<std::size_t>(s)])) win.insert(s);
    if (win.empty()) throw PreconditionFailed("empty winning set");
    std::map<std::pair<int, WindowState>, int> node;
    for (int v = 0; v < p.num_states(); ++v)
        if (!p.bad[static_cast<std::size_t>(v)])
            node.emplace(std::make_pair(p.base[static_cast<std::size_t>(v)], p.window[static_cast<std::size_t>(v)]), v);
    auto policy = [&](int s, const WindowState& ws) -> int {
        auto it = node.find({s, ws});
        if (it == node.end()) return g.successors(s).front();
        int t = move[static_cast<std::size_t>(it->second)];
        return t >= 0 ? p.base[static_cast<std::size_t>(t)] : g.successors(s).front();
    };
    MooreStrategy st = detail::machine_from_window_policy(g, lmax, win, policy);
    detail::require_pass(g, st,
                         ObjectiveSpec::window(direct ? ObjectiveKind::DirFixWMP : ObjectiveKind::FixWMP, lmax), win,
                         "product synthesis");
    return st;
}

// ---------------------------------------------------------------------------
// Minimal memory search
// ---------------------------------------------------------------------------

inline constexpr long kDefaultEnumerationBudget = 1'000'000;

/**
 * Exhaustive search for a machine with at most `bound` memory states that
 * wins `spec` for `player` from the initial state. Machines are enumerated
 * up to renaming of memory (update tables in first-appearance order) and
 * only if every memory state is reachable from the initial one.
 */
inline std::optional<MooreStrategy> min_memory_search(const GameStructure& g, const ObjectiveSpec& spec, Player player,
                                                      int bound, long budget = kDefaultEnumerationBudget) {
    if (bound < 1) throw InvalidInput("memory bound must be >= 1");
    const int n = g.num_states();
    std::vector<int> owned;
    for (int s = 0; s < n; ++s)
        if (g.owner(s) == player) owned.push_back(s);
    long tried = 0;
    for (int size = 1; size <= bound; ++size) {
        MooreStrategy st = MooreStrategy::blank(player, size, n);
        const int cells = size * n;
        std::vector<int> upd(static_cast<std::size_t>(cells), 0);
        // Iterate restricted-growth update tables.
        std::function<std::optional<MooreStrategy>(int, int)> rec = [&](int pos, int maxv) -> std::optional<MooreStrategy> {
            if (pos == cells) {
                if (maxv != size - 1) return std::nullopt;
                // Reachability of every memory from 0.
                std::vector<char> seen(static_cast<std::size_t>(size), 0);
                std::vector<int> stack{0};
                seen[0] = 1;
                while (!stack.empty()) {
                    int m = stack.back();
                    stack.pop_back();
                    for (int s = 0; s < n; ++s) {
                        int u = upd[static_cast<std::size_t>(m * n + s)];
                        if (!seen[static_cast<std::size_t>(u)]) {
                            seen[static_cast<std::size_t>(u)] = 1;
                            stack.push_back(u);
                        }
                    }
                }
                if (std::count(seen.begin(), seen.end(), 1) != size) return std::nullopt;
                // Enumerate actions for every (memory, owned state).
                const std::size_t slots = owned.size() * static_cast<std::size_t>(size);
                std::vector<std::size_t> digit(slots, 0);
                for (;;) {
                    if (++tried > budget)
                        throw ResourceExceeded("memory search exceeded its budget of " + std::to_string(budget) + " machines");
                    for (int m = 0; m < size; ++m)
                        for (int s = 0; s < n; ++s) st.update[static_cast<std::size_t>(m * n + s)] = upd[static_cast<std::size_t>(m * n + s)];
                    for (std::size_t i = 0; i < slots; ++i) {
                        int m = static_cast<int>(i / owned.size());
                        int s = owned[i % owned.size()];
                        st.action[static_cast<std::size_t>(m * n + s)] = g.successors(s)[digit[i]];
                    }
                    if (verify_strategy(g, st, spec).pass) return st;
                    std::size_t i = 0;
                    while (i < slots) {
                        int s = owned[i % owned.size()];
                        if (++digit[i] < g.successors(s).size()) break;
                        digit[i] = 0;
                        ++i;
                    }
                    if (i == slots) break;
                }
                return std::nullopt;
            }
            for (int v = 0; v <= std::min(maxv + 1, size - 1); ++v) {
                upd[static_cast<std::size_t>(pos)] = v;
                if (auto r = rec(pos + 1, std::max(maxv, v))) return r;
            }
            return std::nullopt;
        };
        if (auto r = rec(0, 0)) return r;
    }
    return std::nullopt;
}

}  // namespace wmp
