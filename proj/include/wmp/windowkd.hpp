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

#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wmp/arena.hpp"
#include "wmp/core.hpp"

namespace wmp {

inline constexpr long kDefaultProductCap = 5'000'000;

/// Product cap: WMP_PRODUCT_CAP if set, else the default.
inline long product_cap_from_env() {
    if (const char* env = std::getenv("WMP_PRODUCT_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultProductCap;
}

/**
 * Oldest open window per dimension: running sum and steps left.
 * sigma = 0 and tau = lmax mean no window is open.
 */
struct WindowState {
    std::vector<Weight> sigma;
    std::vector<int> tau;

    static WindowState fresh(int dims, int lmax) {
        return {std::vector<Weight>(static_cast<std::size_t>(dims), 0),
                std::vector<int>(static_cast<std::size_t>(dims), lmax)};
    }
    friend bool operator==(const WindowState&, const WindowState&) = default;
    friend auto operator<=>(const WindowState&, const WindowState&) = default;
};

/// Successor window state after an edge of weight `w`; nullopt when some
/// window runs out of steps while still negative.
inline std::optional<WindowState> window_step(const WindowState& ws, const WeightVec& w, int lmax) {
    const std::size_t k = ws.sigma.size();
    for (std::size_t t = 0; t < k; ++t)
        if (ws.tau[t] == 1 && ws.sigma[t] + w[t] < 0) return std::nullopt;
    WindowState next = ws;
    for (std::size_t t = 0; t < k; ++t) {
        Weight s = ws.sigma[t] + w[t];
        if (s >= 0) {
            next.sigma[t] = 0;
            next.tau[t] = lmax;
        } else {
            next.sigma[t] = s;
            next.tau[t] = ws.tau[t] - 1;
        }
    }
    return next;
}

/**
 * Game whose states track the open windows of each dimension, plus one
 * bad state per base state entered when a window fails to close in time.
 */
struct ProductGame {
    Graph graph;
    int lmax = 1;
    int dims = 1;
    std::vector<int> base;             // base state of each product state
    std::vector<char> bad;             // 1 for bad states
    std::vector<WindowState> window;   // empty window for bad states
    std::vector<int> fresh_index;      // per base state: (s, fresh) or -1
    std::vector<int> bad_index;        // per base state: bad state or -1
    long edges = 0;

    int num_states() const noexcept { return graph.num_states(); }
    StateSet bad_set() const {
        StateSet s(num_states());
        for (int v = 0; v < num_states(); ++v)
            if (bad[static_cast<std::size_t>(v)]) s.insert(v);
        return s;
    }

    std::string node_id(const GameStructure& g, int v) const {
        const int b = base[static_cast<std::size_t>(v)];
        if (bad[static_cast<std::size_t>(v)]) return "z_" + g.id(b);
        std::string out = g.id(b);
        const auto& ws = window[static_cast<std::size_t>(v)];
        for (std::size_t t = 0; t < ws.sigma.size(); ++t) {
            Weight s = ws.sigma[t];
            out += "__" + (s < 0 ? "n" + std::to_string(-s) : std::to_string(s)) + "_" + std::to_string(ws.tau[t]);
        }
        return out;
    }
};

/**
 * Reachable part of the window product from {(s, fresh) : s in start},
 * explored breadth-first with successors in base edge order.
 */
inline ProductGame build_window_product(const GameStructure& g, int lmax, const StateSet& start,
                                        long cap = product_cap_from_env()) {
    if (lmax < 1) throw InvalidInput("lmax must be >= 1");
    const int n = g.num_states();
    const int k = g.dims();
    ProductGame p;
    p.lmax = lmax;
    p.dims = k;
    p.fresh_index.assign(static_cast<std::size_t>(n), -1);
    p.bad_index.assign(static_cast<std::size_t>(n), -1);
    std::map<std::pair<int, WindowState>, int> index;
    std::deque<int> queue;

    auto add_node = [&](int b, bool is_bad, WindowState ws) {
        if (p.num_states() >= cap)
            throw ResourceExceeded("window product exceeds cap of " + std::to_string(cap) + " states");
        int v = p.graph.add_node(g.owner(b));
        p.base.push_back(b);
        p.bad.push_back(is_bad ? 1 : 0);
        p.window.push_back(std::move(ws));
        queue.push_back(v);
        return v;
    };
    auto bad_node = [&](int b) {
        int& slot = p.bad_index[static_cast<std::size_t>(b)];
        if (slot < 0) slot = add_node(b, true, WindowState{});
        return slot;
    };
    auto window_node = [&](int b, const WindowState& ws) {
        auto key = std::make_pair(b, ws);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int v = add_node(b, false, ws);
        index.emplace(std::move(key), v);
        return v;
    };

    const WindowState fresh = WindowState::fresh(k, lmax);
    for (int s : start.indices()) p.fresh_index[static_cast<std::size_t>(s)] = window_node(s, fresh);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        const int b = p.base[static_cast<std::size_t>(v)];
        if (p.bad[static_cast<std::size_t>(v)]) {
            int f = window_node(b, fresh);
            p.fresh_index[static_cast<std::size_t>(b)] = f;
            p.graph.add_edge(v, f);
            ++p.edges;
            continue;
        }
        const WindowState ws = p.window[static_cast<std::size_t>(v)];
        for (int e : g.out_edges(b)) {
            const Edge& ed = g.edge(e);
            auto next = window_step(ws, ed.weight, lmax);
            int u = next ? window_node(ed.dst, *next) : bad_node(ed.dst);
            p.graph.add_edge(v, u);
            ++p.edges;
        }
    }
    return p;
}

/// Upper bound on the product size: |S| (lmax (lmax W + 1))^k + |S|.
inline double window_product_bound(const GameStructure& g, int lmax) {
    double per = static_cast<double>(lmax) * (static_cast<double>(lmax) * static_cast<double>(g.max_abs_weight()) + 1.0);
    double r = g.num_states();
    for (int t = 0; t < g.dims(); ++t) r *= per;
    return r + g.num_states();
}

namespace detail {

inline SolveReport product_report(const GameStructure& g, const ProductGame& p, const StateSet& product_win) {
    StateSet win(g.num_states());
    for (int s = 0; s < g.num_states(); ++s) {
        int f = p.fresh_index[static_cast<std::size_t>(s)];
        if (f >= 0 && product_win.contains(f)) win.insert(s);
    }
    SolveReport r = SolveReport::from_p1(win);
    r.product_states = p.num_states();
    r.operations = p.edges;
    return r;
}

}  // namespace detail

/// Fixed window in any dimension: co-Buchi on the window product.
inline SolveReport fwmp_k(const GameStructure& g, int lmax, long cap = product_cap_from_env()) {
    ProductGame p = build_window_product(g, lmax, g.all_states(), cap);
    auto res = solve_cobuchi_with_strategies(p.graph, p.bad_set());
    SolveReport r = detail::product_report(g, p, res.win);
    r.iterations = res.rounds;
    return r;
}

/// Direct fixed window in any dimension: safety on the window product.
inline SolveReport direct_fwmp_k(const GameStructure& g, int lmax, long cap = product_cap_from_env()) {
    ProductGame p = build_window_product(g, lmax, g.all_states(), cap);
    return detail::product_report(g, p, solve_safety(p.graph, p.bad_set().complement()));
}

/// Good window in any dimension: P1 reaches a state where every dimension
/// has closed its first window, before any of them times out.
inline StateSet good_win_k(const GameStructure& g, int lmax) {
    if (lmax < 1) throw InvalidInput("lmax must be >= 1");
    const int n = g.num_states();
    const int k = g.dims();
    // Nodes: (state, closed mask, window state of still-open dimensions).
    struct Node {
        int s;
        std::vector<char> closed;
        WindowState ws;
        auto operator<=>(const Node&) const = default;
    };
    Graph graph;
    std::map<Node, int> index;
    std::vector<Node> nodes;
    std::vector<char> target;
    int done = -1, fail = -1;
    auto sink = [&](int& slot, bool good) {
        if (slot < 0) {
            slot = graph.add_node(Player::P1);
            graph.add_edge(slot, slot);
            nodes.push_back(Node{-1, {}, {}});
            target.push_back(good ? 1 : 0);
        }
        return slot;
    };
    std::deque<int> queue;
    auto node = [&](const Node& nd) {
        auto it = index.find(nd);
        if (it != index.end()) return it->second;
        int v = graph.add_node(g.owner(nd.s));
        index.emplace(nd, v);
        nodes.push_back(nd);
        target.push_back(0);
        queue.push_back(v);
        return v;
    };
    std::vector<int> start(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s)
        start[static_cast<std::size_t>(s)] = node(Node{s, std::vector<char>(static_cast<std::size_t>(k), 0),
                                                       WindowState::fresh(k, lmax)});
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        const Node cur = nodes[static_cast<std::size_t>(v)];
        for (int e : g.out_edges(cur.s)) {
            const Edge& ed = g.edge(e);
            Node next{ed.dst, cur.closed, cur.ws};
            bool failed = false;
            bool all = true;
            for (int t = 0; t < k; ++t) {
                auto ts = static_cast<std::size_t>(t);
                if (next.closed[ts]) continue;
                Weight sum = cur.ws.sigma[ts] + ed.weight[ts];
                if (sum >= 0) {
                    next.closed[ts] = 1;
                    next.ws.sigma[ts] = 0;
                    next.ws.tau[ts] = 0;
                } else if (cur.ws.tau[ts] == 1) {
                    failed = true;
                } else {
                    next.ws.sigma[ts] = sum;
                    next.ws.tau[ts] = cur.ws.tau[ts] - 1;
                    all = false;
                }
            }
            int u = failed ? sink(fail, false) : all ? sink(done, true) : node(next);
            graph.add_edge(v, u);
        }
    }
    StateSet tgt(graph.num_states());
    for (int v = 0; v < graph.num_states(); ++v)
        if (target[static_cast<std::size_t>(v)]) tgt.insert(v);
    StateSet reach = attractor(graph, Player::P1, tgt);
    StateSet win(n);
    for (int s = 0; s < n; ++s)
        if (reach.contains(start[static_cast<std::size_t>(s)])) win.insert(s);
    return win;
}

}  // namespace wmp
