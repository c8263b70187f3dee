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
#include <limits>
#include <vector>

#include "wmp/arena.hpp"
#include "wmp/core.hpp"

namespace wmp {

/// Default state budget for the enumeration-based total-payoff solver.
inline constexpr int kDefaultOracleBudget = 14;

namespace detail {

inline void require_one_dim(const GameStructure& g, const char* what) {
    if (g.dims() != 1) throw Unsupported(std::string(what) + " needs a one-dimension game");
}

using i128 = __int128;

inline i128 abs128(i128 x) { return x < 0 ? -x : x; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Mean payoff
// ---------------------------------------------------------------------------

/**
 * Exact mean-payoff value of every state.
 *
 * Runs N = 4|S|^3 W rounds of optimal finite-horizon sums, then rounds
 * v_N / N to the closest fraction with denominator at most |S|.
 */
inline std::vector<Rational> mp_value(const GameStructure& g) {
    detail::require_one_dim(g, "mean-payoff solving");
    const int n = g.num_states();
    const Weight W = g.max_abs_weight();
    long steps = 1;
    if (W > 0) {
        detail::i128 big = detail::i128(4) * n * n * n * W;
        if (big > 200'000'000) throw ResourceExceeded("mean-payoff horizon too large");
        steps = static_cast<long>(big);
    }
    std::vector<Weight> v(static_cast<std::size_t>(n), 0), next(static_cast<std::size_t>(n));
    for (long it = 0; it < steps; ++it) {
        for (int s = 0; s < n; ++s) {
            const bool maxi = g.owner(s) == Player::P1;
            Weight best = maxi ? std::numeric_limits<Weight>::min() : std::numeric_limits<Weight>::max();
            for (int e : g.out_edges(s)) {
                const Edge& ed = g.edge(e);
                Weight val = ed.weight[0] + v[static_cast<std::size_t>(ed.dst)];
                best = maxi ? std::max(best, val) : std::min(best, val);
            }
            next[static_cast<std::size_t>(s)] = best;
        }
        v.swap(next);
    }
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        const detail::i128 num = v[static_cast<std::size_t>(s)];
        const detail::i128 N = steps;
        // Distance |num/N - p/q| compared as |num*q - p*N| / (q*N).
        detail::i128 best_num = -1, best_den = 1;
        std::int64_t bp = 0, bq = 1;
        for (std::int64_t q = 1; q <= std::max(1, n); ++q) {
            detail::i128 scaled = num * q;
            detail::i128 p = scaled >= 0 ? (scaled + N / 2) / N : -((-scaled + N / 2) / N);
            for (detail::i128 cand : {p - 1, p, p + 1}) {
                detail::i128 dn = detail::abs128(scaled - cand * N);
                detail::i128 dd = detail::i128(q) * N;
                if (best_num < 0 || dn * best_den < best_num * dd) {
                    best_num = dn;
                    best_den = dd;
                    bp = static_cast<std::int64_t>(cand);
                    bq = q;
                }
            }
        }
        out.emplace_back(bp, bq);
    }
    return out;
}

/// States with mean-payoff value >= 0 (inf and sup coincide in one dimension).
inline StateSet mp_threshold_win(const GameStructure& g) {
    auto val = mp_value(g);
    StateSet win(g.num_states());
    for (int s = 0; s < g.num_states(); ++s)
        if (val[static_cast<std::size_t>(s)] >= Rational(0)) win.insert(s);
    return win;
}

// ---------------------------------------------------------------------------
// Supremum total payoff
// ---------------------------------------------------------------------------

namespace detail {

/// Bellman-Ford from `src` over a P2-only graph given as (dst, weight) lists.
/// Returns false if a negative cycle is reachable.
inline bool shortest_from(const std::vector<std::vector<std::pair<int, Weight>>>& adj, int src,
                          std::vector<Weight>& dist) {
    const int n = static_cast<int>(adj.size());
    constexpr Weight inf = std::numeric_limits<Weight>::max() / 4;
    dist.assign(static_cast<std::size_t>(n), inf);
    dist[static_cast<std::size_t>(src)] = 0;
    for (int round = 0; round < n; ++round) {
        bool changed = false;
        for (int a = 0; a < n; ++a) {
            if (dist[static_cast<std::size_t>(a)] == inf) continue;
            for (auto [b, w] : adj[static_cast<std::size_t>(a)]) {
                Weight cand = dist[static_cast<std::size_t>(a)] + w;
                if (cand < dist[static_cast<std::size_t>(b)]) {
                    dist[static_cast<std::size_t>(b)] = cand;
                    changed = true;
                }
            }
        }
        if (!changed) return true;
    }
    return false;
}

/**
 * States from which the sole remaining player (P2) gets a play whose
 * prefix sums are eventually all negative.
 *
 * Either a negative cycle is reachable, or some reachable h with negative
 * distance lies on a zero cycle whose partial sums from h never exceed 0.
 * The latter cycle can always be taken along edges tight for the distances
 * from h, which is what the search below checks.
 */
inline StateSet p2_negative_total(const std::vector<std::vector<std::pair<int, Weight>>>& adj) {
    const int n = static_cast<int>(adj.size());
    constexpr Weight inf = std::numeric_limits<Weight>::max() / 4;
    std::vector<char> good_anchor(static_cast<std::size_t>(n), 0);
    std::vector<Weight> dh;
    std::vector<char> anchor_known(static_cast<std::size_t>(n), 0);
    auto anchor_ok = [&](int h) {
        if (anchor_known[static_cast<std::size_t>(h)]) return good_anchor[static_cast<std::size_t>(h)] != 0;
        anchor_known[static_cast<std::size_t>(h)] = 1;
        if (!shortest_from(adj, h, dh)) return false;  // caller handles negative cycles
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{h};
        seen[static_cast<std::size_t>(h)] = 1;
        bool ok = false;
        while (!stack.empty() && !ok) {
            int a = stack.back();
            stack.pop_back();
            for (auto [b, w] : adj[static_cast<std::size_t>(a)]) {
                if (b == h && dh[static_cast<std::size_t>(a)] + w == 0) {
                    ok = true;
                    break;
                }
                if (dh[static_cast<std::size_t>(b)] == inf || dh[static_cast<std::size_t>(b)] > 0) continue;
                if (dh[static_cast<std::size_t>(a)] + w != dh[static_cast<std::size_t>(b)]) continue;
                if (!seen[static_cast<std::size_t>(b)]) {
                    seen[static_cast<std::size_t>(b)] = 1;
                    stack.push_back(b);
                }
            }
        }
        good_anchor[static_cast<std::size_t>(h)] = ok ? 1 : 0;
        return ok;
    };

    StateSet out(n);
    std::vector<Weight> ds;
    for (int s = 0; s < n; ++s) {
        if (!shortest_from(adj, s, ds)) {
            out.insert(s);
            continue;
        }
        for (int h = 0; h < n; ++h) {
            if (ds[static_cast<std::size_t>(h)] == inf || ds[static_cast<std::size_t>(h)] >= 0) continue;
            if (anchor_ok(h)) {
                out.insert(s);
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

struct TotalPayoffResult {
    StateSet win;
    /// Memoryless P1 strategy (successor per P1 state) winning from every
    /// state of `win`; empty if no single strategy does.
    std::vector<int> witness;
};

/**
 * States from which P1 ensures sup total payoff >= 0.
 *
 * Reference backend: enumerate P1 memoryless strategies and, for each one,
 * find P2's best reply in the induced one-player graph.
 */
inline TotalPayoffResult tp_sup_win_with_strategy(const GameStructure& g, int budget = kDefaultOracleBudget) {
    detail::require_one_dim(g, "total-payoff solving");
    const int n = g.num_states();
    if (n > budget)
        throw ResourceExceeded("total-payoff oracle budget exceeded: " + std::to_string(n) + " states > " +
                               std::to_string(budget));
    std::vector<int> p1;
    for (int s = 0; s < n; ++s)
        if (g.owner(s) == Player::P1) p1.push_back(s);
    std::vector<std::size_t> choice(p1.size(), 0);

    std::vector<StateSet> won;
    std::vector<std::vector<int>> strategies;
    StateSet all_won(n);
    long explored = 0;
    for (;;) {
        if (++explored > 5'000'000) throw ResourceExceeded("total-payoff oracle strategy budget exceeded");
        std::vector<std::vector<std::pair<int, Weight>>> adj(static_cast<std::size_t>(n));
        std::vector<int> sigma(static_cast<std::size_t>(n), -1);
        for (int s = 0; s < n; ++s) {
            if (g.owner(s) == Player::P2)
                for (int e : g.out_edges(s)) adj[static_cast<std::size_t>(s)].emplace_back(g.edge(e).dst, g.edge(e).weight[0]);
        }
        for (std::size_t i = 0; i < p1.size(); ++i) {
            const Edge& ed = g.edge(g.out_edges(p1[i])[choice[i]]);
            adj[static_cast<std::size_t>(p1[i])].emplace_back(ed.dst, ed.weight[0]);
            sigma[static_cast<std::size_t>(p1[i])] = ed.dst;
        }
        StateSet w = detail::p2_negative_total(adj).complement();
        all_won |= w;
        won.push_back(w);
        strategies.push_back(std::move(sigma));

        std::size_t i = 0;
        while (i < p1.size()) {
            if (++choice[i] < g.out_edges(p1[i]).size()) break;
            choice[i] = 0;
            ++i;
        }
        if (i == p1.size()) break;
    }
    TotalPayoffResult r{all_won, {}};
    for (std::size_t i = 0; i < won.size(); ++i)
        if (won[i] == all_won) {
            r.witness = strategies[i];
            break;
        }
    return r;
}

inline StateSet tp_sup_win(const GameStructure& g, int budget = kDefaultOracleBudget) {
    return tp_sup_win_with_strategy(g, budget).win;
}

/// States from which P2 forces sup total payoff < 0.
inline StateSet neg_sup_tp(const GameStructure& g, int budget = kDefaultOracleBudget) {
    return tp_sup_win(g, budget).complement();
}

}  // namespace wmp
