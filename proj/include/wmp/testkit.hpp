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
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wmp/classical.hpp"
#include "wmp/core.hpp"
#include "wmp/oracle.hpp"
#include "wmp/strategy.hpp"
#include "wmp/window1d.hpp"
#include "wmp/windowkd.hpp"

namespace wmp::testkit {

// ---------------------------------------------------------------------------
// Random games
// ---------------------------------------------------------------------------

/// Printed in report headers so corpora can be reproduced elsewhere.
inline constexpr const char* kPrngVersion = "xoshiro256** 1.0 seeded by splitmix64";

/**
 * xoshiro256** (Blackman and Vigna). The 256-bit state is filled with four
 * consecutive splitmix64 outputs of the seed. Bounded draws use rejection
 * sampling, so results do not depend on the platform.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) noexcept {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    /// Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) noexcept {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) noexcept {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

struct GenSpec {
    int states = 1;
    int dims = 1;
    Weight max_abs_weight = 0;
    int min_out = 1;
    int max_out = 2;
    Rational p2_fraction{1, 2};
    std::uint64_t seed = 0;

    void check() const {
        if (states < 1) throw InvalidInput("generator needs at least one state");
        if (dims < 1) throw InvalidInput("generator needs at least one dimension");
        if (max_abs_weight < 0) throw InvalidInput("max weight must be non-negative");
        if (min_out < 1 || max_out < min_out) throw InvalidInput("out-degree range must satisfy 1 <= min <= max");
        if (p2_fraction < 0 || p2_fraction > 1) throw InvalidInput("P2 fraction must lie in [0, 1]");
    }
};

/**
 * Draw order: owners of s0..s{n-1} (P2 when below(den) < num), then per
 * state its out-degree in [min_out, max_out] capped at n, its distinct
 * targets by partial Fisher-Yates, and one weight per edge and dimension
 * in [-W, W]. Ids are s0, s1, ...; init is s0.
 */
inline GameStructure gen_random_game(const GenSpec& spec) {
    spec.check();
    Rng rng(spec.seed);
    const int n = spec.states;
    GameStructure g(spec.dims);
    const auto num = static_cast<std::uint64_t>(spec.p2_fraction.numerator());
    const auto den = static_cast<std::uint64_t>(spec.p2_fraction.denominator());
    for (int s = 0; s < n; ++s)
        g.add_state("s" + std::to_string(s), rng.below(den) < num ? Player::P2 : Player::P1);
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        const int hi = std::min(spec.max_out, n);
        const int lo = std::min(spec.min_out, hi);
        const int d = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < d; ++i) {
            int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            WeightVec w(static_cast<std::size_t>(spec.dims));
            for (auto& x : w) x = rng.uniform(-spec.max_abs_weight, spec.max_abs_weight);
            g.add_edge(s, pool[static_cast<std::size_t>(i)], std::move(w));
        }
    }
    g.set_init(0);
    return g;
}

/// `count` one-dimension games cycling through 1..max_states states and
/// 0..max_w weight bounds, seeds base_seed + i.
inline std::vector<GameStructure> seeded_corpus(int count, int max_states, Weight max_w, std::uint64_t base_seed,
                                                int max_out = 3) {
    std::vector<GameStructure> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        GenSpec s;
        s.states = 1 + i % max_states;
        s.max_abs_weight = static_cast<Weight>(i / max_states) % (max_w + 1);
        s.min_out = 1;
        s.max_out = max_out;
        s.seed = base_seed + static_cast<std::uint64_t>(i);
        out.push_back(gen_random_game(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

inline const std::map<std::string, std::string>& fixture_texts() {
    static const std::map<std::string, std::string> texts = {
        {"FIX1", "wgame 1\ndims 1\nstate a P1\nedge a a 0\ninit a\n"},
        {"FIX2", "wgame 1\ndims 1\nstate a P1\nedge a a -1\ninit a\n"},
        {"FIX3",
         "wgame 1\ndims 1\nstate c P2\nstate x P2\nstate y1 P2\nstate y2 P2\n"
         "edge c x 1\nedge x c -1\nedge c y1 -1\nedge y1 y2 -1\nedge y2 c 2\ninit c\n"},
        {"FIX4",
         "wgame 1\ndims 1\nstate s P1\nstate a1 P1\nstate a2 P1\nstate a3 P1\nstate a4 P1\nstate a5 P1\n"
         "state b1 P1\nstate b2 P1\nstate d1 P1\nstate d2 P1\n"
         "edge s a1 3\nedge a1 a2 3\nedge a2 a3 5\nedge a3 a4 -1\nedge a4 a5 -1\nedge a5 s -5\n"
         "edge s b1 7\nedge b1 b2 -1\nedge b2 s -9\n"
         "edge s d1 5\nedge d1 d2 5\nedge d2 s -11\ninit s\n"},
        {"FIX5",
         "wgame 1\ndims 2\nstate s1 P2\nstate s1L P2\nstate s1R P2\nstate t1 P1\nstate t1L P1\nstate t1R P1\n"
         "edge s1 s1L 1 -1\nedge s1 s1R -1 1\nedge s1L t1 0 0\nedge s1R t1 0 0\n"
         "edge t1 t1L 1 -1\nedge t1 t1R -1 1\nedge t1L s1 0 0\nedge t1R s1 0 0\ninit s1\n"},
        {"FIX6", "wgame 1\ndims 1\nstate a P1\nstate b P1\nedge a b -1\nedge b b 0\ninit a\n"},
    };
    return texts;
}

inline GameStructure fixture(const std::string& name) {
    auto it = fixture_texts().find(name);
    if (it == fixture_texts().end()) throw InvalidInput("unknown fixture '" + name + "'");
    return parse_game(it->second);
}

/// The game with the edge src -> dst removed.
inline GameStructure without_edge(GameStructure g, const std::string& src, const std::string& dst) {
    auto e = g.find_edge(g.require(src), g.require(dst));
    if (!e) throw InvalidInput("no edge " + src + " -> " + dst);
    g.remove_edge(*e);
    return g;
}

// ---------------------------------------------------------------------------
// Exhaustive tiny games
// ---------------------------------------------------------------------------

/**
 * Calls f on every one-dimension game with 1..max_states states, out-degree
 * 1..max_out to distinct targets and weights in {-1, 0, 1}, one
 * representative per isomorphism class (state renaming). Init is s0.
 * Returns the number of games visited.
 */
inline long for_each_tiny_game(int max_states, int max_out, const std::function<void(const GameStructure&)>& f) {
    using Out = std::vector<std::pair<int, Weight>>;  // sorted by target
    long visited = 0;
    for (int n = 1; n <= max_states; ++n) {
        // Per-state options: owner and out-edge list.
        std::vector<std::pair<int, Out>> options;
        for (int owner = 0; owner < 2; ++owner)
            for (int mask = 1; mask < (1 << n); ++mask) {
                std::vector<int> targets;
                for (int t = 0; t < n; ++t)
                    if (mask >> t & 1) targets.push_back(t);
                if (static_cast<int>(targets.size()) > max_out) continue;
                int combos = 1;
                for (std::size_t i = 0; i < targets.size(); ++i) combos *= 3;
                for (int c = 0; c < combos; ++c) {
                    Out out;
                    int x = c;
                    for (int t : targets) {
                        out.emplace_back(t, static_cast<Weight>(x % 3 - 1));
                        x /= 3;
                    }
                    options.emplace_back(owner, std::move(out));
                }
            }
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::vector<std::vector<int>> perms;
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        do perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
        auto encode = [&](const std::vector<int>& p) {
            // Game renamed by p (old i -> new p[i]), encoded in new order.
            std::vector<std::pair<int, Out>> code(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                const auto& opt = options[pick[static_cast<std::size_t>(i)]];
                Out out;
                for (auto [t, w] : opt.second) out.emplace_back(p[static_cast<std::size_t>(t)], w);
                std::sort(out.begin(), out.end());
                code[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = {opt.first, std::move(out)};
            }
            return code;
        };
        for (;;) {
            auto base = encode(perms.front());
            bool canonical = true;
            for (std::size_t k = 1; k < perms.size() && canonical; ++k) canonical = !(encode(perms[k]) < base);
            if (canonical) {
                GameStructure g(1);
                for (int i = 0; i < n; ++i)
                    g.add_state("s" + std::to_string(i), base[static_cast<std::size_t>(i)].first ? Player::P2 : Player::P1);
                for (int i = 0; i < n; ++i)
                    for (auto [t, w] : base[static_cast<std::size_t>(i)].second) g.add_edge(i, t, WeightVec{w});
                g.set_init(0);
                ++visited;
                f(g);
            }
            std::size_t i = 0;
            while (i < pick.size()) {
                if (++pick[i] < options.size()) break;
                pick[i] = 0;
                ++i;
            }
            if (i == pick.size()) break;
        }
    }
    return visited;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

struct CheckOptions {
    /// Extra games added to every suite whose constraints they meet.
    std::vector<GameStructure> planted;
    OracleBudget budget;
    /// Accepted for interface stability; suites run sequentially.
    int jobs = 1;
};

struct SuiteResult {
    std::string name;
    bool pass = true;
    long cases = 0;
    long failures = 0;
    /// First failing game, or for witness suites the first witness.
    std::optional<GameStructure> game;
    std::string detail;
    /// Names of failed checks, for suites made of named checks.
    std::vector<std::string> failed_checks;
    double seconds = 0;
};

namespace detail {

class SuiteRun {
public:
    explicit SuiteRun(std::string name) : start_(std::chrono::steady_clock::now()) { r_.name = std::move(name); }

    /// Runs one case; failures and solver errors are recorded against g.
    template <class F>
    void check(const GameStructure& g, const std::string& what, F&& f) {
        ++r_.cases;
        std::string why;
        try {
            if (f()) return;
            why = what;
        } catch (const std::exception& e) {
            why = what + ": " + e.what();
        }
        fail(g, why);
    }

    void fail(const GameStructure& g, const std::string& why) {
        ++r_.failures;
        if (r_.pass) {
            r_.pass = false;
            r_.game = g;
            r_.detail = why;
        }
    }

    SuiteResult& result() { return r_; }

    SuiteResult finish() {
        r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (!r_.pass && r_.failures > 1) r_.detail += " (" + std::to_string(r_.failures) + " failures)";
        return r_;
    }

private:
    SuiteResult r_;
    std::chrono::steady_clock::time_point start_;
};

inline std::vector<GameStructure> with_planted(std::vector<GameStructure> corpus, const CheckOptions& opt,
                                               int max_states) {
    for (const auto& g : opt.planted)
        if (g.dims() == 1 && g.num_states() <= max_states) corpus.push_back(g);
    return corpus;
}

inline std::string lmax_tag(int l) { return " at lmax " + std::to_string(l); }

}  // namespace detail

/// Corpora behind the default suites; seeds are fixed.
inline std::vector<GameStructure> window_corpus() { return seeded_corpus(300, 6, 3, 0x5eed0001); }
inline std::vector<GameStructure> cross_corpus() { return seeded_corpus(500, 8, 4, 0x5eed0002); }
inline std::vector<GameStructure> payoff_corpus() { return seeded_corpus(300, 6, 3, 0x5eed0003); }
inline std::vector<GameStructure> reduction_corpus() { return seeded_corpus(200, 6, 3, 0x5eed0004); }

/// The fixture claims, each as a named check.
inline SuiteResult suite_fixtures(const CheckOptions&) {
    detail::SuiteRun run("fixtures");
    auto named = [&](const GameStructure& g, const std::string& name, auto&& f) {
        long before = run.result().failures;
        run.check(g, name, f);
        if (run.result().failures > before) run.result().failed_checks.push_back(name);
    };
    const auto fix3 = fixture("FIX3");
    const auto fix4 = fixture("FIX4");
    const auto fix5 = fixture("FIX5");
    const auto fix6 = fixture("FIX6");
    const auto fix3_x = without_edge(fix3, "c", "y1");
    const auto fix3_y = without_edge(fix3, "c", "x");

    named(fix3, "fix3-fixed-empty", [&] { return fwmp(fix3, 3).empty(); });
    named(fix3_x, "fix3-short-cycle-only-wins", [&] { return fwmp(fix3_x, 3).full(); });
    named(fix3_y, "fix3-long-cycle-only-wins", [&] { return fwmp(fix3_y, 3).full(); });
    named(fix4, "fix4-fixed-full", [&] { return fwmp(fix4, 4).full(); });
    named(fix4, "fix4-alternation-strategy", [&] {
        MooreStrategy st = synth_fwmp_1d(fix4, 4);
        if (!verify_strategy(fix4, st, ObjectiveSpec::window(ObjectiveKind::FixWMP, 4)).pass) return false;
        Lasso l = shorten_lasso(play_out(fix4, &st, nullptr, fix4.require("s")));
        // One period visits each of the three cycles once.
        if (l.cycle.size() != 12) return false;
        for (const char* head : {"a1", "b1", "d1"})
            if (std::count(l.cycle.begin(), l.cycle.end(), fix4.require(head)) != 1) return false;
        return true;
    });
    named(fix4, "fix4-memoryless-fails", [&] {
        const int s = fix4.require("s");
        for (int t : fix4.successors(s)) {
            std::vector<int> choice(static_cast<std::size_t>(fix4.num_states()), -1);
            choice[static_cast<std::size_t>(s)] = t;
            auto st = MooreStrategy::memoryless(fix4, Player::P1, choice);
            if (verify_strategy(fix4, st, ObjectiveSpec::window(ObjectiveKind::FixWMP, 4)).pass) return false;
        }
        return true;
    });
    named(fix6, "fix6-fixed-full", [&] { return fwmp(fix6, 1).full(); });
    named(fix6, "fix6-direct-only-b", [&] { return direct_fwmp(fix6, 1) == StateSet::of(2, {1}); });
    const auto fix5_spec = ObjectiveSpec::window(ObjectiveKind::FixWMP, 3);
    named(fix5, "fix5-fixed-full", [&] { return fwmp_k(fix5, 3).winning_p1.full(); });
    named(fix5, "fix5-two-memory-strategy", [&] {
        auto st = min_memory_search(fix5, fix5_spec, Player::P1, 2);
        return st && st->memory_size() <= 2 && verify_strategy(fix5, *st, fix5_spec).pass;
    });
    named(fix5, "fix5-no-memoryless-strategy",
          [&] { return !min_memory_search(fix5, fix5_spec, Player::P1, 1).has_value(); });
    auto r = run.finish();
    if (!r.pass) {
        r.detail = "failed checks:";
        for (const auto& c : r.failed_checks) r.detail += " " + c;
    }
    return r;
}

inline SuiteResult suite_sufficient_window(const CheckOptions& opt) {
    detail::SuiteRun run("sufficient-window");
    for (const auto& g : detail::with_planted(window_corpus(), opt, 6)) {
        const int l = static_cast<int>(sufficient_window(g));
        run.check(g, "fixed window at the sufficient size differs from bounded window",
                  [&] { return fwmp(g, l) == bounded_wmp(g).winning_p1; });
        run.check(g, "direct fixed window at the sufficient size differs from direct bounded window",
                  [&] { return direct_fwmp(g, l) == direct_bounded_wmp(g); });
    }
    return run.finish();
}

inline SuiteResult suite_cross_algorithm(const CheckOptions& opt) {
    detail::SuiteRun run("cross-algorithm");
    for (const auto& g : detail::with_planted(cross_corpus(), opt, 8))
        for (int l = 1; l <= 6; ++l) {
            run.check(g, "fixed window solvers disagree" + detail::lmax_tag(l),
                      [&] { return fwmp(g, l) == fwmp_k(g, l).winning_p1; });
            run.check(g, "direct fixed window solvers disagree" + detail::lmax_tag(l),
                      [&] { return direct_fwmp(g, l) == direct_fwmp_k(g, l).winning_p1; });
            run.check(g, "good window solvers disagree" + detail::lmax_tag(l),
                      [&] { return good_win(g, l).winning == good_win_k(g, l); });
        }
    return run.finish();
}

/// Every solver against the brute-force oracles on all tiny games.
inline SuiteResult suite_oracle_sweep(const CheckOptions& opt, int max_states = 3) {
    detail::SuiteRun run("oracle-sweep");
    auto one = [&](const GameStructure& g) {
        for (int l = 1; l <= 3; ++l) {
            run.check(g, "good window differs from oracle" + detail::lmax_tag(l), [&] {
                return good_win(g, l).winning == oracle_window(g, ObjectiveSpec::window(ObjectiveKind::GW, l), opt.budget);
            });
            run.check(g, "direct fixed window differs from oracle" + detail::lmax_tag(l), [&] {
                return direct_fwmp(g, l) == oracle_window(g, ObjectiveSpec::window(ObjectiveKind::DirFixWMP, l), opt.budget);
            });
            run.check(g, "fixed window differs from oracle" + detail::lmax_tag(l), [&] {
                auto spec = ObjectiveSpec::window(ObjectiveKind::FixWMP, l);
                StateSet p1 = oracle_window(g, spec, opt.budget);
                // Determinacy: the two enumerations split the states.
                StateSet p2 = oracle_window_p2(g, spec, opt.budget);
                return fwmp(g, l) == p1 && p2 == p1.complement();
            });
        }
        run.check(g, "bounded window differs from oracle", [&] {
            return bounded_wmp(g).winning_p1 == oracle_window(g, ObjectiveSpec::window(ObjectiveKind::BndWMP), opt.budget);
        });
        run.check(g, "direct bounded window differs from oracle", [&] {
            return direct_bounded_wmp(g) == oracle_window(g, ObjectiveSpec::window(ObjectiveKind::DirBndWMP), opt.budget);
        });
        run.check(g, "mean-payoff differs from oracle", [&] {
            StateSet mp = mp_threshold_win(g);
            return mp == oracle_classical(g, ObjectiveKind::MeanInf, 0, opt.budget) &&
                   mp == oracle_classical(g, ObjectiveKind::MeanSup, 0, opt.budget);
        });
        run.check(g, "total-payoff differs from oracle", [&] {
            return tp_sup_win(g) == oracle_classical(g, ObjectiveKind::TotalSup, 0, opt.budget);
        });
    };
    for_each_tiny_game(max_states, 2, one);
    for (const auto& g : opt.planted)
        if (g.dims() == 1 && g.num_states() <= 6) one(g);
    return run.finish();
}

inline SuiteResult suite_payoff_inclusions(const CheckOptions& opt) {
    detail::SuiteRun run("payoff-inclusions");
    for (const auto& g : detail::with_planted(payoff_corpus(), opt, 8)) {
        const StateSet bnd = bounded_wmp(g).winning_p1;
        run.check(g, "bounded window not inside mean-payoff", [&] { return bnd.subset_of(mp_threshold_win(g)); });
        run.check(g, "positive mean-payoff not inside bounded window", [&] {
            auto v = mp_value(g);
            StateSet pos(g.num_states());
            for (int s = 0; s < g.num_states(); ++s)
                if (v[static_cast<std::size_t>(s)] > 0) pos.insert(s);
            return pos.subset_of(bnd);
        });
        run.check(g, "direct bounded window not inside total-payoff",
                  [&] { return direct_bounded_wmp(g).subset_of(tp_sup_win(g)); });
    }
    return run.finish();
}

/// Looks for games where mean-payoff wins everywhere but the bounded window
/// is lost everywhere. Passes when one is found; the first is reported.
inline SuiteResult suite_strictness_witness(const CheckOptions& opt) {
    detail::SuiteRun run("strictness-witness");
    std::vector<GameStructure> corpus{fixture("FIX3")};
    for (auto& g : detail::with_planted(payoff_corpus(), opt, 8)) corpus.push_back(std::move(g));
    long found = 0;
    for (const auto& g : corpus) {
        ++run.result().cases;
        try {
            if (mp_threshold_win(g).full() && bounded_wmp(g).winning_p1.empty()) {
                if (!found++) run.result().game = g;
            }
        } catch (const std::exception& e) {
            run.fail(g, e.what());
        }
    }
    auto r = run.finish();
    if (r.pass && !found) {
        r.pass = false;
        r.detail = "no witness found";
    } else if (r.pass) {
        r.detail = std::to_string(found) + " witnesses";
    }
    return r;
}

inline SuiteResult suite_mp_reduction(const CheckOptions& opt) {
    detail::SuiteRun run("mp-reduction");
    for (const auto& g : detail::with_planted(reduction_corpus(), opt, 6))
        run.check(g, "mean-payoff differs from bounded window of the shifted game",
                  [&] { return mp_threshold_win(g) == bounded_wmp(shift_for_mp_reduction(g)).winning_p1; });
    return run.finish();
}

inline SuiteResult suite_total_payoff_window(const CheckOptions& opt) {
    detail::SuiteRun run("total-payoff-window");
    for (const auto& g : detail::with_planted(reduction_corpus(), opt, 6))
        run.check(g, "total-payoff not inside good window at the sufficient size", [&] {
            return tp_sup_win(g).subset_of(good_win(g, static_cast<int>(sufficient_window(g))).winning);
        });
    return run.finish();
}

/// Machine sizes of the synthesizers, verifier counterexamples, and the
/// memory needed by P2 on FIX3.
inline SuiteResult suite_memory_bounds(const CheckOptions& opt) {
    detail::SuiteRun run("memory-bounds");
    auto corpus = window_corpus();
    corpus.resize(120);
    corpus = detail::with_planted(std::move(corpus), opt, 6);
    Rng rng(0x5eed0005);
    for (const auto& g : corpus) {
        const int n = g.num_states();
        for (int l = 1; l <= 4; ++l) {
            if (fwmp(g, l).empty()) continue;
            run.check(g, "fixed window machine too large" + detail::lmax_tag(l), [&] {
                return synth_fwmp_1d(g, l).memory_size() <= n * l + n;
            });
        }
        if (!bounded_wmp(g).winning_p1.empty())
            run.check(g, "bounded window machine is not memoryless", [&] { return synth_bwmp(g).memory_size() == 1; });
        // Random memoryless machines: failing verdicts carry a real counterexample.
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<int> choice(static_cast<std::size_t>(n), -1);
            for (int s = 0; s < n; ++s) {
                const auto& succ = g.successors(s);
                choice[static_cast<std::size_t>(s)] = succ[rng.below(succ.size())];
            }
            auto st = MooreStrategy::memoryless(g, Player::P1, choice);
            const int l = 1 + static_cast<int>(rng.below(4));
            for (auto kind : {ObjectiveKind::GW, ObjectiveKind::DirFixWMP, ObjectiveKind::FixWMP}) {
                auto spec = ObjectiveSpec::window(kind, l);
                run.check(g, "verifier counterexample does not violate " + std::string(to_string(kind)), [&] {
                    Verdict v = verify_strategy(g, st, spec);
                    if (v.pass) return !v.counterexample;
                    return v.counterexample && !eval_lasso(g, *v.counterexample, spec).holds;
                });
            }
        }
    }
    const auto fix3 = fixture("FIX3");
    const auto spec = ObjectiveSpec::window(ObjectiveKind::FixWMP, 3);
    run.check(fix3, "FIX3: P2 wins with one memory state",
              [&] { return !min_memory_search(fix3, spec, Player::P2, 1).has_value(); });
    run.check(fix3, "FIX3: no two-state P2 machine found", [&] {
        auto st = min_memory_search(fix3, spec, Player::P2, 2);
        return st && st->memory_size() == 2;
    });
    return run.finish();
}

/// Containments between window kinds and monotonicity in lmax, on winning
/// sets and on individual lassos.
inline SuiteResult suite_monotonicity(const CheckOptions& opt) {
    detail::SuiteRun run("monotonicity");
    auto corpus = cross_corpus();
    corpus.resize(200);
    corpus = detail::with_planted(std::move(corpus), opt, 8);
    Rng rng(0x5eed0006);
    for (const auto& g : corpus) {
        const int n = g.num_states();
        const StateSet bnd = bounded_wmp(g).winning_p1;
        const StateSet dbnd = direct_bounded_wmp(g);
        run.check(g, "direct bounded window not inside bounded window", [&] { return dbnd.subset_of(bnd); });
        StateSet prev_gw(n), prev_dir(n), prev_fix(n);
        for (int l = 1; l <= 6; ++l) {
            const StateSet gw = good_win(g, l).winning, dir = direct_fwmp(g, l), fix = fwmp(g, l);
            run.check(g, "winning sets shrink as lmax grows" + detail::lmax_tag(l),
                      [&] { return prev_gw.subset_of(gw) && prev_dir.subset_of(dir) && prev_fix.subset_of(fix); });
            run.check(g, "window kinds not nested" + detail::lmax_tag(l), [&] {
                return dir.subset_of(gw) && dir.subset_of(fix) && fix.subset_of(bnd) && dir.subset_of(dbnd);
            });
            prev_gw = gw;
            prev_dir = dir;
            prev_fix = fix;
        }
        // Lassos from random memoryless plays.
        for (int trial = 0; trial < 2; ++trial) {
            std::vector<int> choice(static_cast<std::size_t>(n));
            for (int s = 0; s < n; ++s) {
                const auto& succ = g.successors(s);
                choice[static_cast<std::size_t>(s)] = succ[rng.below(succ.size())];
            }
            auto p1 = MooreStrategy::memoryless(g, Player::P1, choice);
            auto p2 = MooreStrategy::memoryless(g, Player::P2, choice);
            const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            Lasso l = play_out(g, &p1, &p2, start);
            // A predecessor chain in front of the play.
            Lasso longer = l;
            for (int step = 0; step < 3; ++step) {
                const auto& pred = g.predecessors(longer.stem.empty() ? longer.cycle.front() : longer.stem.front());
                if (pred.empty()) break;
                longer.stem.insert(longer.stem.begin(), pred[rng.below(pred.size())]);
            }
            run.check(g, "lasso verdicts violate nesting, monotonicity or prefix-independence", [&] {
                auto holds = [&](const Lasso& x, ObjectiveKind k, std::optional<int> lm = std::nullopt) {
                    return eval_lasso(g, x, ObjectiveSpec::window(k, lm)).holds;
                };
                const bool b = holds(l, ObjectiveKind::BndWMP), db = holds(l, ObjectiveKind::DirBndWMP);
                if (b != holds(longer, ObjectiveKind::BndWMP)) return false;
                if (db && !b) return false;
                bool prev_f = false, prev_d = false;
                for (int lm = 1; lm <= 6; ++lm) {
                    const bool f = holds(l, ObjectiveKind::FixWMP, lm), d = holds(l, ObjectiveKind::DirFixWMP, lm);
                    if (f != holds(longer, ObjectiveKind::FixWMP, lm)) return false;
                    if ((d && !f) || (f && !b) || (d && !db)) return false;
                    if ((prev_f && !f) || (prev_d && !d)) return false;
                    prev_f = f;
                    prev_d = d;
                }
                return true;
            });
            run.check(g, "window closing times break the inductive property", [&] {
                auto closes = window_closures(g, l, 0);
                const long a = l.period_start(), c = static_cast<long>(l.cycle.size());
                auto at = [&](long p) { return closes[static_cast<std::size_t>(p < a ? p : a + (p - a) % c)]; };
                for (long i = 0; i < static_cast<long>(closes.size()); ++i) {
                    const auto ci = at(i);
                    if (!ci) continue;
                    for (long j = i + 1; j < i + *ci; ++j) {
                        const auto cj = at(j);
                        if (!cj || j + *cj > i + *ci) return false;
                    }
                }
                return true;
            });
        }
    }
    return run.finish();
}

/// Work of the good-window recurrence against |E| * lmax over a doubling
/// series: every point within a factor 2 of the least-squares line
/// through the origin.
inline SuiteResult suite_update_count(const CheckOptions&) {
    detail::SuiteRun run("update-count");
    std::vector<std::pair<double, double>> points;
    std::vector<GameStructure> games;
    for (int j = 0; j < 6; ++j) {
        GenSpec s;
        s.states = 16 << (j / 2);
        s.max_abs_weight = 5;
        s.min_out = 2;
        s.max_out = 2;
        s.seed = 0x5eed0007 + static_cast<std::uint64_t>(j);
        const int l = 8 << (j % 2 == 1 ? 1 : 0) << (j / 2);
        GameStructure g = gen_random_game(s);
        auto t = good_win(g, l);
        points.emplace_back(static_cast<double>(g.num_edges()) * l, static_cast<double>(t.operations));
        games.push_back(std::move(g));
    }
    double sxy = 0, sxx = 0;
    for (auto [x, y] : points) {
        sxy += x * y;
        sxx += x * x;
    }
    const double slope = sxy / sxx;
    std::ostringstream fit;
    fit << "slope " << slope;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto [x, y] = points[i];
        run.check(games[i], "update count off the linear fit in |E| * lmax",
                  [&] { return y <= 2 * slope * x && y >= slope * x / 2; });
    }
    auto r = run.finish();
    if (r.pass) r.detail = fit.str();
    return r;
}

using SuiteFn = SuiteResult (*)(const CheckOptions&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> all = {
        {"fixtures", suite_fixtures},
        {"sufficient-window", suite_sufficient_window},
        {"cross-algorithm", suite_cross_algorithm},
        {"oracle-sweep", [](const CheckOptions& o) { return suite_oracle_sweep(o); }},
        {"payoff-inclusions", suite_payoff_inclusions},
        {"strictness-witness", suite_strictness_witness},
        {"mp-reduction", suite_mp_reduction},
        {"total-payoff-window", suite_total_payoff_window},
        {"memory-bounds", suite_memory_bounds},
        {"monotonicity", suite_monotonicity},
        {"update-count", suite_update_count},
    };
    return all;
}

inline SuiteResult run_suite(const std::string& name, const CheckOptions& opt) {
    for (const auto& [n, f] : suites())
        if (n == name) return f(opt);
    throw InvalidInput("unknown suite '" + name + "'");
}

/// Game text on one line, statements separated by "; ".
inline std::string inline_game(const GameStructure& g) {
    std::string text = serialize_game(g), out;
    for (char c : text) out += c == '\n' ? std::string("; ") : std::string(1, c);
    while (!out.empty() && (out.back() == ' ' || out.back() == ';')) out.pop_back();
    return out;
}

/// `SUITE <name> PASS|FAIL [game]`, then an indented detail line if any.
inline std::string format_suite(const SuiteResult& r) {
    std::string out = "SUITE " + r.name + (r.pass ? " PASS" : " FAIL");
    if (r.game) out += " " + inline_game(*r.game);
    out += "\n";
    if (!r.detail.empty()) out += "  " + r.detail + "\n";
    return out;
}

}  // namespace wmp::testkit
