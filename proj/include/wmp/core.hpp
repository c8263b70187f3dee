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
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "wmp/errors.hpp"

namespace wmp {

enum class Player : std::uint8_t { P1 = 1, P2 = 2 };

inline constexpr Player opponent(Player p) noexcept { return p == Player::P1 ? Player::P2 : Player::P1; }

inline std::string_view to_string(Player p) noexcept { return p == Player::P1 ? "P1" : "P2"; }

using Weight = std::int64_t;
using WeightVec = std::vector<Weight>;
using Rational = boost::rational<std::int64_t>;

namespace detail {

inline Weight checked_mul(Weight a, Weight b) {
    Weight r;
    if (__builtin_mul_overflow(a, b, &r)) throw ResourceExceeded("weight arithmetic overflows 64 bits");
    return r;
}

inline Weight checked_add(Weight a, Weight b) {
    Weight r;
    if (__builtin_add_overflow(a, b, &r)) throw ResourceExceeded("weight arithmetic overflows 64 bits");
    return r;
}

inline bool valid_id(std::string_view id) {
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// StateSet
// ---------------------------------------------------------------------------

/// Dense membership over the states of one game, indexed by canonical
/// (declaration) order.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(int n, bool full = false) : bits_(static_cast<std::size_t>(n), full ? 1 : 0) {}

    static StateSet of(int n, std::initializer_list<int> members) {
        StateSet s(n);
        for (int v : members) s.insert(v);
        return s;
    }
    static StateSet from_indices(int n, const std::vector<int>& members) {
        StateSet s(n);
        for (int v : members) s.insert(v);
        return s;
    }

    int universe() const noexcept { return static_cast<int>(bits_.size()); }
    bool contains(int v) const noexcept { return bits_[static_cast<std::size_t>(v)] != 0; }
    void insert(int v) noexcept { bits_[static_cast<std::size_t>(v)] = 1; }
    void erase(int v) noexcept { bits_[static_cast<std::size_t>(v)] = 0; }

    int count() const noexcept {
        return static_cast<int>(std::count(bits_.begin(), bits_.end(), char{1}));
    }
    bool empty() const noexcept { return count() == 0; }
    bool full() const noexcept { return count() == universe(); }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (int v = 0; v < universe(); ++v)
            if (contains(v)) out.push_back(v);
        return out;
    }

    StateSet complement() const {
        StateSet r(universe());
        for (int v = 0; v < universe(); ++v)
            if (!contains(v)) r.insert(v);
        return r;
    }
    StateSet& operator|=(const StateSet& o) noexcept {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = static_cast<char>(bits_[i] | o.bits_[i]);
        return *this;
    }
    StateSet& operator&=(const StateSet& o) noexcept {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = static_cast<char>(bits_[i] & o.bits_[i]);
        return *this;
    }
    StateSet& operator-=(const StateSet& o) noexcept {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = static_cast<char>(bits_[i] & !o.bits_[i]);
        return *this;
    }
    friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
    friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
    friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }
    friend bool operator==(const StateSet&, const StateSet&) = default;

    bool subset_of(const StateSet& o) const noexcept {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] && !o.bits_[i]) return false;
        return true;
    }

private:
    std::vector<char> bits_;
};

// ---------------------------------------------------------------------------
// GameStructure
// ---------------------------------------------------------------------------

struct Edge {
    int src = 0;
    int dst = 0;
    WeightVec weight;
};

/// A finite multi-weighted two-player arena.
///
/// The builder methods do not enforce totality or weight arity so that
/// invalid structures can be represented and reported by `validate`.
/// Unknown or duplicate state ids are rejected eagerly since they cannot
/// be represented at all.
class GameStructure {
public:
    GameStructure() = default;
    explicit GameStructure(int dims) : dims_(dims) {}

    int add_state(const std::string& id, Player owner) {
        if (index_.count(id)) throw InvalidInput("duplicate state '" + id + "'");
        int v = num_states();
        ids_.push_back(id);
        owners_.push_back(owner);
        index_.emplace(id, v);
        out_.emplace_back();
        in_.emplace_back();
        succ_.emplace_back();
        pred_.emplace_back();
        return v;
    }

    int add_edge(int src, int dst, WeightVec w) {
        if (src < 0 || src >= num_states() || dst < 0 || dst >= num_states())
            throw InvalidInput("edge endpoint out of range");
        int e = static_cast<int>(edges_.size());
        edges_.push_back(Edge{src, dst, std::move(w)});
        out_[static_cast<std::size_t>(src)].push_back(e);
        in_[static_cast<std::size_t>(dst)].push_back(e);
        succ_[static_cast<std::size_t>(src)].push_back(dst);
        pred_[static_cast<std::size_t>(dst)].push_back(src);
        return e;
    }

    int add_edge(const std::string& src, const std::string& dst, WeightVec w) {
        return add_edge(require(src), require(dst), std::move(w));
    }

    void remove_edge(int e) {
        std::vector<Edge> kept;
        for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
            if (i != e) kept.push_back(edges_[static_cast<std::size_t>(i)]);
        rebuild_edges(std::move(kept));
    }

    void set_init(int v) { init_ = v; }
    void set_init(const std::string& id) { init_ = require(id); }
    void clear_init() { init_.reset(); }
    void set_dims(int k) { dims_ = k; }

    int num_states() const noexcept { return static_cast<int>(ids_.size()); }
    int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
    int dims() const noexcept { return dims_; }
    std::optional<int> init() const noexcept { return init_; }

    Player owner(int v) const { return owners_[static_cast<std::size_t>(v)]; }
    const std::string& id(int v) const { return ids_[static_cast<std::size_t>(v)]; }
    std::optional<int> index_of(std::string_view id) const {
        auto it = index_.find(std::string(id));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    int require(const std::string& id) const {
        auto v = index_of(id);
        if (!v) throw InvalidInput("unknown state '" + id + "'");
        return *v;
    }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
    const std::vector<int>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& in_edges(int v) const { return in_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& successors(int v) const { return succ_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& predecessors(int v) const { return pred_[static_cast<std::size_t>(v)]; }

    /// Edge index of (src, dst), if present.
    std::optional<int> find_edge(int src, int dst) const {
        for (int e : out_edges(src))
            if (edges_[static_cast<std::size_t>(e)].dst == dst) return e;
        return std::nullopt;
    }

    /// W: largest absolute weight entry.
    Weight max_abs_weight() const noexcept {
        Weight w = 0;
        for (const auto& e : edges_)
            for (Weight x : e.weight) w = std::max(w, x < 0 ? -x : x);
        return w;
    }
    /// V: number of bits of W (1 when W = 0).
    int weight_bits() const noexcept {
        Weight w = max_abs_weight();
        int bits = 0;
        while (w > 0) {
            ++bits;
            w >>= 1;
        }
        return std::max(bits, 1);
    }

    StateSet all_states() const { return StateSet(num_states(), true); }
    StateSet owned_by(Player p) const {
        StateSet s(num_states());
        for (int v = 0; v < num_states(); ++v)
            if (owner(v) == p) s.insert(v);
        return s;
    }

    /// Copy with every weight replaced by f(weight-vector).
    template <class F>
    GameStructure map_weights(F&& f, int new_dims = -1) const {
        GameStructure g = *this;
        if (new_dims > 0) g.dims_ = new_dims;
        for (auto& e : g.edges_) e.weight = f(e.weight);
        return g;
    }

    friend bool operator==(const GameStructure& a, const GameStructure& b) {
        if (a.dims_ != b.dims_ || a.ids_ != b.ids_ || a.owners_ != b.owners_ || a.init_ != b.init_) return false;
        if (a.edges_.size() != b.edges_.size()) return false;
        for (std::size_t i = 0; i < a.edges_.size(); ++i) {
            const Edge& x = a.edges_[i];
            const Edge& y = b.edges_[i];
            if (x.src != y.src || x.dst != y.dst || x.weight != y.weight) return false;
        }
        return true;
    }

private:
    void rebuild_edges(std::vector<Edge> edges) {
        edges_.clear();
        for (auto& v : out_) v.clear();
        for (auto& v : in_) v.clear();
        for (auto& v : succ_) v.clear();
        for (auto& v : pred_) v.clear();
        for (auto& e : edges) add_edge(e.src, e.dst, std::move(e.weight));
    }

    int dims_ = 1;
    std::vector<std::string> ids_;
    std::vector<Player> owners_;
    std::unordered_map<std::string, int> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_, in_, succ_, pred_;
    std::optional<int> init_;
};

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

struct Violation {
    enum class Kind { DeadEnd, Arity, MissingInit, BadDims, BadId, DuplicateEdge };
    Kind kind;
    int state = -1;  // offending state, when applicable
    int edge = -1;   // offending edge, when applicable
    std::string message;
    friend bool operator==(const Violation& a, const Violation& b) {
        return a.kind == b.kind && a.state == b.state && a.edge == b.edge;
    }
};

inline std::vector<Violation> validate(const GameStructure& g) {
    std::vector<Violation> out;
    if (g.dims() < 1) out.push_back({Violation::Kind::BadDims, -1, -1, "dims must be >= 1"});
    for (int v = 0; v < g.num_states(); ++v)
        if (!detail::valid_id(g.id(v)))
            out.push_back({Violation::Kind::BadId, v, -1, "invalid state id '" + g.id(v) + "'"});
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (static_cast<int>(ed.weight.size()) != g.dims())
            out.push_back({Violation::Kind::Arity, ed.src, e,
                           "edge " + g.id(ed.src) + "->" + g.id(ed.dst) + " has " +
                               std::to_string(ed.weight.size()) + " weights, expected " + std::to_string(g.dims())});
        for (int f : g.out_edges(ed.src))
            if (f < e && g.edge(f).dst == ed.dst) {
                out.push_back({Violation::Kind::DuplicateEdge, ed.src, e,
                               "duplicate edge " + g.id(ed.src) + "->" + g.id(ed.dst)});
                break;
            }
    }
    for (int v = 0; v < g.num_states(); ++v)
        if (g.out_edges(v).empty()) out.push_back({Violation::Kind::DeadEnd, v, -1, "dead-end state " + g.id(v)});
    if (!g.init()) out.push_back({Violation::Kind::MissingInit, -1, -1, "missing init"});
    return out;
}

inline void require_valid(const GameStructure& g) {
    auto v = validate(g);
    if (!v.empty()) throw InvalidInput(v.front().message);
}

// ---------------------------------------------------------------------------
// wgame text format
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
    std::string text;
    int column;  // 1-based
};

inline std::vector<Token> tokenize_line(const std::string& raw) {
    std::vector<Token> toks;
    std::size_t end = raw.find('#');
    std::string line = raw.substr(0, end);
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        toks.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return toks;
}

inline Weight parse_int(const Token& t, int line) {
    const std::string& s = t.text;
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i >= s.size()) throw ParseError("expected integer, got '" + s + "'", line, t.column);
    Weight v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ParseError("expected integer, got '" + s + "'", line, t.column);
        if (__builtin_mul_overflow(v, Weight{10}, &v) || __builtin_add_overflow(v, Weight{s[i] - '0'}, &v))
            throw ParseError("integer out of range '" + s + "'", line, t.column);
    }
    return neg ? -v : v;
}

inline const std::string& parse_id(const Token& t, int line) {
    if (!valid_id(t.text)) throw ParseError("invalid identifier '" + t.text + "'", line, t.column);
    return t.text;
}

}  // namespace detail

/// Parse a wgame document. Syntax problems raise ParseError; structurally
/// invalid games (dead ends, unknown states, arity...) raise InvalidInput.
inline GameStructure parse_game(std::istream& in) {
    using detail::Token;
    std::string raw;
    int lineno = 0;
    int stage = 0;  // 0: expect header, 1: expect dims, 2: body
    GameStructure g;
    std::vector<std::pair<std::vector<Token>, int>> edge_lines;
    std::optional<std::pair<Token, int>> init_tok;

    while (std::getline(in, raw)) {
        ++lineno;
        auto toks = detail::tokenize_line(raw);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;
        auto arity = [&](std::size_t n) {
            if (toks.size() != n)
                throw ParseError("'" + kw + "' expects " + std::to_string(n - 1) + " argument(s)", lineno,
                                 toks.size() > n ? toks[n].column : static_cast<int>(raw.size()) + 1);
        };
        if (stage == 0) {
            if (kw != "wgame") throw ParseError("expected 'wgame 1' header", lineno, toks[0].column);
            arity(2);
            if (toks[1].text != "1") throw ParseError("unsupported wgame version '" + toks[1].text + "'", lineno, toks[1].column);
            stage = 1;
        } else if (stage == 1) {
            if (kw != "dims") throw ParseError("expected 'dims <k>'", lineno, toks[0].column);
            arity(2);
            Weight k = detail::parse_int(toks[1], lineno);
            if (k < 1 || k > 64) throw ParseError("dims must be between 1 and 64", lineno, toks[1].column);
            g.set_dims(static_cast<int>(k));
            stage = 2;
        } else if (kw == "state") {
            arity(3);
            const std::string& id = detail::parse_id(toks[1], lineno);
            Player p;
            if (toks[2].text == "P1") p = Player::P1;
            else if (toks[2].text == "P2") p = Player::P2;
            else throw ParseError("owner must be P1 or P2", lineno, toks[2].column);
            if (g.index_of(id)) throw InvalidInput("line " + std::to_string(lineno) + ": duplicate state '" + id + "'");
            g.add_state(id, p);
        } else if (kw == "edge") {
            if (toks.size() < 4) throw ParseError("'edge' expects <src> <dst> <w1> ... <wk>", lineno, toks[0].column);
            detail::parse_id(toks[1], lineno);
            detail::parse_id(toks[2], lineno);
            for (std::size_t i = 3; i < toks.size(); ++i) detail::parse_int(toks[i], lineno);
            edge_lines.emplace_back(std::move(toks), lineno);
        } else if (kw == "init") {
            arity(2);
            detail::parse_id(toks[1], lineno);
            if (init_tok) throw InvalidInput("line " + std::to_string(lineno) + ": duplicate init");
            init_tok = std::make_pair(toks[1], lineno);
        } else {
            throw ParseError("unknown keyword '" + kw + "'", lineno, toks[0].column);
        }
    }
    if (stage == 0) throw ParseError("empty input, expected 'wgame 1' header", lineno + 1, 1);
    if (stage == 1) throw ParseError("missing 'dims <k>' line", lineno + 1, 1);

    for (auto& [toks, ln] : edge_lines) {
        auto src = g.index_of(toks[1].text);
        auto dst = g.index_of(toks[2].text);
        if (!src) throw InvalidInput("line " + std::to_string(ln) + ": unknown state '" + toks[1].text + "' in edge");
        if (!dst) throw InvalidInput("line " + std::to_string(ln) + ": unknown state '" + toks[2].text + "' in edge");
        WeightVec w;
        for (std::size_t i = 3; i < toks.size(); ++i) w.push_back(detail::parse_int(toks[i], ln));
        if (static_cast<int>(w.size()) != g.dims())
            throw InvalidInput("line " + std::to_string(ln) + ": edge has " + std::to_string(w.size()) +
                               " weights, expected " + std::to_string(g.dims()));
        if (g.find_edge(*src, *dst))
            throw InvalidInput("line " + std::to_string(ln) + ": duplicate edge " + toks[1].text + "->" + toks[2].text);
        g.add_edge(*src, *dst, std::move(w));
    }
    if (!init_tok) throw InvalidInput("missing init");
    auto iv = g.index_of(init_tok->first.text);
    if (!iv) throw InvalidInput("line " + std::to_string(init_tok->second) + ": init references unknown state '" +
                                init_tok->first.text + "'");
    g.set_init(*iv);
    require_valid(g);
    return g;
}

inline GameStructure parse_game(const std::string& text) {
    std::istringstream in(text);
    return parse_game(in);
}

/// Canonical text: states in declaration order, one edge per line in
/// insertion order.
inline void serialize_game(const GameStructure& g, std::ostream& out) {
    out << "wgame 1\n";
    out << "dims " << g.dims() << "\n";
    for (int v = 0; v < g.num_states(); ++v) out << "state " << g.id(v) << ' ' << to_string(g.owner(v)) << "\n";
    for (const Edge& e : g.edges()) {
        out << "edge " << g.id(e.src) << ' ' << g.id(e.dst);
        for (Weight w : e.weight) out << ' ' << w;
        out << "\n";
    }
    if (g.init()) out << "init " << g.id(*g.init()) << "\n";
}

inline std::string serialize_game(const GameStructure& g) {
    std::ostringstream out;
    serialize_game(g, out);
    return out.str();
}

/// Space-separated ids of the members of `s`, in canonical order.
inline std::string format_states(const GameStructure& g, const StateSet& s) {
    std::string out;
    for (int v : s.indices()) {
        if (!out.empty()) out += ' ';
        out += g.id(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Thresholds
// ---------------------------------------------------------------------------

inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    auto to_int = [&](std::string_view s) -> std::int64_t {
        detail::Token t{std::string(s), 1};
        return detail::parse_int(t, 1);
    };
    try {
        if (slash == std::string_view::npos) return Rational(to_int(text));
        std::int64_t num = to_int(text.substr(0, slash));
        std::int64_t den = to_int(text.substr(slash + 1));
        if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    } catch (const ParseError&) {
        throw ParseError("malformed rational '" + std::string(text) + "'", 1, 1);
    }
}

inline std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

enum class ThresholdMode { Mean, Total };

/// Rewrites `g` so that threshold `v` becomes the zero threshold.
///
/// Mean mode maps each entry w(t) to b_t * w(t) - a_t where v(t) = a_t / b_t.
/// Total mode scales weights by b_t and prepends a fresh P1 initial state
/// whose single edge to the old initial state carries -a_t; the verdict of
/// the fresh state at threshold 0 equals the verdict of the old initial
/// state at threshold v.
inline GameStructure normalize_threshold(const GameStructure& g, const std::vector<Rational>& v, ThresholdMode mode) {
    if (static_cast<int>(v.size()) != g.dims())
        throw InvalidInput("threshold has " + std::to_string(v.size()) + " entries, expected " + std::to_string(g.dims()));
    for (const auto& q : v)
        if (q.denominator() <= 0) throw InvalidInput("zero denominator in threshold");
    if (mode == ThresholdMode::Mean) {
        return g.map_weights([&](const WeightVec& w) {
            WeightVec r(w.size());
            for (std::size_t t = 0; t < w.size(); ++t)
                r[t] = detail::checked_add(detail::checked_mul(v[t].denominator(), w[t]), -v[t].numerator());
            return r;
        });
    }
    if (!g.init()) throw InvalidInput("total-payoff normalization needs an initial state");
    GameStructure scaled = g.map_weights([&](const WeightVec& w) {
        WeightVec r(w.size());
        for (std::size_t t = 0; t < w.size(); ++t) r[t] = detail::checked_mul(v[t].denominator(), w[t]);
        return r;
    });
    std::string fresh = "init0";
    while (scaled.index_of(fresh)) fresh += "_";
    int s = scaled.add_state(fresh, Player::P1);
    WeightVec offset(v.size());
    for (std::size_t t = 0; t < v.size(); ++t) offset[t] = -v[t].numerator();
    scaled.add_edge(s, *g.init(), offset);
    scaled.set_init(s);
    return scaled;
}

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

enum class ObjectiveKind { GW, DirFixWMP, DirBndWMP, FixWMP, BndWMP, MeanInf, MeanSup, TotalInf, TotalSup };

inline std::string_view to_string(ObjectiveKind k) noexcept {
    switch (k) {
        case ObjectiveKind::GW: return "GW";
        case ObjectiveKind::DirFixWMP: return "DirFixWMP";
        case ObjectiveKind::DirBndWMP: return "DirBndWMP";
        case ObjectiveKind::FixWMP: return "FixWMP";
        case ObjectiveKind::BndWMP: return "BndWMP";
        case ObjectiveKind::MeanInf: return "MeanInf";
        case ObjectiveKind::MeanSup: return "MeanSup";
        case ObjectiveKind::TotalInf: return "TotalInf";
        case ObjectiveKind::TotalSup: return "TotalSup";
    }
    return "?";
}

inline constexpr bool is_window(ObjectiveKind k) noexcept {
    return k == ObjectiveKind::GW || k == ObjectiveKind::DirFixWMP || k == ObjectiveKind::DirBndWMP ||
           k == ObjectiveKind::FixWMP || k == ObjectiveKind::BndWMP;
}
inline constexpr bool needs_lmax(ObjectiveKind k) noexcept {
    return k == ObjectiveKind::GW || k == ObjectiveKind::DirFixWMP || k == ObjectiveKind::FixWMP;
}

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::FixWMP;
    std::optional<int> lmax;
    std::vector<Rational> threshold;  // empty means the zero vector

    static ObjectiveSpec window(ObjectiveKind kind, std::optional<int> lmax = std::nullopt) {
        ObjectiveSpec s;
        s.kind = kind;
        s.lmax = lmax;
        return s;
    }
    static ObjectiveSpec payoff(ObjectiveKind kind, std::vector<Rational> threshold = {}) {
        ObjectiveSpec s;
        s.kind = kind;
        s.threshold = std::move(threshold);
        return s;
    }

    Rational threshold_at(int t) const { return threshold.empty() ? Rational(0) : threshold[static_cast<std::size_t>(t)]; }
    bool zero_threshold() const {
        return std::all_of(threshold.begin(), threshold.end(), [](const Rational& q) { return q == Rational(0); });
    }

    void check(int dims) const {
        if (needs_lmax(kind)) {
            if (!lmax || *lmax < 1) throw InvalidInput(std::string(to_string(kind)) + " requires lmax >= 1");
        } else if (lmax) {
            throw InvalidInput(std::string(to_string(kind)) + " takes no lmax");
        }
        if (!threshold.empty() && static_cast<int>(threshold.size()) != dims)
            throw InvalidInput("threshold arity does not match game dimension");
    }
};

// ---------------------------------------------------------------------------
// Lassos and exact evaluation
// ---------------------------------------------------------------------------

/// Ultimately periodic play stem . cycle^omega, as state indices.
struct Lasso {
    std::vector<int> stem;
    std::vector<int> cycle;

    int period_start() const noexcept { return static_cast<int>(stem.size()); }
    int span() const noexcept { return static_cast<int>(stem.size() + cycle.size()); }
    /// State at position n of the play.
    int at(long n) const {
        if (n < static_cast<long>(stem.size())) return stem[static_cast<std::size_t>(n)];
        return cycle[static_cast<std::size_t>((n - static_cast<long>(stem.size())) % static_cast<long>(cycle.size()))];
    }
    friend bool operator==(const Lasso&, const Lasso&) = default;
};

inline Lasso lasso_from_ids(const GameStructure& g, const std::vector<std::string>& stem,
                            const std::vector<std::string>& cycle) {
    Lasso l;
    for (const auto& s : stem) l.stem.push_back(g.require(s));
    for (const auto& s : cycle) l.cycle.push_back(g.require(s));
    return l;
}

inline std::string format_lasso(const GameStructure& g, const Lasso& l) {
    std::string out = "stem:";
    for (int v : l.stem) out += " " + g.id(v);
    out += " cycle:";
    for (int v : l.cycle) out += " " + g.id(v);
    return out;
}

/// Extended value: a rational or +/- infinity.
struct ExtValue {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Rational value{0};

    static ExtValue finite(Rational q) { return {Kind::Finite, q}; }
    static ExtValue pos_inf() { return {Kind::PosInf, Rational(0)}; }
    static ExtValue neg_inf() { return {Kind::NegInf, Rational(0)}; }

    bool at_least(const Rational& q) const {
        if (kind == Kind::PosInf) return true;
        if (kind == Kind::NegInf) return false;
        return value >= q;
    }
    bool greater_than(const Rational& q) const {
        if (kind == Kind::PosInf) return true;
        if (kind == Kind::NegInf) return false;
        return value > q;
    }
    friend bool operator==(const ExtValue& a, const ExtValue& b) {
        return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
    }
};

inline std::string to_string(const ExtValue& v) {
    switch (v.kind) {
        case ExtValue::Kind::NegInf: return "-inf";
        case ExtValue::Kind::PosInf: return "+inf";
        default: return to_string(v.value);
    }
}

namespace detail {

/// Per-position edge weights of a lasso: entry p is the weight vector of
/// the edge leaving position p, for p in [0, |stem| + |cycle|).
inline std::vector<const WeightVec*> lasso_weights(const GameStructure& g, const Lasso& l) {
    if (l.cycle.empty()) throw InvalidInput("lasso cycle must be nonempty");
    for (int v : l.stem)
        if (v < 0 || v >= g.num_states()) throw InvalidInput("lasso state out of range");
    for (int v : l.cycle)
        if (v < 0 || v >= g.num_states()) throw InvalidInput("lasso state out of range");
    std::vector<const WeightVec*> w;
    int n = l.span();
    for (int p = 0; p < n; ++p) {
        int a = l.at(p);
        int b = p + 1 < n ? l.at(p + 1) : l.cycle.front();
        auto e = g.find_edge(a, b);
        if (!e) throw InvalidInput("lasso uses missing edge " + g.id(a) + "->" + g.id(b));
        w.push_back(&g.edge(*e).weight);
    }
    return w;
}

}  // namespace detail

/// Exact closing time of the window opened at each position of a lasso.
///
/// Entry p (for p < |stem| + |cycle|) is the least l >= 1 such that the sum
/// of the l edges starting at position p is non-negative in dimension `dim`,
/// or nullopt if that never happens.
inline std::vector<std::optional<long>> window_closures(const GameStructure& g, const Lasso& l, int dim) {
    auto w = detail::lasso_weights(g, l);
    const long a = static_cast<long>(l.stem.size());
    const long c = static_cast<long>(l.cycle.size());
    const long n = a + c;
    auto weight_at = [&](long pos) -> Weight {
        long idx = pos < a ? pos : a + (pos - a) % c;
        return (*w[static_cast<std::size_t>(idx)])[static_cast<std::size_t>(dim)];
    };
    Weight cycle_sum = 0;
    for (long q = 0; q < c; ++q) cycle_sum += weight_at(a + q);

    std::vector<std::optional<long>> out(static_cast<std::size_t>(n));
    for (long p = 0; p < n; ++p) {
        const long horizon = std::max(0L, a - p) + c;
        Weight sum = 0;
        std::vector<Weight> tail;  // prefix sums for the last full period
        for (long j = 1; j <= horizon; ++j) {
            sum += weight_at(p + j - 1);
            if (sum >= 0) {
                out[static_cast<std::size_t>(p)] = j;
                break;
            }
            if (j > horizon - c) tail.push_back(sum);
        }
        if (out[static_cast<std::size_t>(p)] || cycle_sum <= 0) continue;
        // Past the horizon the prefix sum at step r + q*c is tail[r] + q*cycle_sum.
        long best = std::numeric_limits<long>::max();
        for (long r = 0; r < c; ++r) {
            Weight deficit = -tail[static_cast<std::size_t>(r)];
            long q = static_cast<long>((deficit + cycle_sum - 1) / cycle_sum);
            best = std::min(best, horizon - c + 1 + r + q * c);
        }
        out[static_cast<std::size_t>(p)] = best;
    }
    return out;
}

struct LassoVerdict {
    bool holds = false;
    /// Payoff kinds: the value per dimension.
    std::vector<ExtValue> values;
    /// Bounded window kinds: the least window size that works, when one exists.
    std::optional<long> needed_lmax;
};

/// Exact evaluation of an objective on stem . cycle^omega.
///
/// Window kinds must be given at threshold zero (normalize the game first).
inline LassoVerdict eval_lasso(const GameStructure& g, const Lasso& l, const ObjectiveSpec& spec) {
    spec.check(g.dims());
    auto w = detail::lasso_weights(g, l);
    const int k = g.dims();
    const long a = static_cast<long>(l.stem.size());
    const long c = static_cast<long>(l.cycle.size());
    LassoVerdict out;

    if (!is_window(spec.kind)) {
        out.holds = true;
        for (int t = 0; t < k; ++t) {
            Weight cs = 0;
            for (long q = 0; q < c; ++q) cs += (*w[static_cast<std::size_t>(a + q)])[static_cast<std::size_t>(t)];
            ExtValue v;
            if (spec.kind == ObjectiveKind::MeanInf || spec.kind == ObjectiveKind::MeanSup) {
                v = ExtValue::finite(Rational(cs, c));
            } else if (cs > 0) {
                v = ExtValue::pos_inf();
            } else if (cs < 0) {
                v = ExtValue::neg_inf();
            } else {
                // Zero cycle: the tail of prefix sums repeats the values seen
                // at positions a .. a+c-1.
                Weight sum = 0;
                for (long p = 0; p < a; ++p) sum += (*w[static_cast<std::size_t>(p)])[static_cast<std::size_t>(t)];
                Weight lo = sum, hi = sum;
                for (long q = 0; q + 1 < c; ++q) {
                    sum += (*w[static_cast<std::size_t>(a + q)])[static_cast<std::size_t>(t)];
                    lo = std::min(lo, sum);
                    hi = std::max(hi, sum);
                }
                v = ExtValue::finite(Rational(spec.kind == ObjectiveKind::TotalInf ? lo : hi));
            }
            out.holds = out.holds && v.at_least(spec.threshold_at(t));
            out.values.push_back(v);
        }
        return out;
    }

    if (!spec.zero_threshold()) throw InvalidInput("window objectives are evaluated at threshold 0; normalize the game first");

    const bool direct = spec.kind == ObjectiveKind::GW || spec.kind == ObjectiveKind::DirFixWMP ||
                        spec.kind == ObjectiveKind::DirBndWMP;
    const long first = direct ? 0 : a;
    const long last = spec.kind == ObjectiveKind::GW ? 1 : a + c;
    long worst = 1;
    bool bounded = true;
    for (int t = 0; t < k; ++t) {
        auto closes = window_closures(g, l, t);
        for (long p = first; p < last; ++p) {
            const auto& cl = closes[static_cast<std::size_t>(p)];
            if (!cl) bounded = false;
            else worst = std::max(worst, *cl);
        }
    }
    if (spec.kind == ObjectiveKind::DirBndWMP || spec.kind == ObjectiveKind::BndWMP) {
        out.holds = bounded;
        if (bounded) out.needed_lmax = worst;
    } else {
        out.holds = bounded && worst <= *spec.lmax;
    }
    return out;
}

/// Winning regions of both players plus optional witnesses.
struct SolveReport {
    StateSet winning_p1;
    StateSet winning_p2;
    /// A window size that suffices for the bounded objective.
    std::optional<long> witness_lmax;
    std::optional<Lasso> counterexample;
    /// Solver work counter (recurrence updates or product edges).
    long operations = 0;
    /// Reachable product size, for product-based solvers.
    std::optional<long> product_states;
    int iterations = 0;

    static SolveReport from_p1(StateSet p1) {
        SolveReport r;
        r.winning_p2 = p1.complement();
        r.winning_p1 = std::move(p1);
        return r;
    }
};

}  // namespace wmp
