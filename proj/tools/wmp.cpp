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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wmp/wmp.hpp"

namespace {

using namespace wmp;

const std::map<std::string, ObjectiveKind> kObjectives = {
    {"gw", ObjectiveKind::GW},          {"dfwmp", ObjectiveKind::DirFixWMP}, {"fwmp", ObjectiveKind::FixWMP},
    {"dbwmp", ObjectiveKind::DirBndWMP}, {"bwmp", ObjectiveKind::BndWMP},     {"mp", ObjectiveKind::MeanInf},
    {"mpinf", ObjectiveKind::MeanInf},  {"mpsup", ObjectiveKind::MeanSup},   {"tpinf", ObjectiveKind::TotalInf},
    {"tpsup", ObjectiveKind::TotalSup},
};

std::vector<std::string> objective_names(std::initializer_list<const char*> names) { return {names.begin(), names.end()}; }

GameStructure load_game(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    return parse_game(in);
}

std::vector<Rational> parse_threshold(const std::string& text, int dims) {
    if (text.empty()) return {};
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(parse_rational(part));
    if (static_cast<int>(out.size()) != dims)
        throw InvalidInput("threshold has " + std::to_string(out.size()) + " entries, expected " + std::to_string(dims));
    return out;
}

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& q : v)
        if (q != Rational(0)) return false;
    return true;
}

std::optional<int> lmax_opt(int lmax) { return lmax > 0 ? std::optional<int>(lmax) : std::nullopt; }

[[noreturn]] void reject_bounded_multi_dim() {
    throw Unsupported(
        "bounded window objectives in more than one dimension are non-primitive recursive hard; "
        "use fwmp or dfwmp with an explicit --lmax");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << text;
}

/// Options shared by solve and synth.
struct SolveArgs {
    std::string objective;
    int lmax = 0;
    std::string threshold;
    bool require_init = false;
    int oracle_budget = kDefaultOracleBudget;
    long product_cap = 0;
    int jobs = 1;
    std::string file;
    std::string out;
};

long cap_of(const SolveArgs& a) { return a.product_cap > 0 ? a.product_cap : product_cap_from_env(); }

/// Game with the threshold folded into the weights (mean-style kinds).
GameStructure at_zero(const GameStructure& g, const std::vector<Rational>& v) {
    if (v.empty() || all_zero(v)) return g;
    return normalize_threshold(g, v, ThresholdMode::Mean);
}

SolveReport solve(const GameStructure& g0, const SolveArgs& a) {
    const ObjectiveKind kind = kObjectives.at(a.objective);
    ObjectiveSpec spec = ObjectiveSpec::window(kind, lmax_opt(a.lmax));
    spec.check(g0.dims());
    const auto v = parse_threshold(a.threshold, g0.dims());
    const bool multi = g0.dims() > 1;
    const long cap = cap_of(a);
    if (kind == ObjectiveKind::TotalSup) {
        if (multi) throw Unsupported("total-payoff needs one dimension");
        if (v.empty() || all_zero(v)) {
            auto tp = tp_sup_win_with_strategy(g0, a.oracle_budget);
            return SolveReport::from_p1(tp.win);
        }
        // One fresh initial state per original state.
        StateSet win(g0.num_states());
        for (int s = 0; s < g0.num_states(); ++s) {
            GameStructure h = g0;
            h.set_init(s);
            GameStructure n = normalize_threshold(h, v, ThresholdMode::Total);
            if (tp_sup_win(n, a.oracle_budget).contains(*n.init())) win.insert(s);
        }
        return SolveReport::from_p1(win);
    }
    const GameStructure g = at_zero(g0, v);
    switch (kind) {
        case ObjectiveKind::GW: {
            if (multi) return SolveReport::from_p1(good_win_k(g, a.lmax));
            auto t = good_win(g, a.lmax);
            SolveReport r = SolveReport::from_p1(t.winning);
            r.operations = t.operations;
            return r;
        }
        case ObjectiveKind::DirFixWMP: {
            if (multi) return direct_fwmp_k(g, a.lmax, cap);
            auto d = direct_fwmp_detailed(g, a.lmax, g.all_states());
            SolveReport r = SolveReport::from_p1(d.winning);
            r.operations = d.operations;
            r.iterations = d.rounds;
            return r;
        }
        case ObjectiveKind::FixWMP: {
            if (multi) return fwmp_k(g, a.lmax, cap);
            auto f = fwmp_detailed(g, a.lmax);
            SolveReport r = SolveReport::from_p1(f.winning);
            r.operations = f.operations;
            r.iterations = static_cast<int>(f.layers.size());
            return r;
        }
        case ObjectiveKind::BndWMP:
            if (multi) reject_bounded_multi_dim();
            return bounded_wmp(g, a.oracle_budget);
        case ObjectiveKind::DirBndWMP: {
            if (multi) reject_bounded_multi_dim();
            SolveReport r = SolveReport::from_p1(direct_bounded_wmp(g, a.oracle_budget));
            if (!r.winning_p1.empty()) r.witness_lmax = sufficient_window(g);
            return r;
        }
        case ObjectiveKind::MeanInf:
        case ObjectiveKind::MeanSup:
            if (multi) throw Unsupported("mean-payoff needs one dimension");
            return SolveReport::from_p1(mp_threshold_win(g));
        default:
            throw Unsupported("objective not available for solve");
    }
}

/// "winning:" alone for an empty set, no trailing blank.
std::string states_line(const char* label, const GameStructure& g, const StateSet& s) {
    std::string body = format_states(g, s);
    return std::string(label) + (body.empty() ? "" : " " + body) + "\n";
}

void print_report(const GameStructure& g, const SolveReport& r) {
    std::cout << states_line("winning:", g, r.winning_p1);
    std::cout << states_line("losing:", g, r.winning_p2);
    if (r.witness_lmax) std::cout << "witness_lmax: " << *r.witness_lmax << "\n";
    if (r.operations) std::cout << "operations: " << r.operations << "\n";
    if (r.product_states) std::cout << "product_states: " << *r.product_states << "\n";
    if (r.iterations) std::cout << "iterations: " << r.iterations << "\n";
}

int require_init_status(const GameStructure& g, const SolveReport& r, bool require) {
    if (!require) return 0;
    if (!g.init()) throw InvalidInput("--require-init given but the game has no initial state");
    return r.winning_p1.contains(*g.init()) ? 0 : 1;
}

int run_solve(const SolveArgs& a) {
    GameStructure g = load_game(a.file);
    SolveReport r = solve(g, a);
    print_report(g, r);
    return require_init_status(g, r, a.require_init);
}

int run_synth(const SolveArgs& a) {
    GameStructure g0 = load_game(a.file);
    const ObjectiveKind kind = kObjectives.at(a.objective);
    ObjectiveSpec::window(kind, lmax_opt(a.lmax)).check(g0.dims());
    const GameStructure g = at_zero(g0, parse_threshold(a.threshold, g0.dims()));
    const long cap = cap_of(a);
    MooreStrategy st;
    switch (kind) {
        case ObjectiveKind::FixWMP:
            st = g.dims() == 1 ? synth_fwmp_1d(g, a.lmax) : synth_fwmp_k(g, a.lmax, false, cap);
            break;
        case ObjectiveKind::DirFixWMP:
            st = synth_fwmp_k(g, a.lmax, true, cap);
            break;
        case ObjectiveKind::BndWMP:
            if (g.dims() > 1) reject_bounded_multi_dim();
            st = synth_bwmp(g, a.oracle_budget);
            break;
        default:
            throw Unsupported("synth supports fwmp, dfwmp and bwmp");
    }
    SolveReport r = solve(g0, a);
    print_report(g0, r);
    std::cout << "memory: " << st.memory_size() << "\n";
    write_text(a.out, serialize_strategy(g, st));
    return require_init_status(g0, r, a.require_init);
}

struct VerifyArgs {
    std::string file, strat, objective, threshold;
    int lmax = 0;
    long product_cap = 0;
};

int run_verify(const VerifyArgs& a) {
    GameStructure g0 = load_game(a.file);
    const ObjectiveKind kind = kObjectives.at(a.objective);
    ObjectiveSpec spec = ObjectiveSpec::window(kind, lmax_opt(a.lmax));
    spec.check(g0.dims());
    const GameStructure g = at_zero(g0, parse_threshold(a.threshold, g0.dims()));
    std::ifstream in(a.strat);
    if (!in) throw InvalidInput("cannot open '" + a.strat + "'");
    MooreStrategy st = parse_strategy(in, g);
    if (g.dims() > 1 && (kind == ObjectiveKind::BndWMP || kind == ObjectiveKind::DirBndWMP)) reject_bounded_multi_dim();
    Verdict v = verify_strategy(g, st, spec, {}, a.product_cap > 0 ? a.product_cap : product_cap_from_env());
    std::cout << (v.pass ? "PASS" : "FAIL") << "\n";
    if (v.counterexample) std::cout << (v.pass ? "witness: " : "counterexample: ") << format_lasso(g, *v.counterexample) << "\n";
    std::cout << "product_states: " << v.product_states << "\n";
    return v.pass ? 0 : 1;
}

struct ReduceArgs {
    std::string file, out, bad;
    int lmax = 0;
    long product_cap = 0;
};

/// The window product as a one-dimension game with zero weights, plus the
/// ids of its bad states.
int run_reduce(const ReduceArgs& a) {
    GameStructure g = load_game(a.file);
    ProductGame p = build_window_product(g, a.lmax, g.all_states(),
                                         a.product_cap > 0 ? a.product_cap : product_cap_from_env());
    GameStructure out(1);
    for (int v = 0; v < p.num_states(); ++v) out.add_state(p.node_id(g, v), p.graph.owner(v));
    for (int v = 0; v < p.num_states(); ++v)
        for (int u : p.graph.successors(v)) out.add_edge(v, u, WeightVec{0});
    if (g.init()) out.set_init(p.fresh_index[static_cast<std::size_t>(*g.init())]);
    std::string sidecar;
    for (int v = 0; v < p.num_states(); ++v)
        if (p.bad[static_cast<std::size_t>(v)]) sidecar += "bad " + out.id(v) + "\n";
    write_text(a.out, serialize_game(out));
    const std::string bad_path = !a.bad.empty() ? a.bad : a.out + ".bad";
    std::ofstream side(bad_path);
    if (!side) throw InvalidInput("cannot write '" + bad_path + "'");
    side << sidecar;
    std::cerr << "product_states: " << p.num_states() << "\n";
    return 0;
}

struct GenArgs {
    testkit::GenSpec spec;
    std::string p2_fraction = "1/2";
    std::string out;
};

int run_gen(GenArgs a) {
    a.spec.p2_fraction = parse_rational(a.p2_fraction);
    GameStructure g = testkit::gen_random_game(a.spec);
    std::ostringstream text;
    text << "# wmp gen: " << testkit::kPrngVersion << ", seed " << a.spec.seed << ", states " << a.spec.states
         << ", dims " << a.spec.dims << ", max weight " << a.spec.max_abs_weight << ", out-degree " << a.spec.min_out
         << ".." << a.spec.max_out << ", P2 fraction " << to_string(a.spec.p2_fraction) << "\n";
    text << serialize_game(g);
    write_text(a.out, text.str());
    return 0;
}

struct OracleArgs {
    std::string file, objective, threshold;
    int lmax = 0;
    int player = 1;
    long max_strategies = 1'000'000;
    long product_cap = 20'000;
};

int run_oracle(const OracleArgs& a) {
    GameStructure g0 = load_game(a.file);
    const ObjectiveKind kind = kObjectives.at(a.objective);
    OracleBudget budget;
    budget.max_strategies = a.max_strategies;
    budget.max_product_states = a.product_cap;
    const auto v = parse_threshold(a.threshold, g0.dims());
    StateSet win;
    if (is_window(kind)) {
        ObjectiveSpec spec = ObjectiveSpec::window(kind, lmax_opt(a.lmax));
        spec.check(g0.dims());
        const GameStructure g = at_zero(g0, v);
        if (a.player == 2) {
            win = oracle_window_p2(g, spec, budget);
        } else {
            win = oracle_window(g, spec, budget);
        }
    } else {
        if (a.lmax > 0) throw InvalidInput("payoff objectives take no lmax");
        if (a.player == 2) throw InvalidInput("the P2 oracle handles fixed window kinds");
        win = oracle_classical(g0, kind, v.empty() ? Rational(0) : v[0], budget);
    }
    std::cout << states_line("winning:", g0, win);
    return 0;
}

struct CheckArgs {
    std::vector<std::string> suites;
    std::vector<std::string> files;
    long max_strategies = 1'000'000;
    long product_cap = 20'000;
    int jobs = 1;
};

int run_check(const CheckArgs& a) {
    testkit::CheckOptions opt;
    opt.budget.max_strategies = a.max_strategies;
    opt.budget.max_product_states = a.product_cap;
    opt.jobs = a.jobs;
    for (const auto& f : a.files) opt.planted.push_back(load_game(f));
    std::vector<std::string> names = a.suites;
    if (names.empty())
        for (const auto& [n, f] : testkit::suites()) names.push_back(n);
    std::cout << "# wmp check: " << testkit::kPrngVersion << "\n";
    bool ok = true;
    for (const auto& n : names) {
        auto r = testkit::run_suite(n, opt);
        ok = ok && r.pass;
        std::cout << testkit::format_suite(r) << std::flush;
    }
    return ok ? 0 : 1;
}

struct EvalArgs {
    std::string file, lasso, objective, threshold;
    int lmax = 0;
};

Lasso parse_lasso_text(const GameStructure& g, const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    std::vector<std::string> stem, cycle;
    int part = 0;
    while (in >> tok) {
        if (tok == "stem:") part = 1;
        else if (tok == "cycle:") part = 2;
        else if (part == 1) stem.push_back(tok);
        else if (part == 2) cycle.push_back(tok);
        else throw ParseError("lasso must start with 'stem:' or 'cycle:'", 1, 1);
    }
    if (cycle.empty()) throw InvalidInput("lasso cycle is empty");
    return lasso_from_ids(g, stem, cycle);
}

int run_eval(const EvalArgs& a) {
    GameStructure g0 = load_game(a.file);
    const ObjectiveKind kind = kObjectives.at(a.objective);
    const auto v = parse_threshold(a.threshold, g0.dims());
    ObjectiveSpec spec;
    GameStructure g = g0;
    if (is_window(kind)) {
        spec = ObjectiveSpec::window(kind, lmax_opt(a.lmax));
        g = at_zero(g0, v);
    } else {
        if (a.lmax > 0) throw InvalidInput("payoff objectives take no lmax");
        spec = ObjectiveSpec::payoff(kind, v);
    }
    Lasso l = parse_lasso_text(g, a.lasso);
    LassoVerdict r = eval_lasso(g, l, spec);
    std::cout << "holds: " << (r.holds ? "true" : "false") << "\n";
    if (!r.values.empty()) {
        std::cout << "value:";
        for (const auto& x : r.values) std::cout << " " << to_string(x);
        std::cout << "\n";
    }
    if (r.needed_lmax) std::cout << "needed_lmax: " << *r.needed_lmax << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wmp: window mean-payoff games"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    auto window_kinds = objective_names({"gw", "dfwmp", "fwmp", "dbwmp", "bwmp"});
    auto solve_kinds = objective_names({"gw", "dfwmp", "fwmp", "dbwmp", "bwmp", "mp", "tpsup"});
    auto all_kinds = objective_names({"gw", "dfwmp", "fwmp", "dbwmp", "bwmp", "mp", "mpinf", "mpsup", "tpinf", "tpsup"});

    SolveArgs solve_args;
    auto add_solve_flags = [&](CLI::App* c, const std::vector<std::string>& kinds) {
        c->add_option("--objective", solve_args.objective, "Objective")->required()->check(CLI::IsMember(kinds));
        c->add_option("--lmax", solve_args.lmax, "Window size")->check(CLI::PositiveNumber);
        c->add_option("--threshold", solve_args.threshold, "Threshold a/b per dimension, comma separated");
        c->add_flag("--require-init", solve_args.require_init, "Exit 1 unless the initial state is winning");
        c->add_option("--oracle-budget", solve_args.oracle_budget,
                      "Largest game solved by strategy enumeration (total-payoff backend)")
            ->check(CLI::PositiveNumber);
        c->add_option("--product-cap", solve_args.product_cap, "Window product state cap (default: WMP_PRODUCT_CAP or 5000000)")
            ->check(CLI::PositiveNumber);
        c->add_option("--jobs", solve_args.jobs, "Worker count (accepted; solvers run sequentially)")
            ->check(CLI::PositiveNumber);
        c->add_option("file", solve_args.file, "Game file")->required();
    };
    auto* solve_cmd = app.add_subcommand("solve", "Compute winning regions");
    add_solve_flags(solve_cmd, solve_kinds);
    auto* synth_cmd = app.add_subcommand("synth", "Synthesize a winning P1 strategy");
    add_solve_flags(synth_cmd, objective_names({"fwmp", "dfwmp", "bwmp"}));
    synth_cmd->add_option("-o,--out", solve_args.out, "Strategy output file (default: stdout)");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "Check a strategy against an objective");
    verify_cmd->add_option("file", verify_args.file, "Game file")->required();
    verify_cmd->add_option("strategy", verify_args.strat, "Strategy file")->required();
    verify_cmd->add_option("--objective", verify_args.objective, "Objective")->required()->check(CLI::IsMember(window_kinds));
    verify_cmd->add_option("--lmax", verify_args.lmax, "Window size")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--threshold", verify_args.threshold, "Threshold a/b per dimension");
    verify_cmd->add_option("--product-cap", verify_args.product_cap, "Product state cap")->check(CLI::PositiveNumber);

    ReduceArgs reduce_args;
    auto* reduce_cmd = app.add_subcommand("reduce", "Write the window product and its bad states");
    reduce_cmd->add_option("file", reduce_args.file, "Game file")->required();
    reduce_cmd->add_option("--lmax", reduce_args.lmax, "Window size")->required()->check(CLI::PositiveNumber);
    reduce_cmd->add_option("-o,--out", reduce_args.out, "Product game file")->required();
    reduce_cmd->add_option("--bad", reduce_args.bad, "Bad-state sidecar (default: OUT.bad)");
    reduce_cmd->add_option("--product-cap", reduce_args.product_cap, "Product state cap")->check(CLI::PositiveNumber);

    GenArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random game");
    gen_cmd->add_option("--states", gen_args.spec.states, "Number of states")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--dims", gen_args.spec.dims, "Dimensions")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--max-weight", gen_args.spec.max_abs_weight, "Largest absolute weight")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--min-out", gen_args.spec.min_out, "Least out-degree")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--max-out", gen_args.spec.max_out, "Largest out-degree")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--p2-fraction", gen_args.p2_fraction, "Probability that a state belongs to P2");
    gen_cmd->add_option("--seed", gen_args.spec.seed, "Seed");
    gen_cmd->add_option("-o,--out", gen_args.out, "Output file (default: stdout)");

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force winning region");
    oracle_cmd->add_option("file", oracle_args.file, "Game file")->required();
    oracle_cmd->add_option("--objective", oracle_args.objective, "Objective")->required()->check(CLI::IsMember(all_kinds));
    oracle_cmd->add_option("--lmax", oracle_args.lmax, "Window size")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--threshold", oracle_args.threshold, "Threshold a/b per dimension");
    oracle_cmd->add_option("--player", oracle_args.player, "Player whose region is printed")->check(CLI::IsMember({1, 2}));
    oracle_cmd->add_option("--oracle-budget", oracle_args.max_strategies, "Enumerated strategy budget")
        ->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--product-cap", oracle_args.product_cap, "Tracking graph state budget")
        ->check(CLI::PositiveNumber);

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Run the cross-check suites");
    check_cmd->add_option("--suite", check_args.suites, "Suite to run (repeatable; default: all)")
        ->allow_extra_args(false);
    check_cmd->add_option("files", check_args.files, "Extra games planted into the corpora");
    check_cmd->add_option("--oracle-budget", check_args.max_strategies, "Enumerated strategy budget")
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--product-cap", check_args.product_cap, "Oracle tracking graph budget")
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--jobs", check_args.jobs, "Worker count (accepted; suites run sequentially)")
        ->check(CLI::PositiveNumber);

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval-lasso", "Evaluate an objective on stem.cycle^omega");
    eval_cmd->add_option("file", eval_args.file, "Game file")->required();
    eval_cmd->add_option("--lasso", eval_args.lasso, "Play as 'stem: a b cycle: c d'")->required();
    eval_cmd->add_option("--objective", eval_args.objective, "Objective")->required()->check(CLI::IsMember(all_kinds));
    eval_cmd->add_option("--lmax", eval_args.lmax, "Window size")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--threshold", eval_args.threshold, "Threshold a/b per dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*solve_cmd) return run_solve(solve_args);
        if (*synth_cmd) return run_synth(solve_args);
        if (*verify_cmd) return run_verify(verify_args);
        if (*reduce_cmd) return run_reduce(reduce_args);
        if (*gen_cmd) return run_gen(gen_args);
        if (*oracle_cmd) return run_oracle(oracle_args);
        if (*check_cmd) return run_check(check_args);
        if (*eval_cmd) return run_eval(eval_args);
    } catch (const wmp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return 70;
}
