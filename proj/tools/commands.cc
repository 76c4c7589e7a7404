// Copyright 2026 The optorep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "optorep/clusterbuild.h"
#include "optorep/envelope.h"
#include "optorep/errors.h"
#include "optorep/graphstate.h"
#include "optorep/optimizer.h"
#include "optorep/params.h"
#include "optorep/ratemodel.h"
#include "optorep/report.h"
#include "optorep/small_state.h"

namespace optorep::cli {

namespace {

using nlohmann::json;

double parse_number(const std::string &text, const std::string &key) {
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw ConfigError(key, "'" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw ConfigError(key, "'" + text + "' is not a number");
    }
    return v;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, sep)) {
        parts.push_back(cur);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

// Flags shared by every subcommand.
struct Common {
    std::string config_path;
    std::string out_path;
    double p_cn = 0.9;
    std::vector<std::pair<std::string, CLI::Option *>> override_opts;
    std::map<std::string, double> override_values;
};

void add_common(CLI::App *cmd, Common &c, bool with_pcn) {
    cmd->add_option("--config", c.config_path, "JSON device parameter file");
    cmd->add_option("-o,--out", c.out_path, "write output here instead of stdout");
    if (with_pcn) {
        cmd->add_option("--p-cn", c.p_cn, "probability all nodes build their clusters");
    }
    for (const char *name :
         {"alpha", "beta", "tau_f", "tau_s", "eta_c", "eta_sd", "c_f", "c_ch"}) {
        std::string flag = std::string("--") + name;
        std::replace(flag.begin(), flag.end(), '_', '-');
        auto *opt = cmd->add_option(flag, c.override_values[name], "override device field");
        c.override_opts.emplace_back(name, opt);
    }
}

DeviceParams resolve_device(const Common &c, std::ostream &err) {
    DeviceParams p;
    json merged = json::parse(device_params_to_json(p));
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) {
            throw ConfigError("config", "cannot read " + c.config_path);
        }
        std::stringstream buf;
        buf << in.rdbuf();
        p = device_params_from_json(buf.str(), &err);
        merged = json::parse(device_params_to_json(p));
    }
    for (const auto &[name, opt] : c.override_opts) {
        if (opt->count() > 0) {
            merged[name] = c.override_values.at(name);
        }
    }
    return device_params_from_json(merged.dump());
}

json base_config(const std::string &command, const DeviceParams &p) {
    json cfg;
    cfg["command"] = command;
    cfg["device"] = json::parse(device_params_to_json(p));
    return cfg;
}

void emit(const Common &c, const std::string &text, std::ostream &out) {
    if (c.out_path.empty()) {
        out << text;
    } else {
        write_file_atomic(c.out_path, text);
    }
}

std::string num(double v) {
    return format_number(v);
}

// ---- constants ----

struct ConstantsArgs {
    Common common;
    int m = 0;
    int k = 0;
};

int cmd_constants(const ConstantsArgs &a, std::ostream &out, std::ostream &err) {
    auto dev = resolve_device(a.common, err);
    auto d = derive_constants(dev);
    std::ostringstream os;
    os << "# config: " << base_config("constants", dev).dump() << "\n";
    os << "p_chip = " << num(d.p_chip) << "\n";
    os << "p_fib = " << num(d.p_fib) << "\n";
    os << "eta_ghz = " << num(d.eta_ghz) << "\n";
    os << "p_ghz = " << num(d.p_ghz) << "\n";
    os << "boosted_pair_factor = " << num(d.boosted_pair_factor) << "\n";
    os << "plain_pair_factor = " << num(d.plain_pair_factor) << "\n";
    if (a.m > 0 && a.k > 0) {
        auto co = chain_coefficients(d, a.m, a.k);
        os << "A = " << num(co.a_coeff) << "\n";
        os << "B = " << num(co.b_coeff) << "\n";
        os << "C = " << num(co.c_coeff) << "\n";
        os << "AB^2 = " << num(co.a_coeff * co.b_coeff * co.b_coeff) << "\n";
    } else if (a.m > 0 || a.k > 0) {
        throw ConfigError(a.m > 0 ? "k" : "m", "A, B, C need both --m and --k");
    }
    emit(a.common, os.str(), out);
    return exit_ok;
}

// ---- rate ----

struct RateArgs {
    Common common;
    int m = 4;
    std::string b = "7,3";
    std::string n = "56";
    std::string L = "1:600:1";
    std::string scheme = "new";
};

int cmd_rate(const RateArgs &a, std::ostream &out, std::ostream &err) {
    auto dev = resolve_device(a.common, err);
    auto consts = derive_constants(dev);
    auto tree = BranchingVector::parse(a.b);
    auto scheme = parse_scheme(a.scheme.c_str());
    auto ns = parse_int_list(a.n, "n");
    auto grid = parse_grid(a.L, "L");
    ChainModel model(consts, a.m, tree, scheme, a.common.p_cn);

    auto cfg = base_config("rate", dev);
    cfg["m"] = a.m;
    cfg["b"] = tree.branches();
    cfg["n"] = ns;
    cfg["L"] = a.L;
    cfg["scheme"] = scheme_name(scheme);
    cfg["p_cn"] = a.common.p_cn;
    std::ostringstream os;
    for (size_t i = 0; i < ns.size(); i++) {
        if (ns[i] < 1) {
            throw ConfigError("n", "node counts must be >= 1");
        }
        std::vector<RatePoint> pts;
        for (double L : grid) {
            pts.push_back({L, model.rate(L, ns[i]), ns[i]});
        }
        std::ostringstream block;
        write_rate_csv(block, cfg.dump(), pts, ns[i]);
        std::string text = block.str();
        if (i > 0) {
            // One preamble for the whole file.
            text = text.substr(text.find('\n', text.find('\n') + 1) + 1);
        }
        os << text;
    }
    emit(a.common, os.str(), out);
    return exit_ok;
}

// ---- envelope ----

struct EnvelopeArgs {
    Common common;
    int m = 4;
    std::string b = "7,3";
    std::string L = "1:600:1";
    std::string scheme = "new";
    int n_max = 1'000'000;
    std::string crossover = "lb";
};

int cmd_envelope(const EnvelopeArgs &a, std::ostream &out, std::ostream &err) {
    auto dev = resolve_device(a.common, err);
    auto consts = derive_constants(dev);
    auto tree = BranchingVector::parse(a.b);
    auto scheme = parse_scheme(a.scheme.c_str());
    auto grid = parse_grid(a.L, "L");
    if (a.crossover != "lb" && a.crossover != "numeric") {
        throw ConfigError("crossover", "must be 'lb' or 'numeric'");
    }
    ChainModel model(consts, a.m, tree, scheme, a.common.p_cn);
    NumericEnvelopeOptions opts;
    opts.n_max = a.n_max;
    if (opts.n_max < 1) {
        throw ConfigError("n-max", "must be >= 1");
    }
    auto env = numeric_envelope(model, grid, opts, &err);

    std::optional<EnvelopeParams> lb;
    if (scheme == Scheme::improved && tree.size() == 2) {
        lb = optimal_lb(a.m, tree, consts, a.common.p_cn);
    }
    bool from_lb = a.crossover == "lb";
    if (from_lb && !lb) {
        throw ConfigError("crossover",
                          "the analytic bound needs the new scheme and a depth-2 tree; use "
                          "--crossover numeric");
    }
    std::optional<double> xover;
    try {
        if (from_lb) {
            auto pts = lower_bound_points(*lb, grid, consts.alpha);
            xover = crossover_distance(pts, consts.alpha);
        } else {
            xover = crossover_distance(env.points, consts.alpha);
        }
    } catch (const InfeasibleError &) {
    }

    auto cfg = base_config("envelope", dev);
    cfg["m"] = a.m;
    cfg["b"] = tree.branches();
    cfg["L"] = a.L;
    cfg["scheme"] = scheme_name(scheme);
    cfg["p_cn"] = a.common.p_cn;
    cfg["n_max"] = a.n_max;
    cfg["crossover"] = a.crossover;
    std::ostringstream os;
    write_envelope_csv(os, cfg.dump(), env.points, lb ? &*lb : nullptr);
    os << "# crossover_km=" << (xover ? num(*xover) : std::string("none")) << "\n";
    emit(a.common, os.str(), out);
    return exit_ok;
}

// ---- resources ----

struct ResourcesArgs {
    Common common;
    int k = 7;
    int m = 4;
    int k_naive = 8;
    int m_naive = 8;
    int n = 250;
    double from = 1e3;
    double to = 1e13;
    int per_decade = 4;
    std::string method = "auto";
    int64_t trials = 100'000;
    uint64_t seed = 20260101;
    std::string naive_stage = "cascade";
    bool find_min = false;
};

int cmd_resources(const ResourcesArgs &a, std::ostream &out, std::ostream &err) {
    auto dev = resolve_device(a.common, err);
    auto consts = derive_constants(dev);
    if (!(a.from > 0 && a.to >= a.from) || a.per_decade < 1) {
        throw ConfigError("from", "need 0 < from <= to and per-decade >= 1");
    }
    if (a.n < 1) {
        throw ConfigError("n", "must be >= 1");
    }
    MinSourcesOptions opts;
    opts.method = parse_pc_method(a.method.c_str());
    opts.mc_trials = a.trials;
    opts.seed = a.seed;
    opts.naive_stage = parse_naive_final_stage(a.naive_stage.c_str());
    err << "seed: " << a.seed << "\n";

    std::vector<double> sources;
    const double decades = std::log10(a.to / a.from);
    const int steps = static_cast<int>(std::floor(decades * a.per_decade + 1e-9));
    for (int i = 0; i <= steps; i++) {
        sources.push_back(std::round(a.from * std::pow(10.0, static_cast<double>(i) / a.per_decade)));
    }
    std::vector<ResourceRow> rows;
    bool improved_saturated = false;
    bool naive_saturated = false;
    for (double ns : sources) {
        ResourceRow r;
        r.n_sources = ns;
        // Both curves are non-decreasing in the budget, so once a node always succeeds the rest
        // of the grid is 1.
        double pn = naive_saturated
                        ? 1.0
                        : node_success(ResourceScheme::naive, ns, a.k_naive, a.m_naive, consts, opts);
        double pi = improved_saturated
                        ? 1.0
                        : node_success(ResourceScheme::improved, ns, a.k, a.m, consts, opts);
        naive_saturated = naive_saturated || pn >= 1.0;
        improved_saturated = improved_saturated || pi >= 1.0 - 1e-15;
        r.p_cn_naive = pcn(std::clamp(pn, 0.0, 1.0), a.n);
        r.p_cn_improved = pcn(std::clamp(pi, 0.0, 1.0), a.n);
        rows.push_back(r);
    }

    auto cfg = base_config("resources", dev);
    cfg["k"] = a.k;
    cfg["m"] = a.m;
    cfg["k_naive"] = a.k_naive;
    cfg["m_naive"] = a.m_naive;
    cfg["n"] = a.n;
    cfg["from"] = a.from;
    cfg["to"] = a.to;
    cfg["per_decade"] = a.per_decade;
    cfg["method"] = a.method;
    cfg["trials"] = a.trials;
    cfg["seed"] = a.seed;
    cfg["naive_stage"] = a.naive_stage;
    std::ostringstream os;
    write_resources_csv(os, cfg.dump(), rows);
    if (a.find_min) {
        for (auto [scheme, k, m] : {std::tuple{ResourceScheme::improved, a.k, a.m},
                                    std::tuple{ResourceScheme::ghz_primitive, a.k, a.m},
                                    std::tuple{ResourceScheme::naive, a.k_naive, a.m_naive}}) {
            auto res = min_sources(scheme, k, m, a.n, a.common.p_cn, consts, opts);
            os << "# min_sources " << resource_scheme_name(scheme) << " k=" << k << " m=" << m
               << ": " << num(res.n_sources) << " (P_cn=" << num(res.p_cn) << ", method "
               << pc_method_name(res.method) << ")\n";
        }
    }
    emit(a.common, os.str(), out);
    return exit_ok;
}

// ---- optimize ----

struct OptimizeArgs {
    Common common;
    std::string k = "7,8,9,10";
    double L = 300;
    std::string scheme = "new";
    int m_max = 16;
    int entry_max = 16;
    int max_depth = 2;
    int top = 1;
    bool sources = false;
    std::string method = "auto";
    int64_t trials = 100'000;
    uint64_t seed = 20260101;
};

int cmd_optimize(const OptimizeArgs &a, std::ostream &out, std::ostream &err) {
    auto dev = resolve_device(a.common, err);
    auto consts = derive_constants(dev);
    auto ks = parse_int_list(a.k, "k");
    auto scheme = parse_scheme(a.scheme.c_str());
    if (a.top < 1) {
        throw ConfigError("top", "must be >= 1");
    }
    if (!(a.L >= 0)) {
        throw ConfigError("L", "range must be non-negative");
    }
    SearchBounds bounds;
    bounds.m_max = a.m_max;
    bounds.entry_max = a.entry_max;
    bounds.max_depth = a.max_depth;
    bounds.validate();
    MinSourcesOptions opts;
    opts.method = parse_pc_method(a.method.c_str());
    opts.mc_trials = a.trials;
    opts.seed = a.seed;
    if (a.sources) {
        err << "seed: " << a.seed << "\n";
    }

    std::vector<DesignPoint> rows;
    for (int k : ks) {
        auto ranked = rank_designs(k, a.L, scheme, consts, bounds, a.common.p_cn);
        if (ranked.empty()) {
            throw InfeasibleError("empty-feasible-set",
                                  "no design in the bounds needs k = " + std::to_string(k));
        }
        for (int i = 0; i < a.top && i < static_cast<int>(ranked.size()); i++) {
            auto d = ranked[static_cast<size_t>(i)];
            if (a.sources) {
                auto rs = scheme == Scheme::improved ? ResourceScheme::improved : ResourceScheme::naive;
                d.n_sources = min_sources(rs, k, d.m, d.n, a.common.p_cn, consts, opts).n_sources;
            }
            rows.push_back(std::move(d));
        }
    }
    auto cfg = base_config("optimize", dev);
    cfg["k"] = ks;
    cfg["L"] = a.L;
    cfg["scheme"] = scheme_name(scheme);
    cfg["m_max"] = a.m_max;
    cfg["entry_max"] = a.entry_max;
    cfg["max_depth"] = a.max_depth;
    cfg["top"] = a.top;
    cfg["p_cn"] = a.common.p_cn;
    if (a.sources) {
        cfg["method"] = a.method;
        cfg["trials"] = a.trials;
        cfg["seed"] = a.seed;
    }
    std::ostringstream os;
    write_design_csv(os, cfg.dump(), rows);
    emit(a.common, os.str(), out);
    return exit_ok;
}

// ---- verify ----

struct VerifyArgs {
    Common common;
    uint64_t seed = 7;
    int random_states = 100;
};

struct TableRow {
    std::string name;
    int cases;
    bool passed;
};

std::vector<TableRow> graph_checks() {
    std::vector<TableRow> rows;
    // Y on the centre of a star leaves a clique on the leaves.
    int star_cases = 0;
    bool star_ok = true;
    for (int size = 3; size <= 11; size++) {
        std::vector<int> leaves;
        for (int i = 1; i < size; i++) {
            leaves.push_back(i);
        }
        auto g = measure_graph(star_graph(0, leaves), 0, PauliBasis::Y);
        star_ok = star_ok && is_clique(g, std::set<int>(leaves.begin(), leaves.end())) &&
                  g.edge_count() == leaves.size() * (leaves.size() - 1) / 2;
        star_cases++;
    }
    rows.push_back({"Y on star centre leaves a clique (3-11 vertices)", star_cases, star_ok});

    // X on a physical qubit and on the root of an attached {3,2,2} tree joins the qubit's other
    // neighbours to the root's children.
    int tree_cases = 0;
    bool tree_ok = true;
    for (int others = 1; others <= 4; others++) {
        SimpleGraph g;
        std::set<int> outer;
        const int physical = others;
        g.add_vertex(physical);
        for (int i = 0; i < others; i++) {
            g.add_edge(i, physical);
            outer.insert(i);
        }
        const int root = attach_tree(g, physical, {3, 2, 2}, physical + 1);
        std::set<int> children;
        for (int c : g.neighbors(root)) {
            if (c != physical) {
                children.insert(c);
            }
        }
        auto h = measure_graph(measure_graph(g, physical, PauliBasis::X), root, PauliBasis::X);
        tree_ok = tree_ok && joins_completely(h, outer, children);
        tree_cases++;
    }
    rows.push_back({"X on qubit and tree root joins neighbourhoods ({3,2,2})", tree_cases, tree_ok});

    // Local complementation is an involution.
    SimpleGraph g{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {1, 4}};
    bool inv = true;
    for (int v : g.vertices()) {
        inv = inv && local_complement(local_complement(g, v), v) == g;
    }
    rows.push_back({"local complementation is an involution", static_cast<int>(g.vertex_count()), inv});
    return rows;
}

int cmd_verify(const VerifyArgs &a, std::ostream &out, std::ostream &err) {
    err << "seed: " << a.seed << "\n";
    auto report = verify_reordering_identities(a.seed, a.random_states);
    std::vector<TableRow> rows;
    for (const auto &c : report.checks) {
        rows.push_back({c.name, c.cases, c.passed()});
    }
    for (auto &r : graph_checks()) {
        rows.push_back(std::move(r));
    }
    size_t width = 5;
    for (const auto &r : rows) {
        width = std::max(width, r.name.size());
    }
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(width)) << "check" << "  cases  result\n";
    bool all = true;
    for (const auto &r : rows) {
        os << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::right
           << std::setw(5) << r.cases << "  " << (r.passed ? "PASS" : "FAIL") << "\n";
        all = all && r.passed;
    }
    os << (all ? "all checks passed\n" : "verification FAILED\n");
    emit(a.common, os.str(), out);
    return all ? exit_ok : exit_verification;
}

}  // namespace

std::vector<double> parse_grid(const std::string &text, const std::string &key) {
    if (text.empty()) {
        throw ConfigError(key, "empty grid");
    }
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw ConfigError(key, "range must be lo:hi:step");
        }
        double lo = parse_number(parts[0], key);
        double hi = parse_number(parts[1], key);
        double step = parse_number(parts[2], key);
        if (!(step > 0) || hi < lo) {
            throw ConfigError(key, "range needs step > 0 and hi >= lo");
        }
        const double count = std::floor((hi - lo) / step + 1e-9) + 1;
        if (count > 1e7) {
            throw ConfigError(key, "range has too many points");
        }
        for (int64_t i = 0; i < static_cast<int64_t>(count); i++) {
            out.push_back(lo + static_cast<double>(i) * step);
        }
    } else {
        for (const auto &p : split(text, ',')) {
            out.push_back(parse_number(p, key));
        }
    }
    for (double v : out) {
        if (v < 0) {
            throw ConfigError(key, "values must be non-negative");
        }
    }
    for (size_t i = 1; i < out.size(); i++) {
        if (!(out[i] > out[i - 1])) {
            throw ConfigError(key, "values must be strictly increasing");
        }
    }
    return out;
}

std::vector<int> parse_int_list(const std::string &text, const std::string &key) {
    std::vector<int> out;
    for (const auto &p : split(text, ',')) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(p, &used);
        } catch (const std::exception &) {
            throw ConfigError(key, "'" + p + "' is not an integer");
        }
        if (used != p.size()) {
            throw ConfigError(key, "'" + p + "' is not an integer");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw ConfigError(key, "empty list");
    }
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Repeater-chain key rate and resource calculator", "optorep"};
    app.require_subcommand(1);

    ConstantsArgs constants;
    auto *c_cmd = app.add_subcommand("constants", "derived device constants and A, B, C");
    add_common(c_cmd, constants.common, false);
    c_cmd->add_option("--m", constants.m, "qubit channels per side");
    c_cmd->add_option("--k", constants.k, "fusion steps");

    RateArgs rate;
    auto *r_cmd = app.add_subcommand("rate", "key rate at fixed node counts over a range grid");
    add_common(r_cmd, rate.common, true);
    r_cmd->add_option("--m", rate.m, "qubit channels per side")->capture_default_str();
    r_cmd->add_option("--b", rate.b, "branching vector, e.g. 7,3")->capture_default_str();
    r_cmd->add_option("--n", rate.n, "node count(s), comma separated")->capture_default_str();
    r_cmd->add_option("--L", rate.L, "range grid in km, lo:hi:step or list")->capture_default_str();
    r_cmd->add_option("--scheme", rate.scheme, "new | naive")->capture_default_str();

    EnvelopeArgs envelope;
    auto *e_cmd = app.add_subcommand("envelope", "rate envelope over n and the analytic bound");
    add_common(e_cmd, envelope.common, true);
    e_cmd->add_option("--m", envelope.m, "qubit channels per side")->capture_default_str();
    e_cmd->add_option("--b", envelope.b, "branching vector")->capture_default_str();
    e_cmd->add_option("--L", envelope.L, "range grid in km")->capture_default_str();
    e_cmd->add_option("--scheme", envelope.scheme, "new | naive")->capture_default_str();
    e_cmd->add_option("--n-max", envelope.n_max, "largest node count scanned")->capture_default_str();
    e_cmd->add_option("--crossover", envelope.crossover, "lb | numeric")->capture_default_str();

    ResourcesArgs resources;
    auto *s_cmd = app.add_subcommand("resources", "P_cn against source count for both schemes");
    add_common(s_cmd, resources.common, true);
    s_cmd->add_option("--k", resources.k, "fusion steps, banked scheme")->capture_default_str();
    s_cmd->add_option("--m", resources.m, "channels, banked scheme")->capture_default_str();
    s_cmd->add_option("--k-naive", resources.k_naive, "fusion steps, naive scheme")->capture_default_str();
    s_cmd->add_option("--m-naive", resources.m_naive, "channels, naive scheme")->capture_default_str();
    s_cmd->add_option("--n", resources.n, "major nodes in the chain")->capture_default_str();
    s_cmd->add_option("--from", resources.from, "smallest source count")->capture_default_str();
    s_cmd->add_option("--to", resources.to, "largest source count")->capture_default_str();
    s_cmd->add_option("--per-decade", resources.per_decade, "grid points per decade")->capture_default_str();
    s_cmd->add_option("--method", resources.method, "auto | exact | mc")->capture_default_str();
    s_cmd->add_option("--trials", resources.trials, "Monte Carlo trials")->capture_default_str();
    s_cmd->add_option("--seed", resources.seed, "Monte Carlo seed")->capture_default_str();
    s_cmd->add_option("--naive-stage", resources.naive_stage, "cascade | last-pair | printed")
        ->capture_default_str();
    s_cmd->add_flag("--min", resources.find_min, "also report the minimum source counts");

    OptimizeArgs optimize;
    auto *o_cmd = app.add_subcommand("optimize", "best (m, b, n) per fusion budget k");
    add_common(o_cmd, optimize.common, true);
    o_cmd->add_option("--k", optimize.k, "fusion budgets, comma separated")->capture_default_str();
    o_cmd->add_option("--L", optimize.L, "range in km")->capture_default_str();
    o_cmd->add_option("--scheme", optimize.scheme, "new | naive")->capture_default_str();
    o_cmd->add_option("--m-max", optimize.m_max, "largest m searched")->capture_default_str();
    o_cmd->add_option("--entry-max", optimize.entry_max, "largest branching entry")->capture_default_str();
    o_cmd->add_option("--max-depth", optimize.max_depth, "deepest tree searched")->capture_default_str();
    o_cmd->add_option("--top", optimize.top, "rows per k")->capture_default_str();
    o_cmd->add_flag("--sources", optimize.sources, "add minimum source counts");
    o_cmd->add_option("--method", optimize.method, "auto | exact | mc")->capture_default_str();
    o_cmd->add_option("--trials", optimize.trials, "Monte Carlo trials")->capture_default_str();
    o_cmd->add_option("--seed", optimize.seed, "Monte Carlo seed")->capture_default_str();

    VerifyArgs verify;
    auto *v_cmd = app.add_subcommand("verify", "measurement identities and graph rules");
    v_cmd->add_option("-o,--out", verify.common.out_path, "write output here instead of stdout");
    v_cmd->add_option("--seed", verify.seed, "seed for the random states")->capture_default_str();
    v_cmd->add_option("--random-states", verify.random_states, "random two-qubit inputs")
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error: config: " << msg << "\n";
        return exit_config;
    }

    try {
        if (*c_cmd) {
            return cmd_constants(constants, out, err);
        }
        if (*r_cmd) {
            return cmd_rate(rate, out, err);
        }
        if (*e_cmd) {
            return cmd_envelope(envelope, out, err);
        }
        if (*s_cmd) {
            return cmd_resources(resources, out, err);
        }
        if (*o_cmd) {
            return cmd_optimize(optimize, out, err);
        }
        if (*v_cmd) {
            return cmd_verify(verify, out, err);
        }
    } catch (const ConfigError &e) {
        err << "error: config: " << e.what() << "\n";
        return exit_config;
    } catch (const InfeasibleError &e) {
        err << "error: infeasible: " << e.what() << "\n";
        return exit_infeasible;
    }
    return exit_config;
}

}  // namespace optorep::cli
