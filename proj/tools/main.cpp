#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphrw/canonical.hpp"
#include "graphrw/json_io.hpp"
#include "graphrw/match.hpp"

using namespace graphrw;

namespace {

// Exit codes: 0 success, 1 malformed input, 2 semantic rejection.
struct Rejection : std::runtime_error {
    Json detail;
    explicit Rejection(Json d) : std::runtime_error("rejected"), detail(std::move(d)) {}
};

struct Common {
    std::string model;
    std::string sem;
    bool pretty = false;
    int threads = 0;  // hint only; library internals decide
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("-m,--model", c.model, "workspace JSON file")->required();
    cmd->add_option("--sem", c.sem, "semantics override: dpo|sqpo")
        ->check(CLI::IsMember({"dpo", "sqpo"}));
    cmd->add_flag("--pretty", c.pretty, "human-oriented rendering");
    cmd->add_option("--threads", c.threads, "parallelism hint");
}

Workspace open(const Common& c, Semantics* sem) {
    auto w = load_workspace(c.model);
    *sem = w.sem;
    if (c.sem == "dpo") *sem = Semantics::DPO;
    if (c.sem == "sqpo") *sem = Semantics::SqPO;
    return w;
}

void emit(const Json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

const Rule& named_rule(const Workspace& w, const std::string& name) {
    auto it = w.rules.find(name);
    if (it == w.rules.end()) throw std::invalid_argument("unknown rule: " + name);
    return it->second;
}

const GraphPtr& named_graph(const Workspace& w, const std::string& name) {
    auto it = w.graphs.find(name);
    if (it == w.graphs.end()) throw std::invalid_argument("unknown graph: " + name);
    return it->second;
}

// Observables and rules share a namespace on the command line; a bare
// rule name stands for its one-term element.
Element named_element(const Workspace& w, const std::string& name) {
    auto it = w.observables.find(name);
    if (it != w.observables.end()) return it->second;
    return delta(named_rule(w, name));
}

OverlapMode parse_mode(const std::string& s) {
    if (s == "full") return OverlapMode::Full;
    if (s == "restricted") return OverlapMode::Restricted;
    if (s == "edge-reflecting") return OverlapMode::EdgeReflecting;
    throw std::invalid_argument("unknown mode: " + s);
}

bool occurs_in(const GraphPtr& pattern, const GraphPtr& host) {
    MonoSearch opt;
    opt.limit = 1;
    return !enumerate_monos(pattern, host, opt).empty();
}

std::vector<Element> split_seeds(const Workspace& w, const std::string& spec) {
    std::vector<Element> out;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t next = spec.find(',', pos);
        auto name = spec.substr(pos, next == std::string::npos ? next : next - pos);
        if (!name.empty()) out.push_back(named_element(w, name));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty observable list");
    return out;
}

int cmd_match(const Common& c, const std::string& rname, const std::string& gname) {
    Semantics sem;
    auto w = open(c, &sem);
    auto ms = admissible_matches(named_rule(w, rname), named_graph(w, gname), sem);
    Json arr = Json::array();
    for (const auto& m : ms) arr.push_back(morphism_to_json(m));
    emit({{"count", ms.size()}, {"matches", arr}}, c.pretty);
    return 0;
}

int cmd_apply(const Common& c, const std::string& rname, const std::string& gname,
              int which, bool dot) {
    Semantics sem;
    auto w = open(c, &sem);
    const auto& r = named_rule(w, rname);
    auto ms = admissible_matches(r, named_graph(w, gname), sem);
    if (which >= 0) {
        if (which >= static_cast<int>(ms.size()))
            throw std::invalid_argument("match index out of range");
        ms = {ms[static_cast<size_t>(which)]};
    }
    Json arr = Json::array();
    int n = 0;
    for (const auto& m : ms) {
        auto d = direct_derivation(r, m, sem);
        if (!d) continue;
        if (dot)
            std::cout << graph_to_dot(d->result, "result" + std::to_string(n++));
        else
            arr.push_back(graph_to_json(d->result));
    }
    if (!dot) emit({{"count", arr.size()}, {"results", arr}}, c.pretty);
    return 0;
}

int cmd_compose(const Common& c, const std::string& r2name, const std::string& r1name,
                const std::string& mode_s, bool nonempty, bool valid_interfaces,
                const std::vector<std::string>& forbid_names, bool with_report) {
    Semantics sem;
    auto w = open(c, &sem);
    auto mode = parse_mode(mode_s);
    std::vector<GraphPtr> filters;
    if (valid_interfaces) filters = w.forbidden;
    for (const auto& n : forbid_names) filters.push_back(named_graph(w, n));

    auto comps = enumerate_compositions(named_rule(w, r2name), named_rule(w, r1name), sem,
                                        mode, w.constraint);
    size_t enumerated = comps.size();
    std::vector<Composition> accepted;
    for (auto& cp : comps) {
        if (!cp.composite) continue;
        if (nonempty && cp.mu.into_i2.dom->n_vertices() == 0) continue;
        bool drop = false;
        for (const auto& pat : filters)
            if (occurs_in(pat, rule_input(*cp.composite)) ||
                occurs_in(pat, rule_output(*cp.composite))) {
                drop = true;
                break;
            }
        if (!drop) accepted.push_back(std::move(cp));
    }
    Element el;
    for (const auto& cp : accepted) el = sum(el, delta(*cp.composite));
    Json out{{"enumerated", enumerated},
             {"accepted", accepted.size()},
             {"classes", el.terms.size()},
             {"element", element_to_json(el)}};
    if (with_report) out["report"] = composition_report_json(accepted);
    emit(out, c.pretty);
    return 0;
}

int cmd_commutator(const Common& c, const std::string& a_name, const std::string& b_name,
                   const std::string& mode_s) {
    Semantics sem;
    auto w = open(c, &sem);
    auto mode = parse_mode(mode_s);
    auto el = commutator(named_element(w, a_name), named_element(w, b_name), sem, mode,
                         w.constraint);
    emit({{"classes", el.terms.size()},
          {"element", element_to_json(el)},
          {"warnings", el.warnings}},
         c.pretty);
    return 0;
}

int cmd_complete(const Common& c, const std::string& rname, bool guaranteeing) {
    Semantics sem;
    auto w = open(c, &sem);
    if (!w.constraint) throw std::invalid_argument("workspace has no constraint");
    const auto& r = named_rule(w, rname);
    auto done = guaranteeing ? complete_guaranteeing(r, w.constraint)
                             : complete_preserving(r, w.constraint);
    if (is_false(done.cond))
        throw Rejection({{"error", "completed condition is unsatisfiable"},
                         {"rule", rname},
                         {"variant", guaranteeing ? "guaranteeing" : "preserving"}});
    emit({{"rule", rule_to_json(done)}}, c.pretty);
    return 0;
}

int cmd_odes(const Common& c, const std::string& seeds_s, int order, int budget,
             bool do_integrate, double t_end, double dt, const std::string& init_s,
             bool latex) {
    Semantics sem;
    auto w = open(c, &sem);
    if (w.transitions.empty()) throw std::invalid_argument("workspace has no transitions");
    auto g = build_generator(w.transitions, sem, w.constraint);
    auto seeds = split_seeds(w, seeds_s);
    auto sys = order > 1 ? moment_odes(g, seeds, order, budget)
                         : derive_mean_odes(g, seeds, budget);
    if (do_integrate) {
        if (sys.status != ODESystem::Status::Closed)
            throw Rejection({{"error", "cannot integrate a non-closed system"},
                             {"system", ode_system_to_json(sys)}});
        std::vector<double> init(sys.variables.size(), 0.0);
        if (!init_s.empty()) {
            size_t pos = 0, k = 0;
            while (pos <= init_s.size() && k < init.size()) {
                size_t next = init_s.find(',', pos);
                init[k++] = std::stod(init_s.substr(pos, next - pos));
                if (next == std::string::npos) break;
                pos = next + 1;
            }
        }
        std::cout << trajectory_csv(integrate(sys, init, t_end, dt));
        return 0;
    }
    if (latex)
        std::cout << ode_system_latex(sys);
    else if (c.pretty)
        std::cout << ode_system_text(sys);
    else
        emit(ode_system_to_json(sys), false);
    return 0;
}

int cmd_simulate(const Common& c, const std::string& gname, const std::string& obs_s,
                 std::uint64_t seed, double t_end, int runs) {
    Semantics sem;
    auto w = open(c, &sem);
    if (w.transitions.empty()) throw std::invalid_argument("workspace has no transitions");
    auto x0 = named_graph(w, gname);
    std::vector<Element> obs;
    std::vector<std::string> names;
    if (!obs_s.empty()) {
        size_t pos = 0;
        while (pos <= obs_s.size()) {
            size_t next = obs_s.find(',', pos);
            auto name = obs_s.substr(pos, next == std::string::npos ? next : next - pos);
            if (!name.empty()) {
                obs.push_back(named_element(w, name));
                names.push_back(name);
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    }
    if (runs <= 1) {
        auto tr = ssa_simulate(w.transitions, x0, t_end, seed, obs, sem, w.constraint);
        tr.names = names;
        std::cout << trajectory_csv(tr);
        if (tr.constraint_violated)
            throw Rejection(Json{{"error", "trajectory left the constrained state space"}});
        return 0;
    }
    // Multi-run summary: sample mean and standard error of each
    // observable's final value.
    std::vector<double> s1(obs.size(), 0.0), s2(obs.size(), 0.0);
    int absorbed = 0, violated = 0;
    for (int k = 0; k < runs; ++k) {
        auto tr = ssa_simulate(w.transitions, x0, t_end, seed + static_cast<std::uint64_t>(k),
                               obs, sem, w.constraint);
        if (tr.absorbed) ++absorbed;
        if (tr.constraint_violated) ++violated;
        const auto& last = tr.values.back();
        for (size_t i = 0; i < obs.size(); ++i) {
            s1[i] += last[i];
            s2[i] += last[i] * last[i];
        }
    }
    Json mean = Json::array(), stderr_ = Json::array();
    for (size_t i = 0; i < obs.size(); ++i) {
        double m = s1[i] / runs;
        double var = (s2[i] / runs - m * m) * runs / (runs - 1.0);
        mean.push_back(m);
        stderr_.push_back(std::sqrt(var > 0 ? var / runs : 0.0));
    }
    emit({{"runs", runs},
          {"t_end", t_end},
          {"observables", names},
          {"mean", mean},
          {"stderr", stderr_},
          {"absorbed", absorbed},
          {"constraint_violations", violated}},
         c.pretty);
    if (violated > 0)
        throw Rejection({{"error", "trajectories left the constrained state space"},
                         {"count", violated}});
    return 0;
}

int cmd_validate(const Common& c, std::vector<std::string> names) {
    Semantics sem;
    auto w = open(c, &sem);
    if (names.empty())
        for (const auto& [n, g] : w.graphs) names.push_back(n);
    Json out = Json::object();
    bool all_ok = true;
    for (const auto& n : names) {
        auto v = validate_state(named_graph(w, n), w.forbidden, w.c_pos);
        Json viols = Json::array();
        for (const auto& viol : v.violations)
            viols.push_back({{"what", viol.what}, {"vertices", viol.vertices}});
        out[n] = {{"ok", v.ok}, {"violations", viols}};
        all_ok = all_ok && v.ok;
    }
    emit(out, c.pretty);
    if (!all_ok) throw Rejection({{"error", "invalid states"}, {"verdicts", out}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"typed-multigraph rewriting, rule algebra and CTMC toolkit"};
    app.require_subcommand(1);

    Common c;
    std::string rname, gname, r1name, r2name, a_name, b_name;
    std::string mode_s = "full";
    std::string seeds_s, obs_s, init_s;
    std::vector<std::string> val_names, forbid_names;
    bool nonempty = false, valid_interfaces = false, with_report = false, dot = false;
    bool guaranteeing = false, preserving = false, do_integrate = false, latex = false;
    int which = -1, order = 1, budget = 64, runs = 1;
    double t_end = 1.0, dt = 1e-3;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto* m = app.add_subcommand("match", "count and list admissible matches of a rule");
    add_common(m, c);
    m->add_option("rule", rname)->required();
    m->add_option("graph", gname)->required();

    auto* ap = app.add_subcommand("apply", "apply a rule at its admissible matches");
    add_common(ap, c);
    ap->add_option("rule", rname)->required();
    ap->add_option("graph", gname)->required();
    ap->add_option("--match", which, "apply only the k-th match");
    ap->add_flag("--dot", dot, "emit results as DOT instead of JSON");

    auto* co = app.add_subcommand("compose", "enumerate compositions of two rules");
    add_common(co, c);
    co->add_option("r2", r2name, "later rule")->required();
    co->add_option("r1", r1name, "earlier rule")->required();
    co->add_option("--mode", mode_s)->check(CLI::IsMember({"full", "restricted", "edge-reflecting"}));
    co->add_flag("--nonempty", nonempty, "drop the empty-overlap composition");
    co->add_flag("--valid-interfaces", valid_interfaces,
                 "drop composites whose interfaces contain a forbidden pattern");
    co->add_option("--forbid-interfaces", forbid_names,
                   "drop composites whose interfaces contain these workspace graphs")
        ->delimiter(',');
    co->add_flag("--report", with_report, "include the per-overlap report");

    auto* cm = app.add_subcommand("commutator", "commutator of two elements");
    add_common(cm, c);
    cm->add_option("a", a_name)->required();
    cm->add_option("b", b_name)->required();
    cm->add_option("--mode", mode_s)->check(CLI::IsMember({"full", "restricted", "edge-reflecting"}));

    auto* cp = app.add_subcommand("complete", "constraint completion of a rule's condition");
    add_common(cp, c);
    cp->add_option("rule", rname)->required();
    cp->add_flag("--preserving", preserving);
    cp->add_flag("--guaranteeing", guaranteeing);

    auto* od = app.add_subcommand("odes", "derive (and optionally integrate) moment ODEs");
    add_common(od, c);
    od->add_option("--seeds", seeds_s, "comma-separated observable names")->required();
    od->add_option("--order", order, "moment order");
    od->add_option("--budget", budget, "observable-discovery budget");
    od->add_flag("--integrate", do_integrate);
    od->add_option("--t-end", t_end);
    od->add_option("--dt", dt);
    od->add_option("--init", init_s, "comma-separated initial values");
    od->add_flag("--latex", latex);

    auto* si = app.add_subcommand("simulate", "stochastic simulation of the transition system");
    add_common(si, c);
    si->add_option("graph", gname, "initial state")->required();
    si->add_option("--seed", seed)->required();
    si->add_option("--t-end", t_end)->required();
    si->add_option("--observables", obs_s, "comma-separated observable names");
    si->add_option("--runs", runs, "summarize this many runs (seeds seed..seed+runs-1)");

    auto* va = app.add_subcommand("validate", "check states against the model constraints");
    add_common(va, c);
    va->add_option("graphs", val_names, "workspace graph names (default: all)");

    CLI11_PARSE(app, argc, argv);
    (void)seed_given;

    try {
        if (m->parsed()) return cmd_match(c, rname, gname);
        if (ap->parsed()) return cmd_apply(c, rname, gname, which, dot);
        if (co->parsed())
            return cmd_compose(c, r2name, r1name, mode_s, nonempty, valid_interfaces,
                               forbid_names, with_report);
        if (cm->parsed()) return cmd_commutator(c, a_name, b_name, mode_s);
        if (cp->parsed()) {
            if (preserving == guaranteeing)
                throw std::invalid_argument("pass exactly one of --preserving / --guaranteeing");
            return cmd_complete(c, rname, guaranteeing);
        }
        if (od->parsed())
            return cmd_odes(c, seeds_s, order, budget, do_integrate, t_end, dt, init_s, latex);
        if (si->parsed()) return cmd_simulate(c, gname, obs_s, seed, t_end, runs);
        if (va->parsed()) return cmd_validate(c, val_names);
    } catch (const Rejection& r) {
        std::cerr << r.detail.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
