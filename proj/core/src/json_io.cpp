#include "graphrw/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "graphrw/canonical.hpp"
#include "graphrw/models.hpp"
#include "graphrw/rule.hpp"

namespace graphrw {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("json: " + what); }

const Json& need(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

std::vector<int> int_vec(const Json& j) {
    std::vector<int> out;
    for (const auto& x : j) out.push_back(x.get<int>());
    return out;
}

// root ⊎ N together with the inclusion of root.
Morphism extend_by(const GraphPtr& root, const GraphPtr& n) {
    Graph g(*root);
    int vbase = g.n_vertices();
    for (int v = 0; v < n->n_vertices(); ++v) g.add_vertex(n->vtype[v]);
    for (const auto& e : n->edges) {
        auto ends = e.ends;
        for (int& v : ends) v += vbase;
        g.add_edge(e.type, std::move(ends));
    }
    Morphism m;
    m.dom = root;
    m.cod = make_graph(std::move(g));
    for (int v = 0; v < root->n_vertices(); ++v) m.v.push_back(v);
    for (int e = 0; e < root->n_edges(); ++e) m.e.push_back(e);
    return m;
}

}  // namespace

Json type_graph_to_json(const TypeGraphPtr& t) {
    Json vts = Json::array();
    for (const auto& vt : t->vertex_types) vts.push_back(vt.name);
    Json ets = Json::array();
    for (const auto& et : t->edge_types) {
        Json ends = Json::array();
        for (int s : et.ends) ends.push_back(t->vertex_types[s].name);
        ets.push_back({{"name", et.name}, {"ends", ends}});
    }
    return {{"vertices", vts}, {"edges", ets}};
}

TypeGraphPtr type_graph_from_json(const Json& j) {
    auto t = std::make_shared<TypeGraph>();
    for (const auto& v : need(j, "vertices")) t->add_vertex_type(v.get<std::string>());
    for (const auto& e : need(j, "edges")) {
        std::vector<int> ends;
        for (const auto& s : need(e, "ends")) {
            int vt = t->vertex_type(s.get<std::string>());
            if (vt < 0) bad("unknown vertex type " + s.get<std::string>());
            ends.push_back(vt);
        }
        t->add_edge_type(need(e, "name").get<std::string>(), std::move(ends));
    }
    return t;
}

Json graph_to_json(const GraphPtr& g, bool with_types) {
    Json verts = Json::array();
    for (int v = 0; v < g->n_vertices(); ++v)
        verts.push_back({{"id", v}, {"type", g->types->vertex_types[g->vtype[v]].name}});
    Json edges = Json::array();
    for (int e = 0; e < g->n_edges(); ++e)
        edges.push_back({{"id", e},
                         {"type", g->types->edge_types[g->edges[e].type].name},
                         {"ends", g->edges[e].ends}});
    Json out{{"vertices", verts}, {"edges", edges}};
    if (with_types) out["types"] = type_graph_to_json(g->types);
    return out;
}

GraphPtr graph_from_json(const Json& j, const TypeGraphPtr& types) {
    TypeGraphPtr t = types;
    if (j.contains("types")) t = type_graph_from_json(j["types"]);
    if (!t) bad("graph without a type universe");
    Graph g(t);
    int idx = 0;
    for (const auto& v : need(j, "vertices")) {
        if (need(v, "id").get<int>() != idx++) bad("vertex ids must be dense and in order");
        int vt = t->vertex_type(need(v, "type").get<std::string>());
        if (vt < 0) bad("unknown vertex type " + v["type"].get<std::string>());
        g.add_vertex(vt);
    }
    idx = 0;
    for (const auto& e : need(j, "edges")) {
        if (need(e, "id").get<int>() != idx++) bad("edge ids must be dense and in order");
        int et = t->edge_type(need(e, "type").get<std::string>());
        if (et < 0) bad("unknown edge type " + e["type"].get<std::string>());
        g.add_edge(et, int_vec(need(e, "ends")));
    }
    std::string why;
    if (!g.validate(&why)) bad(why);
    return make_graph(std::move(g));
}

Json morphism_to_json(const Morphism& m, bool with_graphs) {
    Json out{{"v", m.v}, {"e", m.e}};
    if (with_graphs) {
        out["dom"] = graph_to_json(m.dom);
        out["cod"] = graph_to_json(m.cod);
    }
    return out;
}

Morphism morphism_from_json(const Json& j, const GraphPtr& dom, const GraphPtr& cod) {
    Morphism m;
    m.dom = dom;
    m.cod = cod;
    m.v = int_vec(need(j, "v"));
    m.e = int_vec(need(j, "e"));
    std::string why;
    if (!m.is_valid(&why)) bad("morphism: " + why);
    return m;
}

Json condition_to_json(const CondPtr& c, const GraphPtr& root) {
    if (!c || c->op == Condition::Op::True) return {{"op", "true"}};
    switch (c->op) {
        case Condition::Op::Exists: {
            Json out{{"op", "exists"},
                     {"mono", Json{{"cod", graph_to_json(c->mono.cod)},
                                   {"v", c->mono.v},
                                   {"e", c->mono.e}}}};
            if (c->sub && c->sub->op != Condition::Op::True)
                out["sub"] = condition_to_json(c->sub, c->mono.cod);
            return out;
        }
        case Condition::Op::Not:
            return {{"op", "not"}, {"sub", condition_to_json(c->sub, root)}};
        case Condition::Op::And: {
            Json subs = Json::array();
            for (const auto& ch : c->children) subs.push_back(condition_to_json(ch, root));
            return {{"op", "and"}, {"sub", subs}};
        }
        default:
            return {{"op", "true"}};
    }
}

CondPtr condition_from_json(const Json& j, const GraphPtr& root, const TypeGraphPtr& types) {
    if (j.contains("forbid")) {
        std::vector<CondPtr> atoms;
        for (const auto& n : j["forbid"])
            atoms.push_back(c_not(c_exists(extend_by(root, graph_from_json(n, types)))));
        return normalize(c_and(std::move(atoms)), root);
    }
    auto op = need(j, "op").get<std::string>();
    if (op == "true") return c_true();
    if (op == "false") return c_false();
    if (op == "exists") {
        const Json& mj = need(j, "mono");
        auto cod = graph_from_json(need(mj, "cod"), types);
        auto mono = morphism_from_json(mj, root, cod);
        if (!mono.is_mono()) bad("exists: map is not mono");
        CondPtr sub = j.contains("sub") ? condition_from_json(j["sub"], cod, types) : c_true();
        return c_exists(std::move(mono), std::move(sub));
    }
    if (op == "not") return c_not(condition_from_json(need(j, "sub"), root, types));
    if (op == "and") {
        std::vector<CondPtr> subs;
        for (const auto& s : need(j, "sub")) subs.push_back(condition_from_json(s, root, types));
        return c_and(std::move(subs));
    }
    bad("unknown condition op " + op);
}

Json rule_to_json(const Rule& r, bool with_types) {
    Json out{{"O", graph_to_json(rule_output(r), with_types)},
             {"K", graph_to_json(rule_context(r))},
             {"I", graph_to_json(rule_input(r))},
             {"o", Json{{"v", r.span.o.v}, {"e", r.span.o.e}}},
             {"i", Json{{"v", r.span.i.v}, {"e", r.span.i.e}}}};
    if (r.cond && !is_true(r.cond)) out["cond"] = condition_to_json(r.cond, rule_input(r));
    return out;
}

Rule rule_from_json(const Json& j, const TypeGraphPtr& types) {
    auto O = graph_from_json(need(j, "O"), types);
    auto K = graph_from_json(need(j, "K"), O->types);
    auto I = graph_from_json(need(j, "I"), O->types);
    Rule r;
    r.span.o = morphism_from_json(need(j, "o"), K, O);
    r.span.i = morphism_from_json(need(j, "i"), K, I);
    if (!r.span.o.is_mono() || !r.span.i.is_mono()) bad("rule legs must be mono");
    r.cond = j.contains("cond") ? condition_from_json(j["cond"], I, O->types) : c_true();
    return r;
}

Json element_to_json(const Element& a) {
    Json out = Json::array();
    for (const auto& [key, term] : a.terms)
        out.push_back({{"coeff", term.coeff.str()}, {"rule", rule_to_json(term.rule)}});
    return out;
}

Element element_from_json(const Json& j, const TypeGraphPtr& types) {
    Element out;
    for (const auto& t : j) {
        auto r = rule_from_json(need(t, "rule"), types);
        auto coeff = Rational::parse(need(t, "coeff").get<std::string>());
        out = sum(out, scale(delta(r), coeff));
    }
    return out;
}

Json composition_report_json(const std::vector<Composition>& comps) {
    Json out = Json::array();
    for (const auto& c : comps) {
        Json rec{{"overlap", Json{{"common", graph_to_json(c.mu.into_i2.dom)},
                                  {"into_input", morphism_to_json(c.mu.into_i2)},
                                  {"into_output", morphism_to_json(c.mu.into_o1)}}},
                 {"edge_reflecting", c.edge_reflecting},
                 {"verdict", c.verdict}};
        rec["composite"] = c.composite ? rule_to_json(*c.composite) : Json(nullptr);
        out.push_back(rec);
    }
    return out;
}

Json ode_system_to_json(const ODESystem& sys) {
    Json vars = Json::array();
    for (const auto& v : sys.variables)
        vars.push_back({{"name", v.name},
                        {"key", to_hex(v.key)},
                        {"observable", element_to_json(v.observable)}});
    Json eqs = Json::array();
    for (const auto& e : sys.equations) {
        Json terms = Json::object();
        for (const auto& [idx, k] : e.coeffs) terms[sys.variables[idx].name] = k.str();
        Json unresolved = Json::array();
        for (const auto& u : e.unresolved) unresolved.push_back(to_hex(u));
        eqs.push_back({{"constant", e.constant.str()}, {"terms", terms},
                       {"unresolved", unresolved}});
    }
    Json discovery = Json::array();
    for (const auto& d : sys.discovery) discovery.push_back(to_hex(d));
    return {{"variables", vars},
            {"equations", eqs},
            {"status", sys.status == ODESystem::Status::Closed ? "closed" : "non_closed"},
            {"discovery", discovery}};
}

namespace {

std::string render_rhs(const ODESystem& sys, const ODESystem::Equation& e,
                       const std::string& lw, const std::string& rw) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Rational& k, const std::string& var) {
        if (k.is_zero()) return;
        Rational a = k;
        if (first) {
            if (a.num < 0) { os << "-"; a = -a; }
        } else {
            os << (a.num < 0 ? " - " : " + ");
            if (a.num < 0) a = -a;
        }
        first = false;
        if (var.empty()) {
            os << a.str();
            return;
        }
        if (!(a.num == 1 && a.den == 1)) os << a.str() << " ";
        os << lw << var << rw;
    };
    emit(e.constant, "");
    for (const auto& [idx, k] : e.coeffs) emit(k, sys.variables[idx].name);
    if (first) os << "0";
    return os.str();
}

}  // namespace

std::string ode_system_text(const ODESystem& sys) {
    std::ostringstream os;
    for (size_t i = 0; i < sys.equations.size(); ++i) {
        os << "d<" << sys.variables[i].name << ">/dt = "
           << render_rhs(sys, sys.equations[i], "<", ">");
        if (!sys.equations[i].unresolved.empty())
            os << "  [+" << sys.equations[i].unresolved.size() << " unresolved]";
        os << "\n";
    }
    os << (sys.status == ODESystem::Status::Closed ? "closed" : "non-closed") << " system, "
       << sys.variables.size() << " variables\n";
    return os.str();
}

std::string ode_system_latex(const ODESystem& sys) {
    std::ostringstream os;
    os << "\\begin{aligned}\n";
    for (size_t i = 0; i < sys.equations.size(); ++i)
        os << "\\frac{d}{dt}\\langle " << sys.variables[i].name << "\\rangle &= "
           << render_rhs(sys, sys.equations[i], "\\langle ", "\\rangle") << "\\\\\n";
    os << "\\end{aligned}\n";
    return os.str();
}

std::string trajectory_csv(const Trajectory& tr) {
    std::ostringstream os;
    os << "t";
    for (const auto& n : tr.names) os << "," << n;
    os << "\n";
    os.precision(17);
    for (size_t i = 0; i < tr.t.size(); ++i) {
        os << tr.t[i];
        for (double v : tr.values[i]) os << "," << v;
        os << "\n";
    }
    return os.str();
}

std::string graph_to_dot(const GraphPtr& g, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (int v = 0; v < g->n_vertices(); ++v)
        os << "  v" << v << " [label=\"" << g->types->vertex_types[g->vtype[v]].name << "\"];\n";
    for (const auto& e : g->edges) {
        int a = e.ends.front(), b = e.ends.back();
        os << "  v" << a << " -- v" << b << " [label=\""
           << g->types->edge_types[e.type].name << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

Json kappa_model_to_json(const KappaModel& m) {
    Json agents = Json::array();
    for (const auto& a : m.agents) {
        Json sites = Json::array();
        for (const auto& s : a.sites) sites.push_back({{"name", s.name}, {"properties", s.properties}});
        agents.push_back({{"name", a.name}, {"sites", sites}});
    }
    Json bonds = Json::array();
    for (const auto& [a, b] : m.bonds) bonds.push_back(Json::array({a, b}));
    return {{"agents", agents}, {"bonds", bonds}};
}

KappaModel kappa_model_from_json(const Json& j) {
    KappaModel m;
    for (const auto& a : need(j, "agents")) {
        KappaModel::Agent ag;
        ag.name = need(a, "name").get<std::string>();
        for (const auto& s : need(a, "sites")) {
            KappaModel::Site st;
            st.name = need(s, "name").get<std::string>();
            if (s.contains("properties"))
                for (const auto& p : s["properties"]) st.properties.push_back(p.get<std::string>());
            ag.sites.push_back(std::move(st));
        }
        m.agents.push_back(std::move(ag));
    }
    if (j.contains("bonds"))
        for (const auto& b : j["bonds"])
            m.bonds.emplace_back(b.at(0).get<std::string>(), b.at(1).get<std::string>());
    return m;
}

Json chem_model_to_json(const ChemModel& m) {
    Json atoms = Json::array();
    for (const auto& a : m.atoms)
        atoms.push_back({{"name", a.name}, {"forbidden", a.forbidden}, {"permitted", a.permitted}});
    return {{"atoms", atoms}};
}

ChemModel chem_model_from_json(const Json& j) {
    ChemModel m;
    for (const auto& a : need(j, "atoms")) {
        ChemModel::Atom at;
        at.name = need(a, "name").get<std::string>();
        if (a.contains("forbidden"))
            for (const auto& p : a["forbidden"])
                at.forbidden.push_back(p.get<std::vector<std::string>>());
        if (a.contains("permitted"))
            for (const auto& p : a["permitted"])
                at.permitted.push_back(p.get<std::vector<std::string>>());
        m.atoms.push_back(std::move(at));
    }
    return m;
}

Workspace workspace_from_json(const Json& j) {
    Workspace w;
    std::vector<CondPtr> constraints;
    if (j.contains("kappa")) {
        auto k = kappa_compile(kappa_model_from_json(j["kappa"]));
        w.types = k.types;
        w.forbidden = k.forbidden;
        w.c_pos = k.c_pos;
        constraints.push_back(k.c_neg);
        for (const auto& nr : k.elementary) w.rules.emplace(nr.name, nr.rule);
    } else if (j.contains("chem")) {
        auto c = chem_compile(chem_model_from_json(j["chem"]));
        w.types = c.types;
        w.forbidden = c.forbidden;
        w.c_pos = c.c_pos;
        constraints.push_back(c.c_neg);
    } else {
        w.types = type_graph_from_json(need(j, "types"));
    }
    auto empty = empty_graph(w.types);
    if (j.contains("constraint")) {
        constraints.push_back(condition_from_json(j["constraint"], empty, w.types));
        if (j["constraint"].contains("forbid"))
            for (const auto& n : j["constraint"]["forbid"])
                w.forbidden.push_back(graph_from_json(n, w.types));
    }
    if (!constraints.empty())
        w.constraint = normalize(c_and(std::move(constraints)), empty);
    if (j.contains("semantics")) {
        auto s = j["semantics"].get<std::string>();
        if (s == "dpo") w.sem = Semantics::DPO;
        else if (s == "sqpo") w.sem = Semantics::SqPO;
        else bad("unknown semantics " + s);
    }
    if (j.contains("graphs"))
        for (const auto& [name, gj] : j["graphs"].items())
            w.graphs.emplace(name, graph_from_json(gj, w.types));
    if (j.contains("rules"))
        for (const auto& [name, rj] : j["rules"].items())
            w.rules.emplace(name, rule_from_json(rj, w.types));
    if (j.contains("observables"))
        for (const auto& [name, oj] : j["observables"].items()) {
            if (oj.is_array()) {
                w.observables.emplace(name, element_from_json(oj, w.types));
            } else {
                // graph shorthand, optionally {"pattern":…,"coeff":…,"cond":…}
                const Json& gj = oj.contains("pattern") ? oj["pattern"] : oj;
                auto g = graph_from_json(gj, w.types);
                CondPtr cond = oj.contains("cond")
                                   ? condition_from_json(oj["cond"], g, w.types)
                                   : c_true();
                auto el = delta(identity_rule(g, cond));
                if (oj.contains("coeff"))
                    el = scale(el, Rational::parse(oj["coeff"].get<std::string>()));
                w.observables.emplace(name, std::move(el));
            }
        }
    if (j.contains("transitions"))
        for (const auto& tj : j["transitions"]) {
            Transition t;
            t.rate = Rational::parse(need(tj, "rate").get<std::string>());
            const Json& rj = need(tj, "rule");
            if (rj.is_string()) {
                auto it = w.rules.find(rj.get<std::string>());
                if (it == w.rules.end()) bad("unknown rule " + rj.get<std::string>());
                t.rule = it->second;
            } else {
                t.rule = rule_from_json(rj, w.types);
            }
            w.transitions.push_back(std::move(t));
        }
    return w;
}

std::string find_fixture(const std::string& name) {
    namespace fs = std::filesystem;
    if (fs::exists(name)) return name;
    if (const char* env = std::getenv("GRAPHRW_FIXTURE_PATH")) {
        std::string paths(env);
        size_t pos = 0;
        while (pos <= paths.size()) {
            size_t next = paths.find(':', pos);
            std::string dir = paths.substr(pos, next == std::string::npos ? next : next - pos);
            if (!dir.empty()) {
                fs::path cand = fs::path(dir) / name;
                if (fs::exists(cand)) return cand.string();
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    }
    throw std::runtime_error("fixture not found: " + name);
}

Workspace load_workspace(const std::string& path) {
    std::ifstream in(find_fixture(path));
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j = Json::parse(in);
    return workspace_from_json(j);
}

}  // namespace graphrw
