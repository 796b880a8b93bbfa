#include <algorithm>
#include <set>
#include <stdexcept>

#include "graphrw/canonical.hpp"
#include "graphrw/models.hpp"

namespace graphrw {

namespace {

std::string link_name(const std::string& a, const std::string& b) {
    return a <= b ? a + "-" + b : b + "-" + a;
}

struct SiteInfo {
    std::string agent;
    std::vector<std::string> properties;
};

// Deterministic layout of a fully specified agent: agent vertex 0, site i
// at vertex i+1 with its incidence edge at index i, property loops after.
GraphPtr agent_instance(const TypeGraphPtr& t, const KappaModel::Agent& a,
                        const std::vector<int>& choice) {
    Graph g(t);
    int av = g.add_vertex(t->vertex_type(a.name));
    std::vector<int> sv;
    for (const auto& s : a.sites) {
        int v = g.add_vertex(t->vertex_type(s.name));
        g.add_edge(t->edge_type(s.name + "@" + a.name), {av, v});
        sv.push_back(v);
    }
    for (size_t i = 0; i < a.sites.size(); ++i)
        if (choice[i] >= 0)
            g.add_edge(t->edge_type(a.sites[i].name + "." + a.sites[i].properties[choice[i]]),
                       {sv[i]});
    return make_graph(std::move(g));
}

GraphPtr disjoint_union_of(const TypeGraphPtr& t, const std::vector<GraphPtr>& parts) {
    Graph g(t);
    for (const auto& p : parts) {
        int base = g.n_vertices();
        for (int v = 0; v < p->n_vertices(); ++v) g.add_vertex(p->vtype[v]);
        for (const auto& e : p->edges) {
            auto ends = e.ends;
            for (int& v : ends) v += base;
            g.add_edge(e.type, std::move(ends));
        }
    }
    return make_graph(std::move(g));
}

}  // namespace

CompiledKappa kappa_compile(const KappaModel& m) {
    CompiledKappa out;
    out.model = m;

    std::map<std::string, SiteInfo> sites;
    std::set<std::string> agent_names;
    for (const auto& a : m.agents) {
        if (!agent_names.insert(a.name).second)
            throw std::invalid_argument("kappa_compile: duplicate agent " + a.name);
        for (const auto& s : a.sites) {
            if (sites.count(s.name) || agent_names.count(s.name))
                throw std::invalid_argument("kappa_compile: duplicate site " + s.name);
            std::set<std::string> props(s.properties.begin(), s.properties.end());
            if (props.size() != s.properties.size())
                throw std::invalid_argument("kappa_compile: duplicate property on " + s.name);
            sites.emplace(s.name, SiteInfo{a.name, s.properties});
        }
    }
    std::set<std::pair<std::string, std::string>> bonds;
    for (auto [s, t] : m.bonds) {
        if (!sites.count(s) || !sites.count(t))
            throw std::invalid_argument("kappa_compile: bond on undeclared site");
        if (t < s) std::swap(s, t);
        if (!bonds.emplace(s, t).second)
            throw std::invalid_argument("kappa_compile: duplicate bond " + s + "-" + t);
    }

    auto tg = std::make_shared<TypeGraph>();
    for (const auto& a : m.agents) tg->add_vertex_type(a.name);
    for (const auto& a : m.agents)
        for (const auto& s : a.sites) tg->add_vertex_type(s.name);
    for (const auto& a : m.agents)
        for (const auto& s : a.sites)
            tg->add_edge_type(s.name + "@" + a.name,
                              {tg->vertex_type(a.name), tg->vertex_type(s.name)});
    for (const auto& a : m.agents)
        for (const auto& s : a.sites)
            for (const auto& p : s.properties)
                tg->add_edge_type(s.name + "." + p, {tg->vertex_type(s.name)});
    for (const auto& [s, t] : bonds)
        tg->add_edge_type(link_name(s, t), {tg->vertex_type(s), tg->vertex_type(t)});
    out.types = tg;

    // Forbidden patterns. First, any two parallel edges with the same
    // endpoint typing (covers duplicate incidences, duplicate links, and
    // multiple or conflicting property loops on one site).
    const int n_et = static_cast<int>(tg->edge_types.size());
    for (int i = 0; i < n_et; ++i)
        for (int j = i; j < n_et; ++j) {
            if (tg->edge_types[i].ends != tg->edge_types[j].ends) continue;
            Graph g(tg);
            std::vector<int> vs;
            for (int t : tg->edge_types[i].ends) vs.push_back(g.add_vertex(t));
            g.add_edge(i, vs);
            g.add_edge(j, vs);
            out.forbidden.push_back(make_graph(std::move(g)));
        }
    // A site bound twice (two link edges at one centre site).
    for (const auto& [sname, info] : sites) {
        std::vector<std::string> partners;
        for (const auto& [a, b] : bonds) {
            if (a == sname) partners.push_back(b);
            if (b == sname && a != sname) partners.push_back(a);
        }
        std::sort(partners.begin(), partners.end());
        for (size_t i = 0; i < partners.size(); ++i)
            for (size_t j = i; j < partners.size(); ++j) {
                Graph g(tg);
                int c = g.add_vertex(tg->vertex_type(sname));
                int u = g.add_vertex(tg->vertex_type(partners[i]));
                int v = g.add_vertex(tg->vertex_type(partners[j]));
                g.add_edge(tg->edge_type(link_name(sname, partners[i])), {c, u});
                g.add_edge(tg->edge_type(link_name(sname, partners[j])), {c, v});
                out.forbidden.push_back(make_graph(std::move(g)));
            }
    }
    // An agent with two sites of one type; a site shared by two agents.
    for (const auto& a : m.agents)
        for (const auto& s : a.sites) {
            int et = tg->edge_type(s.name + "@" + a.name);
            {
                Graph g(tg);
                int av = g.add_vertex(tg->vertex_type(a.name));
                g.add_edge(et, {av, g.add_vertex(tg->vertex_type(s.name))});
                g.add_edge(et, {av, g.add_vertex(tg->vertex_type(s.name))});
                out.forbidden.push_back(make_graph(std::move(g)));
            }
            {
                Graph g(tg);
                int sv = g.add_vertex(tg->vertex_type(s.name));
                g.add_edge(et, {g.add_vertex(tg->vertex_type(a.name)), sv});
                g.add_edge(et, {g.add_vertex(tg->vertex_type(a.name)), sv});
                out.forbidden.push_back(make_graph(std::move(g)));
            }
        }

    auto empty = empty_graph(out.types);
    {
        std::vector<CondPtr> atoms;
        for (const auto& n : out.forbidden) {
            Morphism f;
            f.dom = empty;
            f.cod = n;
            atoms.push_back(c_not(c_exists(std::move(f))));
        }
        out.c_neg = normalize(c_and(std::move(atoms)), empty);
    }

    // Positive constraint: agents carry all their sites, property-capable
    // sites carry a property, and sites are attached to their agent.
    auto unit = [&](const std::string& agent, const std::string& site) {
        Graph g(tg);
        int av = g.add_vertex(tg->vertex_type(agent));
        g.add_edge(tg->edge_type(site + "@" + agent), {av, g.add_vertex(tg->vertex_type(site))});
        return make_graph(std::move(g));
    };
    auto single = [&](const std::string& name) {
        Graph g(tg);
        g.add_vertex(tg->vertex_type(name));
        return make_graph(std::move(g));
    };
    for (const auto& a : m.agents)
        for (const auto& s : a.sites) {
            PositiveConstraint::Clause cl{"agent " + a.name + " has site " + s.name,
                                          single(a.name), {}};
            Morphism e;
            e.dom = cl.pattern;
            e.cod = unit(a.name, s.name);
            e.v = {0};
            cl.any_of.push_back(std::move(e));
            out.c_pos.clauses.push_back(std::move(cl));
        }
    for (const auto& [sname, info] : sites) {
        if (!info.properties.empty()) {
            PositiveConstraint::Clause cl{"site " + sname + " carries a property",
                                          single(sname), {}};
            for (const auto& p : info.properties) {
                Graph g(tg);
                int sv = g.add_vertex(tg->vertex_type(sname));
                g.add_edge(tg->edge_type(sname + "." + p), {sv});
                Morphism e;
                e.dom = cl.pattern;
                e.cod = make_graph(std::move(g));
                e.v = {0};
                cl.any_of.push_back(std::move(e));
            }
            out.c_pos.clauses.push_back(std::move(cl));
        }
        PositiveConstraint::Clause cl{"site " + sname + " is attached", single(sname), {}};
        Morphism e;
        e.dom = cl.pattern;
        e.cod = unit(info.agent, sname);
        e.v = {1};
        cl.any_of.push_back(std::move(e));
        out.c_pos.clauses.push_back(std::move(cl));
    }

    // Fully specified agent instances: one per total assignment of
    // properties to the property-capable sites.
    for (const auto& a : m.agents) {
        std::vector<int> choice(a.sites.size(), -1);
        for (size_t i = 0; i < a.sites.size(); ++i)
            if (!a.sites[i].properties.empty()) choice[i] = 0;
        while (true) {
            out.agent_instances.push_back(agent_instance(tg, a, choice));

            std::string desc = a.name;
            std::string props;
            for (size_t i = 0; i < a.sites.size(); ++i)
                if (choice[i] >= 0) {
                    if (!props.empty()) props += ",";
                    props += a.sites[i].name + "=" + a.sites[i].properties[choice[i]];
                }
            if (!props.empty()) desc += "(" + props + ")";
            const auto& inst = out.agent_instances.back();
            out.elementary.push_back(
                {"+" + desc, make_rule(inst, empty, empty, {}, {}, {}, {})});
            out.elementary.push_back(
                {"-" + desc, make_rule(empty, empty, inst, {}, {}, {}, {})});

            // Odometer over the property-capable sites.
            size_t i = 0;
            for (; i < a.sites.size(); ++i) {
                if (choice[i] < 0) continue;
                if (++choice[i] < static_cast<int>(a.sites[i].properties.size())) break;
                choice[i] = 0;
            }
            if (i == a.sites.size()) break;
        }
    }
    for (const auto& [s, t] : bonds) {
        Graph gi(tg);
        int a1 = gi.add_vertex(tg->vertex_type(sites.at(s).agent));
        int s1 = gi.add_vertex(tg->vertex_type(s));
        gi.add_edge(tg->edge_type(s + "@" + sites.at(s).agent), {a1, s1});
        int a2 = gi.add_vertex(tg->vertex_type(sites.at(t).agent));
        int s2 = gi.add_vertex(tg->vertex_type(t));
        gi.add_edge(tg->edge_type(t + "@" + sites.at(t).agent), {a2, s2});
        auto I = make_graph(Graph(gi));
        gi.add_edge(tg->edge_type(link_name(s, t)), {s1, s2});
        auto O = make_graph(std::move(gi));
        out.elementary.push_back(
            {"link(" + s + "," + t + ")",
             make_rule(O, I, I, {0, 1, 2, 3}, {0, 1}, {0, 1, 2, 3}, {0, 1})});
        out.elementary.push_back(
            {"unlink(" + s + "," + t + ")",
             make_rule(I, I, O, {0, 1, 2, 3}, {0, 1}, {0, 1, 2, 3}, {0, 1})});
    }
    for (const auto& a : m.agents)
        for (const auto& s : a.sites)
            for (const auto& p : s.properties)
                for (const auto& q : s.properties) {
                    if (p == q) continue;
                    Graph gk(tg);
                    int av = gk.add_vertex(tg->vertex_type(a.name));
                    int sv = gk.add_vertex(tg->vertex_type(s.name));
                    gk.add_edge(tg->edge_type(s.name + "@" + a.name), {av, sv});
                    auto K = make_graph(Graph(gk));
                    Graph gp(gk);
                    gp.add_edge(tg->edge_type(s.name + "." + p), {sv});
                    auto I = make_graph(std::move(gp));
                    Graph gq(gk);
                    gq.add_edge(tg->edge_type(s.name + "." + q), {sv});
                    auto O = make_graph(std::move(gq));
                    out.elementary.push_back(
                        {s.name + ":" + p + "->" + q,
                         make_rule(O, K, I, {0, 1}, {0}, {0, 1}, {0})});
                }

    for (auto& nr : out.elementary) nr.rule = complete_preserving(nr.rule, out.c_neg);
    return out;
}

std::vector<GraphPtr> kappa_states(const CompiledKappa& k, int max_agents) {
    std::set<std::pair<std::string, std::string>> bonds;
    for (auto [s, t] : k.model.bonds) {
        if (t < s) std::swap(s, t);
        bonds.emplace(s, t);
    }
    std::vector<GraphPtr> out;
    std::set<std::string> seen;
    auto emit = [&](const Graph& g) {
        if (seen.insert(canonical_code(g)).second) out.push_back(make_graph(Graph(g)));
    };

    const int n_inst = static_cast<int>(k.agent_instances.size());
    std::vector<int> combo;
    auto expand = [&](const std::vector<int>& parts) {
        std::vector<GraphPtr> gs;
        for (int i : parts) gs.push_back(k.agent_instances[i]);
        auto base = disjoint_union_of(k.types, gs);
        // Candidate links: bindable pairs of site vertices.
        std::vector<std::pair<int, int>> cand;
        for (int u = 0; u < base->n_vertices(); ++u)
            for (int v = u + 1; v < base->n_vertices(); ++v) {
                auto a = k.types->vertex_types[base->vtype[u]].name;
                auto b = k.types->vertex_types[base->vtype[v]].name;
                if (b < a) std::swap(a, b);
                if (bonds.count({a, b})) cand.emplace_back(u, v);
            }
        std::vector<char> used(base->n_vertices(), 0);
        Graph g(*base);
        auto rec = [&](auto&& self, size_t i) -> void {
            if (i == cand.size()) {
                emit(g);
                return;
            }
            self(self, i + 1);
            auto [u, v] = cand[i];
            if (used[u] || used[v]) return;
            used[u] = used[v] = 1;
            auto a = k.types->vertex_types[g.vtype[u]].name;
            auto b = k.types->vertex_types[g.vtype[v]].name;
            g.add_edge(k.types->edge_type(link_name(a, b)), {u, v});
            self(self, i + 1);
            g.edges.pop_back();
            used[u] = used[v] = 0;
        };
        rec(rec, 0);
    };
    auto choose = [&](auto&& self, int start, int left) -> void {
        expand(combo);
        if (left == 0) return;
        for (int i = start; i < n_inst; ++i) {
            combo.push_back(i);
            self(self, i, left - 1);
            combo.pop_back();
        }
    };
    choose(choose, 0, max_agents);
    return out;
}

KappaBuilder::KappaBuilder(const CompiledKappa& k) : k_(k), g_(k.types) {}

int KappaBuilder::agent(const std::string& type) {
    int vt = k_.types->vertex_type(type);
    if (vt < 0) throw std::invalid_argument("KappaBuilder: unknown agent " + type);
    int v = g_.add_vertex(vt);
    vertex_name_[v] = type;
    return v;
}

int KappaBuilder::site(int agent_vertex, const std::string& name) {
    int vt = k_.types->vertex_type(name);
    int et = k_.types->edge_type(name + "@" + vertex_name_.at(agent_vertex));
    if (vt < 0 || et < 0) throw std::invalid_argument("KappaBuilder: unknown site " + name);
    int v = g_.add_vertex(vt);
    vertex_name_[v] = name;
    g_.add_edge(et, {agent_vertex, v});
    return v;
}

void KappaBuilder::prop(int site_vertex, const std::string& property) {
    int et = k_.types->edge_type(vertex_name_.at(site_vertex) + "." + property);
    if (et < 0) throw std::invalid_argument("KappaBuilder: unknown property " + property);
    g_.add_edge(et, {site_vertex});
}

void KappaBuilder::bind(int site_a, int site_b) {
    int et = k_.types->edge_type(link_name(vertex_name_.at(site_a), vertex_name_.at(site_b)));
    if (et < 0) throw std::invalid_argument("KappaBuilder: sites not bindable");
    g_.add_edge(et, {site_a, site_b});
}

GraphPtr KappaBuilder::build() const {
    std::string why;
    if (!g_.validate(&why)) throw std::invalid_argument("KappaBuilder: " + why);
    return make_graph(Graph(g_));
}

}  // namespace graphrw
