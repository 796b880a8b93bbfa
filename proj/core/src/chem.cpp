#include <algorithm>
#include <stdexcept>

#include "graphrw/match.hpp"
#include "graphrw/models.hpp"

namespace graphrw {

bool satisfies_positive(const GraphPtr& X, const PositiveConstraint& cp) {
    for (const auto& cl : cp.clauses)
        for (const auto& m : enumerate_monos(cl.pattern, X)) {
            bool extended = false;
            for (const auto& ext : cl.any_of)
                if (!extensions(ext, m).empty()) {
                    extended = true;
                    break;
                }
            if (!extended) return false;
        }
    return true;
}

Validation validate_state(const GraphPtr& X, const std::vector<GraphPtr>& forbidden,
                          const PositiveConstraint& c_pos) {
    Validation out;
    for (size_t i = 0; i < forbidden.size(); ++i)
        for (const auto& m : enumerate_monos(forbidden[i], X)) {
            auto img = m.v;
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            out.violations.push_back({"forbidden pattern " + std::to_string(i), std::move(img)});
        }
    for (const auto& cl : c_pos.clauses)
        for (const auto& m : enumerate_monos(cl.pattern, X)) {
            bool extended = false;
            for (const auto& ext : cl.any_of)
                if (!extensions(ext, m).empty()) {
                    extended = true;
                    break;
                }
            if (!extended) {
                auto img = m.v;
                std::sort(img.begin(), img.end());
                out.violations.push_back({cl.name, std::move(img)});
            }
        }
    out.ok = out.violations.empty();
    return out;
}

bool rule_inert(const Rule& r, Semantics sem, const std::vector<GraphPtr>& forbidden,
                const PositiveConstraint& c_pos, const std::vector<GraphPtr>& states) {
    for (const auto& X : states)
        for (const auto& m : admissible_matches(r, X, sem)) {
            auto d = direct_derivation(r, m, sem);
            if (d && validate_state(d->result, forbidden, c_pos).ok) return false;
        }
    return true;
}

namespace {

const char* kBondNames[] = {"-", "=", "#"};

}  // namespace

GraphPtr bond_star(const TypeGraphPtr& t, const std::string& atom,
                   const std::vector<std::string>& bonds) {
    Graph g(t);
    int vt = t->vertex_type("*");
    int at = t->edge_type(atom);
    if (vt < 0 || at < 0) throw std::invalid_argument("bond_star: unknown atom " + atom);
    int c = g.add_vertex(vt);
    g.add_edge(at, {c});
    for (const auto& b : bonds) {
        int bt = t->edge_type(b);
        if (bt < 0) throw std::invalid_argument("bond_star: unknown bond " + b);
        int n = g.add_vertex(vt);
        g.add_edge(bt, {c, n});
    }
    return make_graph(std::move(g));
}

CompiledChem chem_compile(const ChemModel& m) {
    CompiledChem out;
    out.model = m;
    auto tg = std::make_shared<TypeGraph>();
    int vt = tg->add_vertex_type("*");
    for (const auto& a : m.atoms) {
        if (tg->edge_type(a.name) >= 0)
            throw std::invalid_argument("chem_compile: duplicate atom " + a.name);
        tg->add_edge_type(a.name, {vt});
    }
    for (const char* b : kBondNames) tg->add_edge_type(b, {vt, vt});
    out.types = tg;

    auto star = [&](const std::string& atom, const std::vector<std::string>& bonds) {
        return bond_star(out.types, atom, bonds);
    };

    // Structural patterns: parallel bonds between two vertices (the graphs
    // are multigraphs, so simplicity is a constraint, not a given) and
    // multiple atom loops on one vertex. Bond-typed self-loops are already
    // unrepresentable (a two-slot edge type cannot sit on one vertex).
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i; j < 3; ++j) {
            Graph g(out.types);
            int a = g.add_vertex(vt);
            int b = g.add_vertex(vt);
            g.add_edge(tg->edge_type(kBondNames[i]), {a, b});
            g.add_edge(tg->edge_type(kBondNames[j]), {a, b});
            out.forbidden.push_back(make_graph(std::move(g)));
        }
    for (size_t i = 0; i < m.atoms.size(); ++i)
        for (size_t j = i; j < m.atoms.size(); ++j) {
            Graph g(out.types);
            int a = g.add_vertex(vt);
            g.add_edge(tg->edge_type(m.atoms[i].name), {a});
            g.add_edge(tg->edge_type(m.atoms[j].name), {a});
            out.forbidden.push_back(make_graph(std::move(g)));
        }
    for (const auto& a : m.atoms)
        for (const auto& pat : a.forbidden) out.forbidden.push_back(star(a.name, pat));

    std::vector<CondPtr> atoms;
    auto empty = empty_graph(out.types);
    for (const auto& n : out.forbidden) {
        Morphism f;
        f.dom = empty;
        f.cod = n;
        atoms.push_back(c_not(c_exists(std::move(f))));
    }
    out.c_neg = normalize(c_and(std::move(atoms)), empty);

    // Every vertex carries an atom loop, and every typed atom extends to
    // one of its permitted bond patterns.
    {
        Graph bare(out.types);
        bare.add_vertex(vt);
        auto pat = make_graph(std::move(bare));
        PositiveConstraint::Clause cl{"vertex carries an atom type", pat, {}};
        for (const auto& a : m.atoms) {
            Morphism e;
            e.dom = pat;
            e.cod = star(a.name, {});
            e.v = {0};
            cl.any_of.push_back(std::move(e));
        }
        out.c_pos.clauses.push_back(std::move(cl));
    }
    for (const auto& a : m.atoms) {
        PositiveConstraint::Clause cl{"atom " + a.name + " is saturated", star(a.name, {}), {}};
        for (const auto& pat : a.permitted) {
            Morphism e;
            e.dom = cl.pattern;
            e.cod = star(a.name, pat);
            e.v = {0};
            e.e = {0};
            cl.any_of.push_back(std::move(e));
        }
        out.c_pos.clauses.push_back(std::move(cl));
    }
    return out;
}

ChemBuilder::ChemBuilder(TypeGraphPtr t) : g_(std::move(t)) {}

int ChemBuilder::atom(const std::string& type) {
    int et = g_.types->edge_type(type);
    if (et < 0) throw std::invalid_argument("ChemBuilder: unknown atom " + type);
    int v = g_.add_vertex(g_.types->vertex_type("*"));
    g_.add_edge(et, {v});
    return v;
}

int ChemBuilder::bare() { return g_.add_vertex(g_.types->vertex_type("*")); }

void ChemBuilder::bond(int a, int b, const std::string& type) {
    int et = g_.types->edge_type(type);
    if (et < 0) throw std::invalid_argument("ChemBuilder: unknown bond " + type);
    g_.add_edge(et, {a, b});
}

GraphPtr ChemBuilder::build() const {
    std::string why;
    if (!g_.validate(&why)) throw std::invalid_argument("ChemBuilder: " + why);
    return make_graph(Graph(g_));
}

}  // namespace graphrw
