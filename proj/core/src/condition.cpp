#include "graphrw/condition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "graphrw/canonical.hpp"
#include "graphrw/constructions.hpp"
#include "graphrw/match.hpp"
#include "flatten.hpp"

namespace graphrw {

using Op = Condition::Op;

CondPtr c_true() {
    static CondPtr t = std::make_shared<Condition>();
    return t;
}

CondPtr c_false() {
    static CondPtr f = [] {
        auto c = std::make_shared<Condition>();
        c->op = Op::Not;
        c->sub = c_true();
        return c;
    }();
    return f;
}

CondPtr c_exists(Morphism f, CondPtr sub) {
    auto c = std::make_shared<Condition>();
    c->op = Op::Exists;
    c->mono = std::move(f);
    c->sub = std::move(sub);
    return c;
}

CondPtr c_not(CondPtr c) {
    auto n = std::make_shared<Condition>();
    n->op = Op::Not;
    n->sub = std::move(c);
    return n;
}

CondPtr c_and(std::vector<CondPtr> cs) {
    auto n = std::make_shared<Condition>();
    n->op = Op::And;
    n->children = std::move(cs);
    return n;
}

CondPtr c_or(std::vector<CondPtr> cs) {
    std::vector<CondPtr> negs;
    negs.reserve(cs.size());
    for (auto& c : cs) negs.push_back(c_not(std::move(c)));
    return c_not(c_and(std::move(negs)));
}

bool is_true(const CondPtr& c) { return !c || c->op == Op::True; }

bool is_false(const CondPtr& c) {
    return c && c->op == Op::Not && is_true(c->sub);
}

bool satisfies(const Morphism& h, const CondPtr& c) {
    if (is_true(c)) return true;
    switch (c->op) {
        case Op::True:
            return true;
        case Op::Not:
            return !satisfies(h, c->sub);
        case Op::And:
            for (const auto& ch : c->children)
                if (!satisfies(h, ch)) return false;
            return true;
        case Op::Exists: {
            for (const auto& g : extensions(c->mono, h))
                if (satisfies(g, c->sub)) return true;
            return false;
        }
    }
    return true;
}

bool satisfies_constraint(const GraphPtr& host, const CondPtr& c) {
    Morphism h;
    h.dom = empty_graph(host->types);
    h.cod = host;
    return satisfies(h, c);
}

CondPtr relabel(const CondPtr& c, const Morphism& iso) {
    if (is_true(c)) return c_true();
    switch (c->op) {
        case Op::True:
            return c_true();
        case Op::Not:
            return c_not(relabel(c->sub, iso));
        case Op::And: {
            std::vector<CondPtr> cs;
            for (const auto& ch : c->children) cs.push_back(relabel(ch, iso));
            return c_and(std::move(cs));
        }
        case Op::Exists: {
            auto inv = inverse(iso);
            if (!inv) throw std::invalid_argument("relabel: not an isomorphism");
            return c_exists(compose(*inv, c->mono), c->sub);
        }
    }
    return c;
}

std::string condition_code(const CondPtr& c, const GraphPtr& root) {
    detail::FlatBuilder fb;
    auto layer = fb.add_layer(*root, detail::kCompI, /*pinned=*/true);
    fb.add_condition(c, layer);
    return canonical_form(fb.g, fb.pins).code;
}

CondPtr normalize(const CondPtr& c, const GraphPtr& root) {
    if (is_true(c)) return c_true();
    switch (c->op) {
        case Op::True:
            return c_true();
        case Op::Not: {
            auto n = normalize(c->sub, root);
            if (is_true(n)) return c_false();
            if (is_false(n)) return c_true();
            if (n->op == Op::Not) return n->sub;
            return c_not(n);
        }
        case Op::And: {
            std::vector<CondPtr> flat;
            for (const auto& ch : c->children) {
                auto n = normalize(ch, root);
                if (is_true(n)) continue;
                if (is_false(n)) return c_false();
                if (n->op == Op::And)
                    flat.insert(flat.end(), n->children.begin(), n->children.end());
                else
                    flat.push_back(n);
            }
            if (flat.empty()) return c_true();
            std::map<std::string, CondPtr> dedup;
            for (auto& ch : flat) dedup.emplace(condition_code(ch, root), ch);
            if (dedup.size() == 1) return dedup.begin()->second;
            std::vector<CondPtr> out;
            for (auto& [k, v] : dedup) out.push_back(v);
            return c_and(std::move(out));
        }
        case Op::Exists: {
            auto s = c->sub ? normalize(c->sub, c->mono.cod) : c_true();
            if (is_false(s)) return c_false();
            if (c->mono.is_iso()) {
                // Exists along an iso adds nothing: pull the sub-condition
                // back to the root.
                return normalize(relabel(s, *inverse(c->mono)), root);
            }
            return c_exists(c->mono, is_true(s) ? nullptr : s);
        }
    }
    return c;
}

namespace {

// All subobjects S of A that contain the image of a : X -> A, together
// with the factorization X -> S and the inclusion S -> A.
struct SubWithFactor {
    Morphism incl;  // S -> A
    Morphism fact;  // X -> S
};

std::vector<SubWithFactor> subobjects_containing(const Morphism& a) {
    const Graph& A = *a.cod;
    std::vector<char> in_img_v(A.n_vertices(), 0), in_img_e(A.n_edges(), 0);
    for (int x : a.v) in_img_v[x] = 1;
    for (int x : a.e) in_img_e[x] = 1;
    std::vector<int> ev, ee;
    for (int v = 0; v < A.n_vertices(); ++v)
        if (!in_img_v[v]) ev.push_back(v);
    for (int e = 0; e < A.n_edges(); ++e)
        if (!in_img_e[e]) ee.push_back(e);

    std::vector<SubWithFactor> out;
    for (size_t vm = 0; vm < (size_t{1} << ev.size()); ++vm) {
        std::vector<char> keep_v = in_img_v;
        for (size_t i = 0; i < ev.size(); ++i)
            if (vm >> i & 1) keep_v[ev[i]] = 1;
        for (size_t em = 0; em < (size_t{1} << ee.size()); ++em) {
            std::vector<char> keep_e = in_img_e;
            bool ok = true;
            for (size_t i = 0; i < ee.size(); ++i)
                if (em >> i & 1) {
                    keep_e[ee[i]] = 1;
                    for (int u : A.edges[ee[i]].ends)
                        if (!keep_v[u]) ok = false;
                }
            if (!ok) continue;
            Graph S(A.types);
            std::vector<int> v2s(A.n_vertices(), -1), e2s(A.n_edges(), -1);
            for (int v = 0; v < A.n_vertices(); ++v)
                if (keep_v[v]) v2s[v] = S.add_vertex(A.vtype[v]);
            for (int e = 0; e < A.n_edges(); ++e) {
                if (!keep_e[e]) continue;
                std::vector<int> ends;
                for (int u : A.edges[e].ends) ends.push_back(v2s[u]);
                e2s[e] = S.add_edge(A.edges[e].type, std::move(ends));
            }
            GraphPtr Sp = make_graph(std::move(S));
            SubWithFactor sf;
            sf.incl.dom = Sp;
            sf.incl.cod = a.cod;
            for (int v = 0; v < A.n_vertices(); ++v)
                if (v2s[v] >= 0) sf.incl.v.push_back(v);
            for (int e = 0; e < A.n_edges(); ++e)
                if (e2s[e] >= 0) sf.incl.e.push_back(e);
            sf.fact.dom = a.dom;
            sf.fact.cod = Sp;
            for (int x : a.v) sf.fact.v.push_back(v2s[x]);
            for (int x : a.e) sf.fact.e.push_back(e2s[x]);
            out.push_back(std::move(sf));
        }
    }
    return out;
}

}  // namespace

CondPtr shift(const Morphism& y, const CondPtr& c) {
    if (is_true(c)) return c_true();
    switch (c->op) {
        case Op::True:
            return c_true();
        case Op::Not:
            return c_not(shift(y, c->sub));
        case Op::And: {
            std::vector<CondPtr> cs;
            for (const auto& ch : c->children) cs.push_back(shift(y, ch));
            return c_and(std::move(cs));
        }
        case Op::Exists: {
            // One disjunct per way the pattern may already overlap Y.
            std::vector<CondPtr> disjuncts;
            for (const auto& sf : subobjects_containing(c->mono)) {
                for (const auto& yp : extensions(sf.fact, y)) {
                    Span s;
                    s.left = sf.incl;  // S -> A
                    s.right = yp;      // S -> Y
                    auto po = pushout(s);
                    // po.left : A -> P, po.right : Y -> P
                    disjuncts.push_back(c_exists(po.right, shift(po.left, c->sub)));
                }
            }
            return c_or(std::move(disjuncts));
        }
    }
    return c;
}

CondPtr trans(const Morphism& o, const Morphism& i, const CondPtr& c) {
    if (is_true(c)) return c_true();
    switch (c->op) {
        case Op::True:
            return c_true();
        case Op::Not:
            return c_not(trans(o, i, c->sub));
        case Op::And: {
            std::vector<CondPtr> cs;
            for (const auto& ch : c->children) cs.push_back(trans(o, i, ch));
            return c_and(std::move(cs));
        }
        case Op::Exists: {
            auto poc = pushout_complement(o, c->mono);
            if (!poc) return c_false();
            const auto& [k_ka, ka_a] = *poc;  // K -> K_A, K_A -> A
            Span s;
            s.left = k_ka;
            s.right = i;
            auto po = pushout(s);  // K_A -> B, I -> B
            return c_exists(po.right, trans(ka_a, po.left, c->sub));
        }
    }
    return c;
}

bool atom_implies(const Morphism& a, const Morphism& b) {
    return !extensions(a, b).empty();
}

std::optional<std::vector<Morphism>> neg_atom_form(const CondPtr& c, const GraphPtr& root,
                                                   bool reduce) {
    auto n = normalize(c, root);
    if (is_true(n)) return std::vector<Morphism>{};
    if (is_false(n)) return std::nullopt;
    std::vector<CondPtr> parts = n->op == Op::And ? n->children : std::vector<CondPtr>{n};
    std::vector<Morphism> atoms;
    for (const auto& p : parts) {
        if (p->op != Op::Not || !p->sub || p->sub->op != Op::Exists || !is_true(p->sub->sub))
            return std::nullopt;
        atoms.push_back(p->sub->mono);
    }
    if (!reduce) return atoms;
    // Subsumption: forbidding a subpattern already forbids the extension.
    std::vector<char> dead(atoms.size(), 0);
    for (size_t i = 0; i < atoms.size(); ++i)
        for (size_t j = 0; j < atoms.size(); ++j) {
            if (i == j || dead[j] || dead[i]) continue;
            if (atom_implies(atoms[j], atoms[i]) && !atom_implies(atoms[i], atoms[j])) dead[i] = 1;
        }
    std::vector<Morphism> out;
    for (size_t i = 0; i < atoms.size(); ++i)
        if (!dead[i]) out.push_back(atoms[i]);
    return out;
}

std::vector<GraphPtr> enumerate_extensions(const GraphPtr& root, int kv, int ke) {
    const TypeGraph& tg = *root->types;
    auto pin_code = [&](const Graph& g) {
        std::vector<int> pins(g.n_vertices(), -1);
        for (int v = 0; v < root->n_vertices(); ++v) pins[v] = v;
        return canonical_form(g, pins).code;
    };

    std::map<std::string, GraphPtr> seen;
    std::vector<GraphPtr> frontier{root};
    seen[pin_code(*root)] = root;

    // Vertex additions, then edge additions, deduplicating levelwise.
    for (int round = 0; round < kv; ++round) {
        std::vector<GraphPtr> next;
        for (const auto& g : frontier)
            for (int t = 0; t < static_cast<int>(tg.vertex_types.size()); ++t) {
                Graph h = *g;
                h.add_vertex(t);
                auto code = pin_code(h);
                if (seen.count(code)) continue;
                auto hp = make_graph(std::move(h));
                seen[code] = hp;
                next.push_back(hp);
            }
        frontier = std::move(next);
    }
    std::vector<GraphPtr> all;
    for (auto& [k, v] : seen) all.push_back(v);
    frontier = all;
    for (int round = 0; round < ke; ++round) {
        std::vector<GraphPtr> next;
        for (const auto& g : frontier)
            for (int t = 0; t < static_cast<int>(tg.edge_types.size()); ++t) {
                const auto& slots = tg.edge_types[t].ends;
                if (slots.size() == 1) {
                    for (int v = 0; v < g->n_vertices(); ++v) {
                        if (g->vtype[v] != slots[0]) continue;
                        Graph h = *g;
                        h.add_edge(t, {v});
                        auto code = pin_code(h);
                        if (seen.count(code)) continue;
                        auto hp = make_graph(std::move(h));
                        seen[code] = hp;
                        next.push_back(hp);
                    }
                } else {
                    for (int v = 0; v < g->n_vertices(); ++v)
                        for (int w = v + 1; w < g->n_vertices(); ++w) {
                            std::vector<int> have{g->vtype[v], g->vtype[w]};
                            std::sort(have.begin(), have.end());
                            if (have != slots) continue;
                            Graph h = *g;
                            h.add_edge(t, {v, w});
                            auto code = pin_code(h);
                            if (seen.count(code)) continue;
                            auto hp = make_graph(std::move(h));
                            seen[code] = hp;
                            next.push_back(hp);
                        }
                }
            }
        frontier = std::move(next);
    }
    std::vector<GraphPtr> out;
    for (auto& [k, v] : seen) out.push_back(v);
    return out;
}

namespace {

int largest_mentioned(const CondPtr& c) {
    if (is_true(c)) return 0;
    int m = 0;
    if (c->op == Op::Exists)
        m = std::max(c->mono.cod->n_vertices(),
                     std::max(m, largest_mentioned(c->sub)));
    if (c->op == Op::Not) m = std::max(m, largest_mentioned(c->sub));
    for (const auto& ch : c->children) m = std::max(m, largest_mentioned(ch));
    return m;
}

int largest_mentioned_edges(const CondPtr& c) {
    if (is_true(c)) return 0;
    int m = 0;
    if (c->op == Op::Exists)
        m = std::max(c->mono.cod->n_edges(),
                     std::max(m, largest_mentioned_edges(c->sub)));
    if (c->op == Op::Not) m = std::max(m, largest_mentioned_edges(c->sub));
    for (const auto& ch : c->children) m = std::max(m, largest_mentioned_edges(ch));
    return m;
}

}  // namespace

EquivResult equivalent(const CondPtr& a, const CondPtr& b, const GraphPtr& root, int extra_v,
                       int extra_e) {
    auto na = normalize(a, root);
    auto nb = normalize(b, root);
    if (condition_code(na, root) == condition_code(nb, root)) return {Equiv::Equal, nullptr};

    auto aa = neg_atom_form(na, root);
    auto ab = neg_atom_form(nb, root);
    bool fa = is_false(na), fb = is_false(nb);
    if ((aa || fa) && (ab || fb)) {
        // Complete inside the fragment: probe with the atoms themselves.
        if (fa != fb) {
            // FALSE vs an atom conjunction: the root itself distinguishes
            // unless the non-false side is violated by every context; atom
            // sets never exclude their own root (monos are strict), so the
            // root is a witness.
            return {Equiv::Distinct, root};
        }
        if (!fa && !fb) {
            for (const auto& atom : *aa) {
                Morphism h = atom;  // root -> N as a context
                if (satisfies(h, na) != satisfies(h, nb)) return {Equiv::Distinct, atom.cod};
            }
            for (const auto& atom : *ab) {
                Morphism h = atom;
                if (satisfies(h, na) != satisfies(h, nb)) return {Equiv::Distinct, atom.cod};
            }
            return {Equiv::Equal, nullptr};
        }
        return {Equiv::Equal, nullptr};  // both FALSE (codes differed only syntactically)
    }

    int big_v = std::max(largest_mentioned(na), largest_mentioned(nb));
    int big_e = std::max(largest_mentioned_edges(na), largest_mentioned_edges(nb));
    int kv = std::max(0, big_v - root->n_vertices()) + (extra_v < 0 ? 2 : extra_v);
    int ke = std::max(0, big_e - root->n_edges()) + (extra_e < 0 ? 3 : extra_e);
    for (const auto& ctx : enumerate_extensions(root, kv, ke)) {
        Morphism h;
        h.dom = root;
        h.cod = ctx;
        for (int v = 0; v < root->n_vertices(); ++v) h.v.push_back(v);
        for (int e = 0; e < root->n_edges(); ++e) h.e.push_back(e);
        if (satisfies(h, na) != satisfies(h, nb)) return {Equiv::Distinct, ctx};
    }
    return {Equiv::Unknown, nullptr};
}

}  // namespace graphrw
