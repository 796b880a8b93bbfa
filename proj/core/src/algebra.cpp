#include "graphrw/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "graphrw/canonical.hpp"
#include "graphrw/constructions.hpp"
#include "graphrw/match.hpp"

namespace graphrw {

namespace {

CondPtr cond_of(const Rule& r) { return r.cond ? r.cond : c_true(); }

Morphism from_empty_to(const GraphPtr& g) {
    Morphism m;
    m.dom = empty_graph(g->types);
    m.cod = g;
    return m;
}

bool same_map(const Morphism& a, const Morphism& b) { return a.v == b.v && a.e == b.e; }

std::vector<Morphism> isos(const GraphPtr& a, const GraphPtr& b) {
    std::vector<Morphism> out;
    if (a->n_vertices() != b->n_vertices() || a->n_edges() != b->n_edges()) return out;
    for (auto& m : enumerate_monos(a, b))
        if (m.is_iso()) out.push_back(std::move(m));
    return out;
}

}  // namespace

std::vector<Morphism> subgraphs(const GraphPtr& g) {
    const int ne = g->n_edges();
    const int nv = g->n_vertices();
    if (ne > 20 || nv > 24) throw std::invalid_argument("subgraphs: graph too large");
    std::vector<Morphism> out;
    for (std::uint32_t emask = 0; emask < (1u << ne); ++emask) {
        std::uint32_t required = 0;
        for (int e = 0; e < ne; ++e)
            if (emask & (1u << e))
                for (int v : g->edges[e].ends) required |= 1u << v;
        // Iterate supersets of `required` over the vertex universe.
        std::uint32_t universe = nv == 32 ? ~0u : (1u << nv) - 1;
        std::uint32_t free = universe & ~required;
        std::uint32_t extra = 0;
        while (true) {
            std::uint32_t vmask = required | extra;
            Graph sg(g->types);
            std::vector<int> vsel, esel, vback(nv, -1);
            for (int v = 0; v < nv; ++v)
                if (vmask & (1u << v)) {
                    vback[v] = sg.add_vertex(g->vtype[v]);
                    vsel.push_back(v);
                }
            for (int e = 0; e < ne; ++e)
                if (emask & (1u << e)) {
                    std::vector<int> ends;
                    for (int v : g->edges[e].ends) ends.push_back(vback[v]);
                    sg.add_edge(g->edges[e].type, std::move(ends));
                    esel.push_back(e);
                }
            Morphism inc;
            inc.dom = make_graph(std::move(sg));
            inc.cod = g;
            inc.v = std::move(vsel);
            inc.e = std::move(esel);
            out.push_back(std::move(inc));
            if (extra == free) break;
            extra = (extra - free) & free;  // next superset (subset of free)
        }
    }
    return out;
}

std::optional<Rule> compose_along(const Rule& r2, const Overlap& mu, const Rule& r1,
                                  Semantics sem) {
    // Glue object N21 of the overlap.
    Span glue;
    glue.left = mu.into_i2;
    glue.right = mu.into_o1;
    auto po_glue = pushout(glue);
    const Morphism& n_i2 = po_glue.left;   // I2 -> N21
    const Morphism& n_o1 = po_glue.right;  // O1 -> N21

    // Reverse application of r1 to N21 at n_o1; the complement must exist
    // in both semantics for the overlap to be admissible.
    auto rev = pushout_complement(r1.span.o, n_o1);
    if (!rev) return std::nullopt;
    const auto& [k1_c1, c1_n21] = *rev;  // K1 -> C1, C1 -> N21
    Span s1;
    s1.left = k1_c1;
    s1.right = r1.span.i;
    auto po_i = pushout(s1);
    const Morphism& c1_i21 = po_i.left;   // C1 -> I21
    const Morphism& i1_i21 = po_i.right;  // I1 -> I21

    // Forward application of r2 to N21 at n_i2.
    std::optional<std::pair<Morphism, Morphism>> fwd;
    if (sem == Semantics::DPO) {
        fwd = pushout_complement(r2.span.i, n_i2);
        if (!fwd) return std::nullopt;
    } else {
        fwd = final_pullback_complement(r2.span.i, n_i2);
    }
    const auto& [k2_c2, c2_n21] = *fwd;  // K2 -> C2, C2 -> N21
    Span s2;
    s2.left = k2_c2;
    s2.right = r2.span.o;
    auto po_o = pushout(s2);
    const Morphism& c2_o21 = po_o.left;  // C2 -> O21

    // Composite context: pullback of the two complements over N21.
    Cospan mid;
    mid.left = c1_n21;
    mid.right = c2_n21;
    auto pb = pullback(mid);  // K21 -> C1, K21 -> C2

    Rule out;
    out.span.i = compose(pb.left, c1_i21);
    out.span.o = compose(pb.right, c2_o21);

    // Composite condition: r1's condition shifted onto the composite
    // input, plus r2's condition shifted onto the glue object and
    // transported backwards across the reverse step of r1.
    const GraphPtr& i21 = out.span.i.cod;
    auto part1 = shift(i1_i21, cond_of(r1));
    auto part2 = trans(c1_n21, c1_i21, shift(n_i2, cond_of(r2)));
    out.cond = normalize(c_and({part1, part2}), i21);
    if (is_false(out.cond)) return std::nullopt;
    return out;
}

std::vector<Composition> enumerate_compositions(const Rule& r2, const Rule& r1, Semantics sem,
                                                OverlapMode mode, const CondPtr& c_empty) {
    if (mode == OverlapMode::Restricted && !c_empty)
        throw std::invalid_argument("enumerate_compositions: restricted mode needs a constraint");
    std::vector<Composition> out;
    const GraphPtr& o1 = rule_output(r1);
    const GraphPtr& i2 = rule_input(r2);
    for (auto& inc : subgraphs(o1)) {
        for (auto& m : enumerate_monos(inc.dom, i2)) {
            Composition rec;
            rec.mu.into_i2 = m;
            rec.mu.into_o1 = inc;
            rec.edge_reflecting = inc.is_edge_reflecting() && m.is_edge_reflecting();
            if (mode == OverlapMode::EdgeReflecting && !rec.edge_reflecting) continue;
            auto comp = compose_along(r2, rec.mu, r1, sem);
            if (!comp) {
                rec.verdict = "rejected: complement square fails or condition is false";
                out.push_back(std::move(rec));
                continue;
            }
            if (mode == OverlapMode::Restricted) {
                const GraphPtr& i21 = rule_input(*comp);
                auto reachable = normalize(shift(from_empty_to(i21), c_empty), i21);
                if (is_false(reachable)) {
                    rec.verdict = "rejected: composite input violates the constraint";
                    out.push_back(std::move(rec));
                    continue;
                }
                // A composite whose guaranteeing completion is FALSE can
                // never fire on a constraint-satisfying state: it is the
                // zero of the restricted basis.
                if (is_false(complete_guaranteeing(*comp, c_empty).cond)) {
                    rec.verdict = "rejected: composite can never preserve the constraint";
                    out.push_back(std::move(rec));
                    continue;
                }
                comp->cond = complete_preserving(*comp, c_empty).cond;
            }
            rec.composite = std::move(*comp);
            rec.verdict = "ok";
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<Overlap> partial_overlaps(const Rule& r2, const Rule& r1, Semantics sem,
                                      OverlapMode mode, const CondPtr& c_empty) {
    std::vector<Overlap> out;
    for (auto& rec : enumerate_compositions(r2, r1, sem, mode, c_empty))
        if (rec.composite) out.push_back(rec.mu);
    return out;
}

std::vector<Morphism> span_isos(const Rule& from, const Rule& to) {
    std::vector<Morphism> out;
    auto ii = isos(rule_input(from), rule_input(to));
    if (ii.empty()) return out;
    auto kk = isos(rule_context(from), rule_context(to));
    auto oo = isos(rule_output(from), rule_output(to));
    for (const auto& fi : ii) {
        bool ok = false;
        for (const auto& fk : kk) {
            if (!same_map(compose(from.span.i, fi), compose(fk, to.span.i))) continue;
            for (const auto& fo : oo)
                if (same_map(compose(from.span.o, fo), compose(fk, to.span.o))) {
                    ok = true;
                    break;
                }
            if (ok) break;
        }
        if (ok) out.push_back(fi);
    }
    return out;
}

namespace {

void prune_zeros(Element& e) {
    for (auto it = e.terms.begin(); it != e.terms.end();)
        it = it->second.coeff.is_zero() ? e.terms.erase(it) : std::next(it);
}

// Merges terms whose rules are isomorphic with decidably equivalent
// conditions; undecided pairs stay separate and are reported.
void merge_equivalent(Element& e) {
    std::map<std::string, std::vector<std::string>> buckets;
    for (const auto& [k, t] : e.terms) buckets[plain_rule_key(t.rule.span)].push_back(k);
    for (const auto& [pk, keys] : buckets) {
        if (keys.size() < 2) continue;
        for (size_t i = 0; i < keys.size(); ++i) {
            auto ia = e.terms.find(keys[i]);
            if (ia == e.terms.end()) continue;
            for (size_t j = i + 1; j < keys.size(); ++j) {
                auto ib = e.terms.find(keys[j]);
                if (ib == e.terms.end()) continue;
                const Rule& ra = ia->second.rule;
                const Rule& rb = ib->second.rule;
                bool merged = false, unknown = false;
                for (const auto& fi : span_isos(rb, ra)) {
                    auto cb = relabel(cond_of(rb), fi);
                    auto res = equivalent(cond_of(ra), cb, rule_input(ra));
                    if (res.verdict == Equiv::Equal) {
                        ia->second.coeff += ib->second.coeff;
                        e.terms.erase(ib);
                        merged = true;
                        break;
                    }
                    if (res.verdict == Equiv::Unknown) unknown = true;
                }
                if (!merged && unknown)
                    e.warnings.push_back("unresolved condition equivalence between terms " +
                                         keys[i] + " and " + keys[j]);
            }
        }
    }
    prune_zeros(e);
}

}  // namespace

Element delta(const Rule& r) {
    Element e;
    e.terms.emplace(rule_key(r), Term{Rational(1), r});
    return e;
}

Element scale(const Element& a, const Rational& k) {
    Element e;
    if (k.is_zero()) return e;
    e.warnings = a.warnings;
    for (const auto& [key, t] : a.terms) e.terms.emplace(key, Term{t.coeff * k, t.rule});
    return e;
}

Element sum(const Element& a, const Element& b) {
    Element e = a;
    for (const auto& [key, t] : b.terms) {
        auto [it, fresh] = e.terms.emplace(key, t);
        if (!fresh) it->second.coeff += t.coeff;
    }
    e.warnings.insert(e.warnings.end(), b.warnings.begin(), b.warnings.end());
    merge_equivalent(e);
    return e;
}

Element product(const Element& a2, const Element& a1, Semantics sem, OverlapMode mode,
                const CondPtr& c_empty) {
    Element e;
    e.warnings = a2.warnings;
    e.warnings.insert(e.warnings.end(), a1.warnings.begin(), a1.warnings.end());
    for (const auto& [k2, t2] : a2.terms)
        for (const auto& [k1, t1] : a1.terms) {
            Rational c = t2.coeff * t1.coeff;
            if (c.is_zero()) continue;
            for (auto& rec : enumerate_compositions(t2.rule, t1.rule, sem, mode, c_empty)) {
                if (!rec.composite) continue;
                auto key = rule_key(*rec.composite);
                auto [it, fresh] = e.terms.emplace(key, Term{c, std::move(*rec.composite)});
                if (!fresh) it->second.coeff += c;
            }
        }
    merge_equivalent(e);
    return e;
}

Element commutator(const Element& a, const Element& b, Semantics sem, OverlapMode mode,
                   const CondPtr& c_empty) {
    return sum(product(a, b, sem, mode, c_empty),
               scale(product(b, a, sem, mode, c_empty), Rational(-1)));
}

Element nested_adjoint(const Element& a, const Element& b, int q, Semantics sem,
                       OverlapMode mode, const CondPtr& c_empty) {
    Element out = b;
    for (int k = 0; k < q; ++k) out = commutator(a, out, sem, mode, c_empty);
    return out;
}

}  // namespace graphrw
