#include "graphrw/constructions.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <stdexcept>

namespace graphrw {

namespace {

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

Cospan pushout(const Span& s) {
    const Morphism& f = s.left;   // A -> B
    const Morphism& g = s.right;  // A -> C
    if (!(f.is_mono() || g.is_mono()))
        throw std::invalid_argument("pushout: at least one leg must be mono");
    const Graph& A = *f.dom;
    const Graph& B = *f.cod;
    const Graph& C = *g.cod;

    DSU dv(B.n_vertices() + C.n_vertices());
    DSU de(B.n_edges() + C.n_edges());
    auto cv = [&](int c) { return B.n_vertices() + c; };
    auto ce = [&](int c) { return B.n_edges() + c; };
    for (int a = 0; a < A.n_vertices(); ++a) dv.unite(f.v[a], cv(g.v[a]));
    for (int a = 0; a < A.n_edges(); ++a) de.unite(f.e[a], ce(g.e[a]));

    Graph D(B.types);
    std::vector<int> vclass(B.n_vertices() + C.n_vertices(), -1);
    std::vector<int> eclass(B.n_edges() + C.n_edges(), -1);
    // B items first, then unmerged C items: deterministic representative ids.
    for (int i = 0; i < B.n_vertices() + C.n_vertices(); ++i) {
        int r = dv.find(i);
        if (vclass[r] < 0) {
            int t = r < B.n_vertices() ? B.vtype[r] : C.vtype[r - B.n_vertices()];
            vclass[r] = D.add_vertex(t);
        }
        vclass[i] = vclass[r];
    }
    auto vmap = [&](int i) { return vclass[dv.find(i)]; };
    for (int i = 0; i < B.n_edges() + C.n_edges(); ++i) {
        int r = de.find(i);
        if (eclass[r] < 0) {
            const Graph::Edge& src = r < B.n_edges() ? B.edges[r] : C.edges[r - B.n_edges()];
            std::vector<int> ends;
            for (int u : src.ends)
                ends.push_back(vmap(r < B.n_edges() ? u : cv(u)));
            eclass[r] = D.add_edge(src.type, std::move(ends));
        }
        eclass[i] = eclass[r];
    }
    auto emap = [&](int i) { return eclass[de.find(i)]; };

    GraphPtr Dp = make_graph(std::move(D));
    Cospan out;
    out.left.dom = f.cod;
    out.left.cod = Dp;
    out.right.dom = g.cod;
    out.right.cod = Dp;
    for (int i = 0; i < B.n_vertices(); ++i) out.left.v.push_back(vmap(i));
    for (int i = 0; i < B.n_edges(); ++i) out.left.e.push_back(emap(i));
    for (int i = 0; i < C.n_vertices(); ++i) out.right.v.push_back(vmap(cv(i)));
    for (int i = 0; i < C.n_edges(); ++i) out.right.e.push_back(emap(ce(i)));
    return out;
}

Span pullback(const Cospan& c) {
    const Morphism& f = c.left;   // B -> D
    const Morphism& g = c.right;  // C -> D
    if (!f.is_mono() || !g.is_mono())
        throw std::invalid_argument("pullback: implemented for mono legs");
    const Graph& B = *f.dom;
    const Graph& C = *g.dom;

    Graph A(B.types);
    std::vector<int> bv(B.n_vertices(), -1), cvv(C.n_vertices(), -1);
    std::vector<int> av_b, av_c;
    std::vector<int> d2c_v(f.cod->n_vertices(), -1), d2c_e(f.cod->n_edges(), -1);
    for (int i = 0; i < C.n_vertices(); ++i) d2c_v[g.v[i]] = i;
    for (int i = 0; i < C.n_edges(); ++i) d2c_e[g.e[i]] = i;

    for (int b = 0; b < B.n_vertices(); ++b) {
        int cc = d2c_v[f.v[b]];
        if (cc < 0) continue;
        int a = A.add_vertex(B.vtype[b]);
        bv[b] = a;
        av_b.push_back(b);
        av_c.push_back(cc);
    }
    std::vector<int> ae_b, ae_c;
    for (int eb = 0; eb < B.n_edges(); ++eb) {
        int ec = d2c_e[f.e[eb]];
        if (ec < 0) continue;
        std::vector<int> ends;
        bool ok = true;
        for (int u : B.edges[eb].ends) {
            if (bv[u] < 0) { ok = false; break; }
            ends.push_back(bv[u]);
        }
        if (!ok) continue;  // cannot happen for valid mono legs
        A.add_edge(B.edges[eb].type, std::move(ends));
        ae_b.push_back(eb);
        ae_c.push_back(ec);
    }

    GraphPtr Ap = make_graph(std::move(A));
    Span out;
    out.left.dom = Ap;
    out.left.cod = f.dom;
    out.left.v = av_b;
    out.left.e = ae_b;
    out.right.dom = Ap;
    out.right.cod = g.dom;
    out.right.v = av_c;
    out.right.e = ae_c;
    return out;
}

namespace {

// Shared complement construction. If `fail_on_dangling`, returns nullopt
// when a kept edge loses an endpoint (POC); otherwise drops such edges (FPC).
std::optional<std::pair<Morphism, Morphism>> complement(const Morphism& k, const Morphism& m,
                                                        bool fail_on_dangling) {
    if (!k.is_mono() || !m.is_mono())
        throw std::invalid_argument("complement: both arrows must be mono");
    const Graph& K = *k.dom;
    const Graph& I = *k.cod;
    const Graph& X = *m.cod;

    std::vector<char> keep_iv(I.n_vertices(), 1), keep_ie(I.n_edges(), 1);
    for (int kv = 0; kv < K.n_vertices(); ++kv) keep_iv[k.v[kv]] = 2;  // preserved
    for (int ke = 0; ke < K.n_edges(); ++ke) keep_ie[k.e[ke]] = 2;

    std::vector<char> del_v(X.n_vertices(), 0), del_e(X.n_edges(), 0);
    for (int iv = 0; iv < I.n_vertices(); ++iv)
        if (keep_iv[iv] == 1) del_v[m.v[iv]] = 1;
    for (int ie = 0; ie < I.n_edges(); ++ie)
        if (keep_ie[ie] == 1) del_e[m.e[ie]] = 1;

    for (int xe = 0; xe < X.n_edges(); ++xe) {
        if (del_e[xe]) continue;
        for (int u : X.edges[xe].ends)
            if (del_v[u]) {
                if (fail_on_dangling) return std::nullopt;
                del_e[xe] = 1;
                break;
            }
    }

    Graph C(X.types);
    std::vector<int> xv2c(X.n_vertices(), -1), xe2c(X.n_edges(), -1);
    for (int v = 0; v < X.n_vertices(); ++v)
        if (!del_v[v]) xv2c[v] = C.add_vertex(X.vtype[v]);
    for (int e = 0; e < X.n_edges(); ++e) {
        if (del_e[e]) continue;
        std::vector<int> ends;
        for (int u : X.edges[e].ends) ends.push_back(xv2c[u]);
        xe2c[e] = C.add_edge(X.edges[e].type, std::move(ends));
    }
    GraphPtr Cp = make_graph(std::move(C));

    Morphism kc;  // K -> C
    kc.dom = k.dom;
    kc.cod = Cp;
    for (int kv = 0; kv < K.n_vertices(); ++kv) kc.v.push_back(xv2c[m.v[k.v[kv]]]);
    for (int ke = 0; ke < K.n_edges(); ++ke) kc.e.push_back(xe2c[m.e[k.e[ke]]]);

    Morphism cx;  // C -> X
    cx.dom = Cp;
    cx.cod = m.cod;
    for (int v = 0; v < X.n_vertices(); ++v)
        if (xv2c[v] >= 0) cx.v.push_back(v);
    for (int e = 0; e < X.n_edges(); ++e)
        if (xe2c[e] >= 0) cx.e.push_back(e);
    return std::make_pair(std::move(kc), std::move(cx));
}

}  // namespace

std::optional<std::pair<Morphism, Morphism>> pushout_complement(const Morphism& k,
                                                                const Morphism& m) {
    return complement(k, m, /*fail_on_dangling=*/true);
}

std::pair<Morphism, Morphism> final_pullback_complement(const Morphism& k, const Morphism& m) {
    return *complement(k, m, /*fail_on_dangling=*/false);
}

std::pair<Morphism, Morphism> epi_mono_factorize(const Morphism& f) {
    const Graph& A = *f.dom;
    const Graph& B = *f.cod;
    std::vector<int> bv2m(B.n_vertices(), -1), be2m(B.n_edges(), -1);
    Graph M(B.types);
    for (int v = 0; v < B.n_vertices(); ++v) {
        bool hit = std::find(f.v.begin(), f.v.end(), v) != f.v.end();
        if (hit) bv2m[v] = M.add_vertex(B.vtype[v]);
    }
    for (int e = 0; e < B.n_edges(); ++e) {
        bool hit = std::find(f.e.begin(), f.e.end(), e) != f.e.end();
        if (!hit) continue;
        std::vector<int> ends;
        for (int u : B.edges[e].ends) ends.push_back(bv2m[u]);
        be2m[e] = M.add_edge(B.edges[e].type, std::move(ends));
    }
    GraphPtr Mp = make_graph(std::move(M));

    Morphism epi;
    epi.dom = f.dom;
    epi.cod = Mp;
    for (int v = 0; v < A.n_vertices(); ++v) epi.v.push_back(bv2m[f.v[v]]);
    for (int e = 0; e < A.n_edges(); ++e) epi.e.push_back(be2m[f.e[e]]);

    Morphism mono;
    mono.dom = Mp;
    mono.cod = f.cod;
    for (int v = 0; v < B.n_vertices(); ++v)
        if (bv2m[v] >= 0) mono.v.push_back(v);
    for (int e = 0; e < B.n_edges(); ++e)
        if (be2m[e] >= 0) mono.e.push_back(e);
    return {std::move(epi), std::move(mono)};
}

Cospan disjoint_union(const GraphPtr& a, const GraphPtr& b) {
    Graph D(a->types);
    Cospan out;
    out.left.dom = a;
    out.right.dom = b;
    for (int v = 0; v < a->n_vertices(); ++v) out.left.v.push_back(D.add_vertex(a->vtype[v]));
    for (int v = 0; v < b->n_vertices(); ++v) out.right.v.push_back(D.add_vertex(b->vtype[v]));
    for (int e = 0; e < a->n_edges(); ++e) {
        std::vector<int> ends;
        for (int u : a->edges[e].ends) ends.push_back(out.left.v[u]);
        out.left.e.push_back(D.add_edge(a->edges[e].type, std::move(ends)));
    }
    for (int e = 0; e < b->n_edges(); ++e) {
        std::vector<int> ends;
        for (int u : b->edges[e].ends) ends.push_back(out.right.v[u]);
        out.right.e.push_back(D.add_edge(b->edges[e].type, std::move(ends)));
    }
    GraphPtr Dp = make_graph(std::move(D));
    out.left.cod = Dp;
    out.right.cod = Dp;
    return out;
}

std::optional<Morphism> pushout_mediator(const Span& s, const Cospan& computed,
                                         const Cospan& other) {
    (void)s;
    const Graph& D = *computed.left.cod;
    Morphism u;
    u.dom = computed.left.cod;
    u.cod = other.left.cod;
    u.v.assign(D.n_vertices(), -1);
    u.e.assign(D.n_edges(), -1);
    auto feed = [&](const Morphism& into_d, const Morphism& into_e) {
        for (size_t i = 0; i < into_d.v.size(); ++i) {
            int& slot = u.v[into_d.v[i]];
            if (slot >= 0 && slot != into_e.v[i]) return false;
            slot = into_e.v[i];
        }
        for (size_t i = 0; i < into_d.e.size(); ++i) {
            int& slot = u.e[into_d.e[i]];
            if (slot >= 0 && slot != into_e.e[i]) return false;
            slot = into_e.e[i];
        }
        return true;
    };
    if (!feed(computed.left, other.left)) return std::nullopt;
    if (!feed(computed.right, other.right)) return std::nullopt;
    for (int x : u.v)
        if (x < 0) return std::nullopt;  // cospan not jointly epi
    for (int x : u.e)
        if (x < 0) return std::nullopt;
    if (!u.is_valid()) return std::nullopt;
    return u;
}

}  // namespace graphrw
