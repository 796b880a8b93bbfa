#include "graphrw/morphism.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace graphrw {

bool Morphism::is_valid(std::string* why) const {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (!dom || !cod) return fail("missing object");
    if (static_cast<int>(v.size()) != dom->n_vertices()) return fail("vertex map size");
    if (static_cast<int>(e.size()) != dom->n_edges()) return fail("edge map size");
    for (int x = 0; x < dom->n_vertices(); ++x) {
        if (v[x] < 0 || v[x] >= cod->n_vertices()) return fail("vertex image out of range");
        if (dom->vtype[x] != cod->vtype[v[x]]) return fail("vertex type not preserved");
    }
    for (int x = 0; x < dom->n_edges(); ++x) {
        if (e[x] < 0 || e[x] >= cod->n_edges()) return fail("edge image out of range");
        const auto& de = dom->edges[x];
        const auto& ce = cod->edges[e[x]];
        if (de.type != ce.type) return fail("edge type not preserved");
        std::vector<int> img;
        for (int u : de.ends) img.push_back(v[u]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (img != ce.ends) return fail("incidence not preserved");
    }
    return true;
}

bool Morphism::is_mono() const {
    std::set<int> sv(v.begin(), v.end());
    if (sv.size() != v.size()) return false;
    std::set<int> se(e.begin(), e.end());
    return se.size() == e.size();
}

bool Morphism::is_epi() const {
    std::set<int> sv(v.begin(), v.end());
    std::set<int> se(e.begin(), e.end());
    return static_cast<int>(sv.size()) == cod->n_vertices() &&
           static_cast<int>(se.size()) == cod->n_edges();
}

bool Morphism::is_iso() const { return is_mono() && is_epi(); }

bool Morphism::is_edge_reflecting() const {
    std::set<int> vimg(v.begin(), v.end());
    std::set<int> eimg(e.begin(), e.end());
    for (int ce = 0; ce < cod->n_edges(); ++ce) {
        if (eimg.count(ce)) continue;
        bool inside = true;
        for (int u : cod->edges[ce].ends)
            if (!vimg.count(u)) { inside = false; break; }
        if (inside) return false;
    }
    return true;
}

Morphism identity(const GraphPtr& g) {
    Morphism m;
    m.dom = g;
    m.cod = g;
    m.v.resize(g->n_vertices());
    m.e.resize(g->n_edges());
    for (int i = 0; i < g->n_vertices(); ++i) m.v[i] = i;
    for (int i = 0; i < g->n_edges(); ++i) m.e[i] = i;
    return m;
}

Morphism compose(const Morphism& f, const Morphism& g) {
    Morphism h;
    h.dom = f.dom;
    h.cod = g.cod;
    h.v.resize(f.v.size());
    h.e.resize(f.e.size());
    for (size_t i = 0; i < f.v.size(); ++i) h.v[i] = g.v[f.v[i]];
    for (size_t i = 0; i < f.e.size(); ++i) h.e[i] = g.e[f.e[i]];
    return h;
}

std::optional<Morphism> inverse(const Morphism& iso) {
    if (!iso.is_iso()) return std::nullopt;
    Morphism m;
    m.dom = iso.cod;
    m.cod = iso.dom;
    m.v.assign(iso.cod->n_vertices(), -1);
    m.e.assign(iso.cod->n_edges(), -1);
    for (size_t i = 0; i < iso.v.size(); ++i) m.v[iso.v[i]] = static_cast<int>(i);
    for (size_t i = 0; i < iso.e.size(); ++i) m.e[iso.e[i]] = static_cast<int>(i);
    return m;
}

}  // namespace graphrw
