#include "graphrw/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace graphrw {

namespace {

// Refines `color` to a stable coloring; colors are dense ints whose order
// is determined by (old color, neighborhood signature).
void refine(const Graph& g, std::vector<int>& color) {
    const int n = g.n_vertices();
    if (n == 0) return;
    while (true) {
        // signature: (color, sorted incident (etype, other-end colors or -1 for loop))
        std::vector<std::pair<std::vector<int>, int>> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::vector<int>> inc;
            for (int e = 0; e < g.n_edges(); ++e) {
                const auto& ends = g.edges[e].ends;
                bool touches = false;
                for (int u : ends)
                    if (u == v) touches = true;
                if (!touches) continue;
                std::vector<int> entry{g.edges[e].type};
                if (ends.size() == 1)
                    entry.push_back(-1);  // loop marker
                else
                    entry.push_back(color[ends[0] == v ? ends[1] : ends[0]]);
                inc.push_back(std::move(entry));
            }
            std::sort(inc.begin(), inc.end());
            std::vector<int> flat{color[v]};
            for (auto& i : inc) {
                flat.push_back(i[0]);
                flat.push_back(i[1]);
            }
            sig[v] = {std::move(flat), v};
        }
        std::map<std::vector<int>, int> order;
        for (auto& [s, v] : sig) order[s];
        int next = 0;
        for (auto& [s, idx] : order) idx = next++;
        int old_count = *std::max_element(color.begin(), color.end()) + 1;
        for (auto& [s, v] : sig) color[v] = order[s];
        int new_count = *std::max_element(color.begin(), color.end()) + 1;
        if (new_count == old_count) return;
    }
}

std::string serialize(const Graph& g, const std::vector<int>& label, int pin_count) {
    const int n = g.n_vertices();
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v) inv[label[v]] = v;
    std::ostringstream os;
    os << "n" << n << "p" << pin_count << ";";
    for (int l = 0; l < n; ++l) os << g.vtype[inv[l]] << ",";
    os << ";";
    std::vector<std::vector<int>> es;
    for (const auto& e : g.edges) {
        std::vector<int> row{e.type};
        std::vector<int> ends;
        for (int u : e.ends) ends.push_back(label[u]);
        std::sort(ends.begin(), ends.end());
        for (int u : ends) row.push_back(u);
        es.push_back(std::move(row));
    }
    std::sort(es.begin(), es.end());
    for (auto& row : es) {
        for (int x : row) os << x << ",";
        os << ";";
    }
    return os.str();
}

bool is_discrete(const std::vector<int>& color) {
    std::vector<int> c = color;
    std::sort(c.begin(), c.end());
    return std::adjacent_find(c.begin(), c.end()) == c.end();
}

struct Canonicalizer {
    const Graph& g;
    int pin_count;
    std::string best;
    std::vector<int> best_label;

    void leaf(const std::vector<int>& color) {
        std::vector<int> label(color.begin(), color.end());
        std::string code = serialize(g, label, pin_count);
        if (best.empty() || code < best) {
            best = std::move(code);
            best_label = std::move(label);
        }
    }

    void search(std::vector<int> color) {
        refine(g, color);
        if (is_discrete(color)) {
            leaf(color);
            return;
        }
        // First non-singleton cell in color order.
        const int n = g.n_vertices();
        std::map<int, std::vector<int>> cells;
        for (int v = 0; v < n; ++v) cells[color[v]].push_back(v);
        for (auto& [c, members] : cells) {
            if (members.size() < 2) continue;
            // Degree-0 cells are fully interchangeable: branch once.
            bool all_isolated = true;
            for (int v : members)
                if (!g.incident(v).empty()) { all_isolated = false; break; }
            size_t take = all_isolated ? 1 : members.size();
            for (size_t i = 0; i < take; ++i) {
                std::vector<int> child = color;
                // Individualize by shifting all colors >= c up by one.
                for (int v = 0; v < n; ++v)
                    if (child[v] >= c) ++child[v];
                child[members[i]] = c;
                search(std::move(child));
            }
            return;
        }
    }
};

CanonResult canonical_whole(const Graph& g, const std::vector<int>& pins) {
    const int n = g.n_vertices();
    // Initial colors: pinned vertices first (by pin value, each its own
    // color), then free vertices grouped by type.
    std::vector<std::pair<int, int>> pinned;  // (pin value, vertex)
    int pin_count = 0;
    if (!pins.empty())
        for (int v = 0; v < n; ++v)
            if (pins[v] >= 0) pinned.push_back({pins[v], v});
    std::sort(pinned.begin(), pinned.end());
    pin_count = static_cast<int>(pinned.size());

    std::vector<int> color(n, -1);
    for (int i = 0; i < pin_count; ++i) color[pinned[i].second] = i;
    for (int v = 0; v < n; ++v)
        if (color[v] < 0) color[v] = pin_count + g.vtype[v];

    // Compact colors.
    {
        std::map<int, int> remap;
        for (int v = 0; v < n; ++v) remap[color[v]];
        int next = 0;
        for (auto& [k, idx] : remap) idx = next++;
        for (int v = 0; v < n; ++v) color[v] = remap[color[v]];
    }

    Canonicalizer c{g, pin_count};
    if (n == 0) {
        c.best = serialize(g, {}, 0);
        return {c.best, {}};
    }
    c.search(color);
    return {c.best, c.best_label};
}

// Note: refinement preserves the invariant that pinned vertices keep the
// lowest colors (their signatures start with strictly smaller colors), so
// pinned labels remain 0..k-1 in pin order at every leaf.

std::vector<std::vector<int>> components(const Graph& g) {
    const int n = g.n_vertices();
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = nc;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e : g.incident(v))
                for (int u : g.edges[e].ends)
                    if (comp[u] < 0) {
                        comp[u] = nc;
                        stack.push_back(u);
                    }
        }
        ++nc;
    }
    std::vector<std::vector<int>> out(nc);
    for (int v = 0; v < n; ++v) out[comp[v]].push_back(v);
    return out;
}

}  // namespace

CanonResult canonical_form(const Graph& g, const std::vector<int>& pins) {
    if (!pins.empty()) return canonical_whole(g, pins);
    auto comps = components(g);
    if (comps.size() <= 1) return canonical_whole(g, {});

    // Canonicalize per component and sort component codes; identical
    // components then cost one small search each instead of a joint one.
    struct Piece {
        std::string code;
        std::vector<int> verts;       // original ids, component order
        std::vector<int> local_label; // local id -> canonical label
    };
    std::vector<Piece> pieces;
    for (auto& verts : comps) {
        Graph sub(g.types);
        std::vector<int> to_local(g.n_vertices(), -1);
        for (int v : verts) to_local[v] = sub.add_vertex(g.vtype[v]);
        for (const auto& e : g.edges) {
            if (to_local[e.ends[0]] < 0) continue;
            std::vector<int> ends;
            for (int u : e.ends) ends.push_back(to_local[u]);
            sub.add_edge(e.type, std::move(ends));
        }
        auto r = canonical_whole(sub, {});
        pieces.push_back({std::move(r.code), verts, std::move(r.label)});
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.code < b.code; });

    std::string code;
    std::vector<int> label(g.n_vertices(), -1);
    int base = 0;
    for (auto& p : pieces) {
        code += "[" + p.code + "]";
        for (size_t i = 0; i < p.verts.size(); ++i)
            label[p.verts[i]] = base + p.local_label[i];
        base += static_cast<int>(p.verts.size());
    }
    return {code, label};
}

std::string canonical_code(const Graph& g) { return canonical_form(g).code; }

std::string to_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    }
    return out;
}

}  // namespace graphrw
