#pragma once

// Internal: encodes spans/conditions as a single vertex-colored graph so
// that one canonicalization call yields iso-class keys for rules with
// conditions. Edge items become vertices ("incidence graph" encoding) so
// that maps between edges are expressible as flat edges.

#include "graphrw/condition.hpp"

namespace graphrw::detail {

// Flat edge type codes.
inline constexpr int kFlatInc = 0;    // edge item -> endpoint item
inline constexpr int kFlatMapO = 1;   // K item -> O item
inline constexpr int kFlatMapI = 2;   // K item -> I item
inline constexpr int kFlatCMap = 3;   // condition mono: parent item -> child item
inline constexpr int kFlatOwns = 4;   // exists node -> owned object item
inline constexpr int kFlatTree = 5;   // condition tree: parent node -> child node

// Layer component codes.
inline constexpr int kCompO = 0;
inline constexpr int kCompK = 1;
inline constexpr int kCompI = 2;
inline constexpr int kCompCond = 3;

struct FlatLayer {
    std::vector<int> vitem;  // object vertex -> flat vertex id
    std::vector<int> eitem;  // object edge -> flat vertex id
};

struct FlatBuilder {
    Graph g;                // types left null; only int codes matter
    std::vector<int> pins;  // parallel to g vertices; -1 = free

    int add_vertex(int code, int pin = -1) {
        int id = g.add_vertex(code);
        pins.push_back(pin);
        return id;
    }
    void connect(int type, int a, int b) { g.add_edge(type, {a, b}); }

    FlatLayer add_layer(const Graph& obj, int comp, bool pinned = false) {
        FlatLayer L;
        for (int v = 0; v < obj.n_vertices(); ++v)
            L.vitem.push_back(add_vertex(1'000'000 + comp * 100'000 + obj.vtype[v],
                                         pinned ? v : -1));
        for (int e = 0; e < obj.n_edges(); ++e) {
            int it = add_vertex(2'000'000 + comp * 100'000 + obj.edges[e].type,
                                pinned ? obj.n_vertices() + e : -1);
            L.eitem.push_back(it);
            for (int u : obj.edges[e].ends) connect(kFlatInc, it, L.vitem[u]);
        }
        return L;
    }

    void add_map(int type, const Morphism& f, const FlatLayer& dom, const FlatLayer& cod) {
        for (size_t v = 0; v < f.v.size(); ++v) connect(type, dom.vitem[v], cod.vitem[f.v[v]]);
        for (size_t e = 0; e < f.e.size(); ++e) connect(type, dom.eitem[e], cod.eitem[f.e[e]]);
    }

    // Appends the condition tree rooted at `c` whose context is `parent`.
    // Node and layer codes carry the nesting depth, which orients the
    // (undirected) tree and map edges inside the flat encoding.
    int add_condition(const CondPtr& c, const FlatLayer& parent, int depth = 0) {
        using Op = Condition::Op;
        auto node_code = [&](int op) { return 3'000'000 + depth * 10 + op; };
        if (!c || c->op == Op::True) return add_vertex(node_code(0));
        if (c->op == Op::Not) {
            int node = add_vertex(node_code(2));
            connect(kFlatTree, node, add_condition(c->sub, parent, depth + 1));
            return node;
        }
        if (c->op == Op::And) {
            int node = add_vertex(node_code(3));
            for (const auto& ch : c->children)
                connect(kFlatTree, node, add_condition(ch, parent, depth + 1));
            return node;
        }
        // Exists: its target object lives one level deeper than its context.
        int node = add_vertex(node_code(1));
        FlatLayer target = add_layer(*c->mono.cod, kCompCond + depth);
        for (int it : target.vitem) connect(kFlatOwns, node, it);
        for (int it : target.eitem) connect(kFlatOwns, node, it);
        add_map(kFlatCMap, c->mono, parent, target);
        if (c->sub && c->sub->op != Op::True)
            connect(kFlatTree, node, add_condition(c->sub, target, depth + 1));
        return node;
    }
};

}  // namespace graphrw::detail
