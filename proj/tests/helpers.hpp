#pragma once

#include "graphrw/graph.hpp"
#include "graphrw/morphism.hpp"

namespace testutil {

using namespace graphrw;

inline TypeGraphPtr plain() {
    static TypeGraphPtr tg = plain_type_graph();
    return tg;
}

inline GraphPtr discrete(int n) {
    Graph g(plain());
    for (int i = 0; i < n; ++i) g.add_vertex(0);
    return make_graph(std::move(g));
}

inline GraphPtr path(int n) {  // n vertices, n-1 edges
    Graph g(plain());
    for (int i = 0; i < n; ++i) g.add_vertex(0);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(0, {i, i + 1});
    return make_graph(std::move(g));
}

inline GraphPtr cycle(int n) {
    Graph g(plain());
    for (int i = 0; i < n; ++i) g.add_vertex(0);
    for (int i = 0; i < n; ++i) g.add_edge(0, {i, (i + 1) % n});
    return make_graph(std::move(g));
}

// Two vertices joined by k parallel edges.
inline GraphPtr multi_edge(int k) {
    Graph g(plain());
    g.add_vertex(0);
    g.add_vertex(0);
    for (int i = 0; i < k; ++i) g.add_edge(0, {0, 1});
    return make_graph(std::move(g));
}

// Mono from a subset of vertices/edges given explicit images.
inline Morphism sub(const GraphPtr& dom, const GraphPtr& cod, std::vector<int> v,
                    std::vector<int> e) {
    Morphism m;
    m.dom = dom;
    m.cod = cod;
    m.v = std::move(v);
    m.e = std::move(e);
    return m;
}

}  // namespace testutil
