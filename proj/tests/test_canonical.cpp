#include "doctest.h"
#include "graphrw/canonical.hpp"
#include "graphrw/match.hpp"
#include "helpers.hpp"

using namespace graphrw;
using namespace testutil;

namespace {

GraphPtr permuted(const GraphPtr& g, const std::vector<int>& perm) {
    Graph h(g->types);
    std::vector<int> newid(g->n_vertices());
    for (int i = 0; i < g->n_vertices(); ++i) newid[perm[i]] = i;
    for (int i = 0; i < g->n_vertices(); ++i) h.add_vertex(g->vtype[newid[i]]);
    std::vector<int> inv(g->n_vertices());
    for (int i = 0; i < g->n_vertices(); ++i) inv[i] = perm[i];
    for (auto e = g->edges.rbegin(); e != g->edges.rend(); ++e) {
        std::vector<int> ends;
        for (int u : e->ends) ends.push_back(inv[u]);
        h.add_edge(e->type, std::move(ends));
    }
    return make_graph(std::move(h));
}

}  // namespace

TEST_CASE("relabelings share a canonical code") {
    auto g = path(4);
    CHECK(canonical_code(*g) == canonical_code(*permuted(g, {3, 1, 0, 2})));
    auto c = cycle(5);
    CHECK(canonical_code(*c) == canonical_code(*permuted(c, {2, 4, 0, 3, 1})));
    auto m = multi_edge(3);
    CHECK(canonical_code(*m) == canonical_code(*permuted(m, {1, 0})));
}

TEST_CASE("distinct multigraphs get distinct codes") {
    CHECK(canonical_code(*multi_edge(2)) != canonical_code(*path(2)));
    CHECK(canonical_code(*multi_edge(2)) != canonical_code(*multi_edge(3)));
    CHECK(canonical_code(*path(3)) != canonical_code(*cycle(3)));
    // Same vertex and edge counts, different shape: path4 vs star3.
    Graph star(plain());
    for (int i = 0; i < 4; ++i) star.add_vertex(0);
    star.add_edge(0, {0, 1});
    star.add_edge(0, {0, 2});
    star.add_edge(0, {0, 3});
    CHECK(canonical_code(*path(4)) != canonical_code(star));
}

TEST_CASE("canonical labeling is a valid relabeling") {
    auto g = cycle(4);
    auto r = canonical_form(*g);
    std::vector<int> seen(g->n_vertices(), 0);
    for (int l : r.label) {
        REQUIRE(l >= 0);
        REQUIRE(l < g->n_vertices());
        seen[l]++;
    }
    for (int s : seen) CHECK(s == 1);
}

TEST_CASE("pinned codes distinguish rooted graphs") {
    auto p3 = path(3);
    // Pin the middle vertex vs. an end vertex.
    CHECK(canonical_form(*p3, {0, -1, -1}).code != canonical_form(*p3, {-1, 0, -1}).code);
    // Pinning either symmetric end gives the same code.
    CHECK(canonical_form(*p3, {0, -1, -1}).code == canonical_form(*p3, {-1, -1, 0}).code);
}

TEST_CASE("multi component graphs") {
    // 3 disjoint edges == itself shuffled.
    Graph a(plain());
    for (int i = 0; i < 6; ++i) a.add_vertex(0);
    a.add_edge(0, {0, 1});
    a.add_edge(0, {2, 3});
    a.add_edge(0, {4, 5});
    Graph b(plain());
    for (int i = 0; i < 6; ++i) b.add_vertex(0);
    b.add_edge(0, {0, 5});
    b.add_edge(0, {1, 3});
    b.add_edge(0, {2, 4});
    CHECK(canonical_code(a) == canonical_code(b));
    // vs. a path of 3 plus isolated vertices.
    Graph c(plain());
    for (int i = 0; i < 6; ++i) c.add_vertex(0);
    c.add_edge(0, {0, 1});
    c.add_edge(0, {1, 2});
    c.add_edge(0, {3, 4});
    CHECK(canonical_code(a) != canonical_code(c));
}

TEST_CASE("brute force iso oracle agreement on small corpus") {
    // All graphs on 3 vertices with up to 2 parallel edges per pair:
    // codes must agree exactly when a mono-in-both-directions pair exists
    // with equal sizes (i.e. an isomorphism).
    std::vector<GraphPtr> corpus;
    for (int e01 = 0; e01 <= 2; ++e01)
        for (int e02 = 0; e02 <= 2; ++e02)
            for (int e12 = 0; e12 <= 2; ++e12) {
                Graph g(plain());
                for (int i = 0; i < 3; ++i) g.add_vertex(0);
                for (int k = 0; k < e01; ++k) g.add_edge(0, {0, 1});
                for (int k = 0; k < e02; ++k) g.add_edge(0, {0, 2});
                for (int k = 0; k < e12; ++k) g.add_edge(0, {1, 2});
                corpus.push_back(make_graph(std::move(g)));
            }
    for (auto& x : corpus)
        for (auto& y : corpus) {
            bool iso = x->n_vertices() == y->n_vertices() && x->n_edges() == y->n_edges() &&
                       !enumerate_monos(x, y).empty();
            CHECK((canonical_code(*x) == canonical_code(*y)) == iso);
        }
}
