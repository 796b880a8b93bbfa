#include "doctest.h"
#include "graphrw/graph.hpp"
#include "graphrw/morphism.hpp"
#include "helpers.hpp"

using namespace graphrw;
using namespace testutil;

TEST_CASE("graph validation catches type errors") {
    auto tg = std::make_shared<TypeGraph>();
    int a = tg->add_vertex_type("a");
    int b = tg->add_vertex_type("b");
    int ab = tg->add_edge_type("ab", {a, b});
    int la = tg->add_edge_type("la", {a});

    Graph g(tg);
    int v0 = g.add_vertex(a);
    int v1 = g.add_vertex(b);
    g.add_edge(ab, {v0, v1});
    g.add_edge(la, {v0});
    CHECK(g.validate());

    Graph bad(tg);
    int w0 = bad.add_vertex(a);
    int w1 = bad.add_vertex(a);
    bad.add_edge(ab, {w0, w1});  // wrong endpoint types
    CHECK_FALSE(bad.validate());

    Graph bad2(tg);
    int u = bad2.add_vertex(b);
    bad2.add_edge(la, {u});  // loop type on wrong vertex type
    CHECK_FALSE(bad2.validate());
}

TEST_CASE("incidence collapses duplicate endpoints to a loop") {
    auto tg = std::make_shared<TypeGraph>();
    int a = tg->add_vertex_type("a");
    int loop = tg->add_edge_type("l", {a});
    Graph g(tg);
    int v = g.add_vertex(a);
    g.add_edge(loop, {v, v});
    CHECK(g.edges[0].ends == std::vector<int>{v});
    CHECK(g.validate());
}

TEST_CASE("morphism validity and classes") {
    auto p2 = path(2);
    auto p3 = path(3);
    Morphism m = sub(p2, p3, {0, 1}, {0});
    CHECK(m.is_valid());
    CHECK(m.is_mono());
    CHECK_FALSE(m.is_epi());

    Morphism id3 = identity(p3);
    CHECK(id3.is_iso());

    // Non-structure-preserving: edge mapped to non-incident edge.
    Morphism bad = sub(p2, p3, {0, 1}, {1});
    CHECK_FALSE(bad.is_valid());

    Morphism c = compose(m, id3);
    CHECK(c.is_valid());
    CHECK(c.v == m.v);
}

TEST_CASE("edge reflecting detection") {
    auto p2 = path(2);
    auto m2 = multi_edge(2);
    // Map the single edge onto one of the two parallel edges: the other
    // parallel edge has both endpoints in the image, so not reflecting.
    Morphism m = sub(p2, m2, {0, 1}, {0});
    CHECK(m.is_valid());
    CHECK_FALSE(m.is_edge_reflecting());

    auto d2 = discrete(2);
    auto p3 = path(3);
    // The two path ends are not adjacent: induced subgraph is discrete.
    Morphism n = sub(d2, p3, {0, 2}, {});
    CHECK(n.is_valid());
    CHECK(n.is_edge_reflecting());
    // Adjacent pair without the edge: not reflecting.
    Morphism q = sub(d2, p3, {0, 1}, {});
    CHECK_FALSE(q.is_edge_reflecting());
}
