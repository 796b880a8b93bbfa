#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace graphrw {

// Typing universe for graphs. Edge types declare their endpoint vertex
// types: two slots for a regular edge, one slot for a loop type.
struct TypeGraph {
    struct VertexType {
        std::string name;
    };
    // Endpoint slots are stored sorted so that an undirected edge type
    // between types (a, b) equals the one declared as (b, a).
    struct EdgeType {
        std::string name;
        std::vector<int> ends;  // size 1 (loop) or 2, sorted
    };

    std::vector<VertexType> vertex_types;
    std::vector<EdgeType> edge_types;

    int add_vertex_type(const std::string& name);
    int add_edge_type(const std::string& name, std::vector<int> ends);

    int vertex_type(const std::string& name) const;  // -1 if absent
    int edge_type(const std::string& name) const;    // -1 if absent

    bool operator==(const TypeGraph& o) const;
};

using TypeGraphPtr = std::shared_ptr<const TypeGraph>;

// Finite undirected typed multigraph. Edges are individuals: parallel
// edges are distinct indexed objects. Incidence is a sorted list of one
// (loop) or two distinct vertex ids.
struct Graph {
    TypeGraphPtr types;
    std::vector<int> vtype;  // vertex id -> vertex type
    struct Edge {
        int type;
        std::vector<int> ends;  // sorted, size 1 or 2
    };
    std::vector<Edge> edges;

    Graph() = default;
    explicit Graph(TypeGraphPtr t) : types(std::move(t)) {}

    int n_vertices() const { return static_cast<int>(vtype.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }

    int add_vertex(int type);
    int add_edge(int type, std::vector<int> ends);

    // Edge ids incident to vertex v (loops listed once).
    std::vector<int> incident(int v) const;

    // Checks type-consistency of every vertex and edge against `types`.
    bool validate(std::string* why = nullptr) const;
};

using GraphPtr = std::shared_ptr<const Graph>;

GraphPtr make_graph(Graph g);
GraphPtr empty_graph(TypeGraphPtr t);

// Untyped convenience universe: one vertex type "v", one edge type "e".
TypeGraphPtr plain_type_graph();

}  // namespace graphrw
