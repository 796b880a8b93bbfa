#include "graphrw/graph.hpp"

#include <algorithm>

namespace graphrw {

int TypeGraph::add_vertex_type(const std::string& name) {
    vertex_types.push_back({name});
    return static_cast<int>(vertex_types.size()) - 1;
}

int TypeGraph::add_edge_type(const std::string& name, std::vector<int> ends) {
    std::sort(ends.begin(), ends.end());
    edge_types.push_back({name, std::move(ends)});
    return static_cast<int>(edge_types.size()) - 1;
}

int TypeGraph::vertex_type(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(vertex_types.size()); ++i)
        if (vertex_types[i].name == name) return i;
    return -1;
}

int TypeGraph::edge_type(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(edge_types.size()); ++i)
        if (edge_types[i].name == name) return i;
    return -1;
}

bool TypeGraph::operator==(const TypeGraph& o) const {
    if (vertex_types.size() != o.vertex_types.size() || edge_types.size() != o.edge_types.size())
        return false;
    for (size_t i = 0; i < vertex_types.size(); ++i)
        if (vertex_types[i].name != o.vertex_types[i].name) return false;
    for (size_t i = 0; i < edge_types.size(); ++i)
        if (edge_types[i].name != o.edge_types[i].name || edge_types[i].ends != o.edge_types[i].ends)
            return false;
    return true;
}

int Graph::add_vertex(int type) {
    vtype.push_back(type);
    return n_vertices() - 1;
}

int Graph::add_edge(int type, std::vector<int> ends) {
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    edges.push_back({type, std::move(ends)});
    return n_edges() - 1;
}

std::vector<int> Graph::incident(int v) const {
    std::vector<int> out;
    for (int e = 0; e < n_edges(); ++e)
        for (int u : edges[e].ends)
            if (u == v) { out.push_back(e); break; }
    return out;
}

bool Graph::validate(std::string* why) const {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (!types) return fail("no type graph");
    for (int v = 0; v < n_vertices(); ++v)
        if (vtype[v] < 0 || vtype[v] >= static_cast<int>(types->vertex_types.size()))
            return fail("vertex " + std::to_string(v) + ": unknown type");
    for (int e = 0; e < n_edges(); ++e) {
        const Edge& ed = edges[e];
        if (ed.type < 0 || ed.type >= static_cast<int>(types->edge_types.size()))
            return fail("edge " + std::to_string(e) + ": unknown type");
        const auto& slots = types->edge_types[ed.type].ends;
        if (ed.ends.size() != slots.size())
            return fail("edge " + std::to_string(e) + ": arity mismatch");
        if (ed.ends.empty() || ed.ends.size() > 2)
            return fail("edge " + std::to_string(e) + ": bad incidence size");
        std::vector<int> have;
        for (int v : ed.ends) {
            if (v < 0 || v >= n_vertices())
                return fail("edge " + std::to_string(e) + ": dangling endpoint");
            have.push_back(vtype[v]);
        }
        std::sort(have.begin(), have.end());
        if (have != slots)
            return fail("edge " + std::to_string(e) + ": endpoint types mismatch");
        if (ed.ends.size() == 2 && ed.ends[0] == ed.ends[1])
            return fail("edge " + std::to_string(e) + ": duplicate endpoint");
        if (!std::is_sorted(ed.ends.begin(), ed.ends.end()))
            return fail("edge " + std::to_string(e) + ": unsorted incidence");
    }
    return true;
}

GraphPtr make_graph(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

GraphPtr empty_graph(TypeGraphPtr t) { return make_graph(Graph(std::move(t))); }

TypeGraphPtr plain_type_graph() {
    auto tg = std::make_shared<TypeGraph>();
    int v = tg->add_vertex_type("v");
    tg->add_edge_type("e", {v, v});
    return tg;
}

}  // namespace graphrw
