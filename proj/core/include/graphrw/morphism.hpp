#pragma once

#include <optional>

#include "graphrw/graph.hpp"

namespace graphrw {

// Structure-preserving map between graphs over the same type graph.
// Vertex and edge maps are total; incidence is preserved as image sets.
struct Morphism {
    GraphPtr dom;
    GraphPtr cod;
    std::vector<int> v;  // dom vertex -> cod vertex
    std::vector<int> e;  // dom edge -> cod edge

    bool is_valid(std::string* why = nullptr) const;
    bool is_mono() const;  // componentwise injective
    bool is_epi() const;
    bool is_iso() const;
    // Every cod edge whose endpoints all lie in the vertex image has an
    // edge preimage.
    bool is_edge_reflecting() const;
};

Morphism identity(const GraphPtr& g);
Morphism compose(const Morphism& f, const Morphism& g);  // g after f: dom(f) -> cod(g)
std::optional<Morphism> inverse(const Morphism& iso);

// Span: pair of morphisms out of a common domain (left.dom == right.dom).
struct Span {
    Morphism left, right;
};

// Cospan: pair of morphisms into a common codomain (left.cod == right.cod).
struct Cospan {
    Morphism left, right;
};

}  // namespace graphrw
