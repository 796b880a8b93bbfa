#pragma once

#include "graphrw/morphism.hpp"

namespace graphrw {

struct MonoSearch {
    // Partial pins: pin_v[p] = host vertex for pattern vertex p, or -1.
    // Empty vectors mean no pins. pin_e analogous for edges.
    std::vector<int> pin_v;
    std::vector<int> pin_e;
    bool edge_reflecting = false;
    int limit = -1;  // stop after this many matches; -1 = all
};

// All componentwise-injective morphisms pattern -> host, in deterministic
// order: lexicographic in the vertex image tuple (pattern index order),
// then lexicographic in the edge image tuple.
std::vector<Morphism> enumerate_monos(const GraphPtr& pattern, const GraphPtr& host,
                                      const MonoSearch& opt = {});

// All monos g : cod(f) -> cod(h) with g∘f = h. f and h share a domain;
// f must be mono.
std::vector<Morphism> extensions(const Morphism& f, const Morphism& h);

std::vector<Morphism> automorphisms(const GraphPtr& g);

}  // namespace graphrw
