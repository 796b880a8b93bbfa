#pragma once

#include <string>

#include "graphrw/graph.hpp"

namespace graphrw {

struct CanonResult {
    std::string code;        // equal iff graphs are isomorphic (pin-respecting)
    std::vector<int> label;  // old vertex id -> canonical label
};

// Canonical form by color refinement seeded with (vertex type, incident
// edge-type profile) plus backtracking over the remaining color cells.
// `pins` (optional, size n) forces distinct labels 0..k-1 onto pinned
// vertices in increasing pin-value order; two pinned graphs get equal
// codes iff an isomorphism exists that maps pin i to pin i.
CanonResult canonical_form(const Graph& g, const std::vector<int>& pins = {});

std::string canonical_code(const Graph& g);

// Hex rendering used at external interfaces.
std::string to_hex(const std::string& bytes);

}  // namespace graphrw
