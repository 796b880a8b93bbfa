#pragma once

#include <optional>

#include "graphrw/morphism.hpp"

namespace graphrw {

// B <- A -> C  |->  B -> D <- C. Requires at least one leg of the span to
// be mono; the result object reuses B's ids first, then unmerged C items.
Cospan pushout(const Span& s);

// B -> D <- C  |->  B <- A -> C. A is the fibered product.
Span pullback(const Cospan& c);

// Given k : K -> I (mono) and m : I -> X (mono), the complement K -> C -> X
// with pushout square, when the dangling condition holds.
std::optional<std::pair<Morphism, Morphism>> pushout_complement(const Morphism& k,
                                                                const Morphism& m);

// Final pullback complement of the same shape; total on monos. Keeps the
// complement vertices of the POC and drops edges left dangling.
std::pair<Morphism, Morphism> final_pullback_complement(const Morphism& k, const Morphism& m);

// f = m ∘ e with e epi, m mono (image factorization).
std::pair<Morphism, Morphism> epi_mono_factorize(const Morphism& f);

// A + B with the two injections.
Cospan disjoint_union(const GraphPtr& a, const GraphPtr& b);

// Mediating morphism D -> E for a computed pushout cospan (B->D<-C) and a
// competing commuting cospan (B->E<-C); nullopt if none exists (then the
// computed square is not a pushout). Used to audit universal properties.
std::optional<Morphism> pushout_mediator(const Span& s, const Cospan& computed,
                                         const Cospan& other);

}  // namespace graphrw
