#pragma once

#include <map>

#include "graphrw/rational.hpp"
#include "graphrw/rule.hpp"

namespace graphrw {

// Admissibility regimes for partial overlaps.
//   Full           -- every mono span whose composition squares succeed
//                     and whose composite condition is satisfiable
//   Restricted     -- additionally the constraint shifted onto the
//                     composite input must be satisfiable, and composite
//                     conditions are emitted in preserving form
//   EdgeReflecting -- Full restricted to spans whose legs reflect edges
enum class OverlapMode { Full, Restricted, EdgeReflecting };

// Mono span I2 <- M -> O1: a partial overlap of the input interface of
// the later rule r2 with the output interface of the earlier rule r1.
struct Overlap {
    Morphism into_i2;  // M -> I2
    Morphism into_o1;  // M -> O1
};

// One overlap candidate together with its composition outcome.
struct Composition {
    Overlap mu;
    std::optional<Rule> composite;  // nullopt when rejected
    std::string verdict;            // "ok" or the rejection reason
    bool edge_reflecting = false;   // both overlap legs reflect edges
};

// Every overlap of r2 into r1 (one representative per span isomorphism
// class: the O1 leg is a subgraph inclusion), composed and classified.
// Restricted mode requires the global constraint c_empty.
std::vector<Composition> enumerate_compositions(const Rule& r2, const Rule& r1, Semantics sem,
                                                OverlapMode mode,
                                                const CondPtr& c_empty = nullptr);

// The admissible overlaps only.
std::vector<Overlap> partial_overlaps(const Rule& r2, const Rule& r1, Semantics sem,
                                      OverlapMode mode, const CondPtr& c_empty = nullptr);

// Composite of r2 after r1 along mu. nullopt when a complement square
// fails or the composite condition collapses to FALSE.
std::optional<Rule> compose_along(const Rule& r2, const Overlap& mu, const Rule& r1,
                                  Semantics sem);

// Formal linear combination of rule classes with exact coefficients.
// Keys are rule_key values; each term keeps one representative rule.
struct Term {
    Rational coeff;
    Rule rule;
};

struct Element {
    std::map<std::string, Term> terms;
    // Pairs of terms whose conditions could not be decided equivalent or
    // distinct stay unmerged; each such case is reported here.
    std::vector<std::string> warnings;

    bool is_zero() const { return terms.empty(); }
};

Element delta(const Rule& r);
Element scale(const Element& a, const Rational& k);
Element sum(const Element& a, const Element& b);

// Bilinear product: every term pair contributes one composite per
// admissible overlap of the r2 term into the r1 term. Terms are merged
// by canonical key and then by decidable condition equivalence.
Element product(const Element& a2, const Element& a1, Semantics sem,
                OverlapMode mode = OverlapMode::Full, const CondPtr& c_empty = nullptr);

// product(a, b) - product(b, a).
Element commutator(const Element& a, const Element& b, Semantics sem,
                   OverlapMode mode = OverlapMode::Full, const CondPtr& c_empty = nullptr);

// Iterated commutator: q = 0 gives b, q = 1 gives commutator(a, b).
Element nested_adjoint(const Element& a, const Element& b, int q, Semantics sem,
                       OverlapMode mode = OverlapMode::Full, const CondPtr& c_empty = nullptr);

// All subgraph inclusions of g (every edge subset together with every
// vertex subset containing the chosen endpoints), in deterministic order.
std::vector<Morphism> subgraphs(const GraphPtr& g);

// Isomorphisms between the input interfaces that extend to isomorphisms
// of the whole rule spans (condition not considered).
std::vector<Morphism> span_isos(const Rule& from, const Rule& to);

}  // namespace graphrw
