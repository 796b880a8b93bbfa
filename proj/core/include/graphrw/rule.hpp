#pragma once

#include "graphrw/condition.hpp"

namespace graphrw {

// Rewrite span in input-to-output orientation: O <-o- K -i-> I.
// Applying the rule to a host consumes a match of I and produces O.
struct PlainRule {
    Morphism o;  // K -> O
    Morphism i;  // K -> I
};

struct Rule {
    PlainRule span;
    CondPtr cond;  // application condition over the input I
};

enum class Semantics { DPO, SqPO };

inline const GraphPtr& rule_input(const Rule& r) { return r.span.i.cod; }
inline const GraphPtr& rule_output(const Rule& r) { return r.span.o.cod; }
inline const GraphPtr& rule_context(const Rule& r) { return r.span.i.dom; }

// Convenience constructors. Vertex/edge maps are given K -> O and K -> I.
Rule make_rule(const GraphPtr& O, const GraphPtr& K, const GraphPtr& I,
               std::vector<int> ov, std::vector<int> oe, std::vector<int> iv,
               std::vector<int> ie, CondPtr cond = nullptr);

// (g <- g -> g): the rule that matches g and changes nothing.
Rule identity_rule(const GraphPtr& g, CondPtr cond = nullptr);

// (∅ <- ∅ -> ∅): unit of the rule algebra.
Rule empty_rule(const TypeGraphPtr& t);

struct Derivation {
    Morphism match;    // I -> X
    Morphism comatch;  // O -> Y
    Morphism kx;       // complement -> X
    Morphism ky;       // complement -> Y
    GraphPtr result;   // Y
};

// Monos I -> host satisfying the application condition and, under DPO,
// the gluing (dangling) condition.
std::vector<Morphism> admissible_matches(const Rule& r, const GraphPtr& host, Semantics sem);

// Applies the rule at a match. Returns nullopt only when the DPO gluing
// condition fails (callers using admissible_matches never see that).
std::optional<Derivation> direct_derivation(const Rule& r, const Morphism& match,
                                            Semantics sem);

// Output-side matches: monos O -> host admitting the reverse complement
// (DPO-dagger direction).
std::vector<Morphism> dpo_dagger_comatches(const Rule& r, const GraphPtr& host);

// Guaranteeing completion w.r.t. a constraint over the empty graph:
// conjoins the transported output constraint and the shifted input
// constraint onto the rule's condition.
Rule complete_guaranteeing(const Rule& r, const CondPtr& c_empty);

// The two atom families the guaranteeing completion is built from, kept
// separate (they typically overlap as iso-classes, so the normalized
// condition of complete_guaranteeing can have fewer atoms than their
// combined count). nullopt when either conjunct leaves the
// negative-atom fragment.
struct GuaranteeingAtoms {
    std::vector<Morphism> shifted_input;  // Shift of the constraint onto I
    std::vector<Morphism> transported;    // Trans of its Shift onto O
};
std::optional<GuaranteeingAtoms> guaranteeing_atoms(const Rule& r, const CondPtr& c_empty);

// Preserving completion: guaranteeing conjuncts weakened by the promise
// that the host already satisfies the constraint. When everything lies in
// the negative-atom fragment this collapses to the atoms of the
// guaranteeing form whose patterns themselves satisfy the constraint.
Rule complete_preserving(const Rule& r, const CondPtr& c_empty);

// Canonical key: equal iff the rules with conditions are isomorphic
// (compatible isos on O, K, I commuting with the legs, condition carried
// along). Conditions are normalized before encoding.
std::string rule_key(const Rule& r);

// Key ignoring the condition (used for diagnostics).
std::string plain_rule_key(const PlainRule& r);

}  // namespace graphrw
