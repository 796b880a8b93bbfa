#pragma once

#include <optional>
#include <vector>

#include "graphrw/morphism.hpp"

namespace graphrw {

// Nested application condition over a context graph ("root").
//   True            -- satisfied by every match out of the root
//   Exists(f, sub)  -- h : root -> Z satisfied iff some mono g : A -> Z
//                      with g∘f = h satisfies sub (sub is over A)
//   Not, And        -- boolean structure
// FALSE is represented as Not(True). Disjunction is derived:
// Or(cs) = Not(And(Not(c))).
struct Condition;
using CondPtr = std::shared_ptr<const Condition>;

struct Condition {
    enum class Op { True, Exists, Not, And };
    Op op = Op::True;
    Morphism mono;                  // Exists only: root -> pattern
    CondPtr sub;                    // Exists (may be null = True), Not
    std::vector<CondPtr> children;  // And
};

CondPtr c_true();
CondPtr c_false();
CondPtr c_exists(Morphism f, CondPtr sub = nullptr);
CondPtr c_not(CondPtr c);
CondPtr c_and(std::vector<CondPtr> cs);
CondPtr c_or(std::vector<CondPtr> cs);

bool is_true(const CondPtr& c);
bool is_false(const CondPtr& c);

// Satisfaction h ⊨ c for a match h : root -> Z.
bool satisfies(const Morphism& h, const CondPtr& c);

// Constraint satisfaction for a host: c is over the empty graph.
bool satisfies_constraint(const GraphPtr& host, const CondPtr& c);

// Shift along y : X -> Y (mono): returns a condition over Y with
// h ⊨ shift(y, c)  iff  h∘y ⊨ c  for all monos h out of Y.
CondPtr shift(const Morphism& y, const CondPtr& c);

// Transport over a rule span O <-o- K -i-> I: takes a condition over O to
// one over I such that matches correspond across direct derivations.
// Returns FALSE where the required pushout complement does not exist.
CondPtr trans(const Morphism& o, const Morphism& i, const CondPtr& c);

// Rewrites the root of a condition along an isomorphism old -> new root.
CondPtr relabel(const CondPtr& c, const Morphism& iso);

// Flattens/sorts/dedupes, eliminates True/False and double negation,
// resolves Exists along isomorphisms. `root` is the context object (used
// when the condition has no Exists of its own).
CondPtr normalize(const CondPtr& c, const GraphPtr& root);

// Canonical code of a condition relative to the root's identity labeling:
// codes are equal iff the conditions are isomorphic over the fixed root.
std::string condition_code(const CondPtr& c, const GraphPtr& root);

// Negative-atom fragment: conjunction of Not(Exists(f_k)) with trivial
// sub-conditions. Returns the subsumption-reduced atom list, or nullopt if
// the condition does not normalize into the fragment. TRUE gives an empty
// list; FALSE gives nullopt.
// `reduce` additionally drops atoms subsumed by a strictly stronger one.
std::optional<std::vector<Morphism>> neg_atom_form(const CondPtr& c, const GraphPtr& root,
                                                   bool reduce = true);

// First atom implies second (forbidding N is at least as strong)?
bool atom_implies(const Morphism& a, const Morphism& b);

enum class Equiv { Equal, Distinct, Unknown };
struct EquivResult {
    Equiv verdict;
    GraphPtr witness;  // distinguishing context when Distinct
};

// Three tiers: normal-form code equality; complete decision inside the
// negative-atom fragment; bounded-model search over contexts with at most
// `extra_v`/`extra_e` items beyond the largest mentioned graph (-1 =
// defaults 2/3).
EquivResult equivalent(const CondPtr& a, const CondPtr& b, const GraphPtr& root,
                       int extra_v = -1, int extra_e = -1);

// Contexts used by the bounded model: all extensions of `root` by at most
// kv vertices and ke edges, deduplicated up to root-fixing isomorphism.
std::vector<GraphPtr> enumerate_extensions(const GraphPtr& root, int kv, int ke);

}  // namespace graphrw
