#pragma once

#include <map>
#include <string>
#include <utility>

#include "graphrw/rule.hpp"

namespace graphrw {

// Positive structural constraint, kept as structured data: every mono
// from `pattern` into a state must extend along at least one of the
// listed embeddings. Checked directly instead of being encoded as a
// universally quantified condition.
struct PositiveConstraint {
    struct Clause {
        std::string name;
        GraphPtr pattern;
        std::vector<Morphism> any_of;  // embeddings pattern -> extension
    };
    std::vector<Clause> clauses;
};

bool satisfies_positive(const GraphPtr& X, const PositiveConstraint& cp);

struct Violation {
    std::string what;
    std::vector<int> vertices;  // witnessing vertices in the checked graph
};

struct Validation {
    bool ok = true;
    std::vector<Violation> violations;
};

// Checks X against the forbidden patterns (negative constraint) and the
// positive constraint, localizing every violation to witness vertices.
Validation validate_state(const GraphPtr& X, const std::vector<GraphPtr>& forbidden,
                          const PositiveConstraint& c_pos);

// Bounded inertness check: true when no admissible match of the rule in
// any of the given states produces a graph that validates again. Flags
// rules whose constraint-guaranteeing completion can never hold on
// states (the positive part is not representable as a condition, so this
// check is performed model-side over an enumerated state sample).
bool rule_inert(const Rule& r, Semantics sem, const std::vector<GraphPtr>& forbidden,
                const PositiveConstraint& c_pos, const std::vector<GraphPtr>& states);

// ---- Site-graph (agent/site/property) models ----------------------------

struct KappaModel {
    struct Site {
        std::string name;                     // globally unique across agents
        std::vector<std::string> properties;  // internal-state alternatives
    };
    struct Agent {
        std::string name;
        std::vector<Site> sites;
    };
    std::vector<Agent> agents;
    // Bindable site pairs (symmetric; stored once per unordered pair).
    std::vector<std::pair<std::string, std::string>> bonds;
};

struct NamedRule {
    std::string name;
    Rule rule;
};

struct CompiledKappa {
    KappaModel model;
    TypeGraphPtr types;
    std::vector<GraphPtr> forbidden;  // negative patterns
    CondPtr c_neg;                    // conjunction of their non-existence
    PositiveConstraint c_pos;
    std::vector<NamedRule> elementary;      // completed w.r.t. c_neg (SqPO)
    std::vector<GraphPtr> agent_instances;  // fully specified single agents
};

// Type-graph naming scheme: vertex types carry the agent and site names;
// incidence edge types are "site@Agent", property loops "site.prop", and
// link edge types "site-site" (pair sorted). Throws std::invalid_argument
// on duplicate or dangling declarations.
CompiledKappa kappa_compile(const KappaModel& m);

// Valid states with at most max_agents agents: disjoint unions of fully
// specified agent instances with every partial matching of bindable
// sites, deduplicated up to isomorphism.
std::vector<GraphPtr> kappa_states(const CompiledKappa& k, int max_agents);

// Incremental graph builder over a compiled site-graph model.
class KappaBuilder {
  public:
    explicit KappaBuilder(const CompiledKappa& k);
    int agent(const std::string& type);
    int site(int agent_vertex, const std::string& name);  // adds incidence edge
    void prop(int site_vertex, const std::string& property);
    void bind(int site_a, int site_b);
    GraphPtr build() const;

  private:
    const CompiledKappa& k_;
    Graph g_;
    std::map<int, std::string> vertex_name_;  // vertex -> declared type name
};

// ---- Chemistry models ----------------------------------------------------

// Bond patterns are multisets of bond type names ("-", "=", "#") around a
// single atom; the neighbours are untyped pattern vertices.
struct ChemModel {
    struct Atom {
        std::string name;
        std::vector<std::vector<std::string>> forbidden;
        std::vector<std::vector<std::string>> permitted;
    };
    std::vector<Atom> atoms;
};

struct CompiledChem {
    ChemModel model;
    TypeGraphPtr types;  // one vertex type "*", loop type per atom, 3 bonds
    std::vector<GraphPtr> forbidden;  // structural patterns + per-atom sets
    CondPtr c_neg;
    PositiveConstraint c_pos;
};

CompiledChem chem_compile(const ChemModel& m);

// Star pattern: an `atom`-typed centre (vertex 0) with one bond per
// listed type, each to a fresh vertex without an atom loop.
GraphPtr bond_star(const TypeGraphPtr& t, const std::string& atom,
                   const std::vector<std::string>& bonds);

class ChemBuilder {
  public:
    explicit ChemBuilder(TypeGraphPtr t);
    int atom(const std::string& type);
    int bare();  // pattern vertex without an atom loop
    void bond(int a, int b, const std::string& type);
    GraphPtr build() const;

  private:
    Graph g_;
};

}  // namespace graphrw
