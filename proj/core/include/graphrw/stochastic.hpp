#pragma once

#include <cstdint>
#include <string>

#include "graphrw/algebra.hpp"

namespace graphrw {

// Formal linear combination of iso classes of graphs, keyed by canonical
// code with one representative per class.
struct StateVector {
    struct Entry {
        Rational coeff;
        GraphPtr graph;
    };
    std::map<std::string, Entry> terms;

    bool is_zero() const { return terms.empty(); }
};

StateVector state(const GraphPtr& g);
StateVector state_sum(const StateVector& a, const StateVector& b);
StateVector state_scale(const StateVector& a, const Rational& k);

// Linear action of an element: every admissible match of every term
// applied to every basis state.
StateVector represent(const Element& a, const StateVector& v, Semantics sem);

// Termwise replacement of each rule by its input-identity observable:
// (O <- K -> I) becomes (I <- K -> I) under DPO and (I <- I -> I) under
// SqPO, keeping conditions and coefficients.
Element jump_closure(const Element& a, Semantics sem);

// True when every term acts diagonally (output leg mirrors input leg).
bool is_observable(const Element& a);

// Sum over terms of coefficient times admissible-match count in X.
Rational observable_value(const Element& obs, const GraphPtr& X, Semantics sem);

struct Transition {
    Rational rate;
    Rule rule;
};

// CTMC generator H = H_off - O(H_off). With a constraint, every rule is
// replaced by its preserving completion; rules whose guaranteeing
// completion is FALSE are dropped with a warning.
struct Generator {
    Semantics sem = Semantics::SqPO;
    CondPtr constraint;                   // restricted mode when set
    std::vector<Transition> transitions;  // after completion
    Element h_off;                        // sum of rate * delta(rule)
    Element h_diag;                       // jump closure of h_off
    std::vector<std::string> warnings;
};

Generator build_generator(std::vector<Transition> transitions, Semantics sem,
                          const CondPtr& c_empty = nullptr);

// Coefficient sum of the generator acting on |X> (0 for a conservative
// generator).
Rational generator_row_sum(const Generator& g, const GraphPtr& X);

// Mean evolution system over pattern-counting observables.
struct ODESystem {
    struct Variable {
        std::string name;
        std::string key;     // rule_key of the underlying observable rule
        Element observable;  // coefficient times delta(rule)
    };
    struct Equation {
        Rational constant;
        std::map<int, Rational> coeffs;        // variable index -> coefficient
        std::vector<std::string> unresolved;   // keys past the budget
    };
    enum class Status { Closed, NonClosed };

    std::vector<Variable> variables;
    std::vector<Equation> equations;  // one per variable, same order
    Status status = Status::Closed;
    std::vector<std::string> discovery;  // keys of adopted observables, in order
};

// d/dt <O> = <jump_closure([O, H_off])>, expressed in the observable
// basis; jump-closed terms outside the basis are adopted as new
// variables until the budget is exhausted.
ODESystem derive_mean_odes(const Generator& g, const std::vector<Element>& seeds,
                           int budget = 64);

// Moments up to the given order: products of the seed observables are
// expanded through the rule algebra product and their atomic terms added
// to the seed set.
ODESystem moment_odes(const Generator& g, const std::vector<Element>& seeds, int order,
                      int budget = 64);

struct Trajectory {
    std::vector<std::string> names;
    std::vector<double> t;
    std::vector<std::vector<double>> values;  // one row per sample time
    bool absorbed = false;            // SSA ended in a zero-propensity state
    bool constraint_violated = false; // SSA visited an invalid state
};

// Fixed-step explicit 4th-order integration of a (linear) mean system.
Trajectory integrate(const ODESystem& sys, const std::vector<double>& init, double t_end,
                     double dt = 1e-3);

// Exact-jump CTMC sampling. Observable values are recorded at time 0 and
// after every jump; the final row is at t_end. When a constraint is
// given every visited state is checked against it.
Trajectory ssa_simulate(const std::vector<Transition>& transitions, const GraphPtr& x0,
                        double t_end, std::uint64_t seed,
                        const std::vector<Element>& observables, Semantics sem,
                        const CondPtr& c_empty = nullptr);

}  // namespace graphrw
