#include "graphrw/stochastic.hpp"

#include <deque>
#include <stdexcept>

#include "graphrw/canonical.hpp"
#include "graphrw/match.hpp"

namespace graphrw {

StateVector state(const GraphPtr& g) {
    StateVector v;
    v.terms.emplace(canonical_code(*g), StateVector::Entry{Rational(1), g});
    return v;
}

StateVector state_sum(const StateVector& a, const StateVector& b) {
    StateVector v = a;
    for (const auto& [k, e] : b.terms) {
        auto [it, fresh] = v.terms.emplace(k, e);
        if (!fresh) it->second.coeff += e.coeff;
    }
    for (auto it = v.terms.begin(); it != v.terms.end();)
        it = it->second.coeff.is_zero() ? v.terms.erase(it) : std::next(it);
    return v;
}

StateVector state_scale(const StateVector& a, const Rational& k) {
    StateVector v;
    if (k.is_zero()) return v;
    for (const auto& [key, e] : a.terms)
        v.terms.emplace(key, StateVector::Entry{e.coeff * k, e.graph});
    return v;
}

StateVector represent(const Element& a, const StateVector& v, Semantics sem) {
    StateVector out;
    for (const auto& [xk, entry] : v.terms)
        for (const auto& [rk, term] : a.terms)
            for (const auto& m : admissible_matches(term.rule, entry.graph, sem)) {
                auto d = direct_derivation(term.rule, m, sem);
                if (!d) continue;
                auto code = canonical_code(*d->result);
                auto [it, fresh] = out.terms.emplace(
                    code, StateVector::Entry{entry.coeff * term.coeff, d->result});
                if (!fresh) it->second.coeff += entry.coeff * term.coeff;
            }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.coeff.is_zero() ? out.terms.erase(it) : std::next(it);
    return out;
}

Element jump_closure(const Element& a, Semantics sem) {
    Element out;
    out.warnings = a.warnings;
    for (const auto& [k, t] : a.terms) {
        Rule jc;
        if (sem == Semantics::DPO) {
            jc.span.o = t.rule.span.i;
            jc.span.i = t.rule.span.i;
        } else {
            jc.span.o = identity(rule_input(t.rule));
            jc.span.i = jc.span.o;
        }
        jc.cond = t.rule.cond;
        auto key = rule_key(jc);
        auto [it, fresh] = out.terms.emplace(key, Term{t.coeff, std::move(jc)});
        if (!fresh) it->second.coeff += t.coeff;
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.coeff.is_zero() ? out.terms.erase(it) : std::next(it);
    return out;
}

bool is_observable(const Element& a) {
    for (const auto& [k, t] : a.terms) {
        const auto& s = t.rule.span;
        if (s.o.cod.get() != s.i.cod.get() || s.o.v != s.i.v || s.o.e != s.i.e) return false;
    }
    return true;
}

Rational observable_value(const Element& obs, const GraphPtr& X, Semantics sem) {
    Rational total(0);
    for (const auto& [k, t] : obs.terms)
        total += t.coeff *
                 Rational(static_cast<std::int64_t>(admissible_matches(t.rule, X, sem).size()));
    return total;
}

Generator build_generator(std::vector<Transition> transitions, Semantics sem,
                          const CondPtr& c_empty) {
    Generator g;
    g.sem = sem;
    g.constraint = c_empty;
    for (auto& tr : transitions) {
        if (tr.rate.num <= 0) throw std::invalid_argument("build_generator: rate must be > 0");
        if (c_empty) {
            if (is_false(complete_guaranteeing(tr.rule, c_empty).cond)) {
                g.warnings.push_back("dropped transition incompatible with the constraint: " +
                                     rule_key(tr.rule));
                continue;
            }
            tr.rule = complete_preserving(tr.rule, c_empty);
        }
        g.h_off = sum(g.h_off, scale(delta(tr.rule), tr.rate));
        g.transitions.push_back(std::move(tr));
    }
    g.h_diag = jump_closure(g.h_off, sem);
    return g;
}

Rational generator_row_sum(const Generator& g, const GraphPtr& X) {
    Rational total(0);
    for (const auto& [k, e] : represent(g.h_off, state(X), g.sem).terms) total += e.coeff;
    return total - observable_value(g.h_diag, X, g.sem);
}

namespace {

bool is_constant_observable(const Rule& r) { return rule_input(r)->n_vertices() == 0; }

// Single-term coefficient of a variable's observable element.
Rational var_coeff(const Element& e) { return e.terms.begin()->second.coeff; }

}  // namespace

ODESystem derive_mean_odes(const Generator& g, const std::vector<Element>& seeds, int budget) {
    ODESystem sys;
    std::map<std::string, int> index;
    auto add_var = [&](const std::string& key, Element obs) {
        int idx = static_cast<int>(sys.variables.size());
        index.emplace(key, idx);
        sys.variables.push_back({"m" + std::to_string(idx), key, std::move(obs)});
        return idx;
    };
    std::deque<int> work;
    for (const auto& seed : seeds)
        for (const auto& [key, t] : seed.terms) {
            if (index.count(key)) continue;
            Element atom;
            atom.terms.emplace(key, t);
            work.push_back(add_var(key, std::move(atom)));
        }
    sys.equations.resize(sys.variables.size());

    const auto mode = g.constraint ? OverlapMode::Restricted : OverlapMode::Full;
    while (!work.empty()) {
        int idx = work.front();
        work.pop_front();
        auto closed = jump_closure(
            commutator(sys.variables[idx].observable, g.h_off, g.sem, mode, g.constraint),
            g.sem);
        ODESystem::Equation eq;
        for (const auto& [key, t] : closed.terms) {
            if (is_constant_observable(t.rule)) {
                eq.constant += t.coeff;
                continue;
            }
            auto it = index.find(key);
            if (it == index.end()) {
                if (static_cast<int>(sys.discovery.size()) >= budget) {
                    eq.unresolved.push_back(key);
                    sys.status = ODESystem::Status::NonClosed;
                    continue;
                }
                int j = add_var(key, delta(t.rule));
                sys.equations.emplace_back();
                sys.discovery.push_back(key);
                work.push_back(j);
                it = index.find(key);
            }
            eq.coeffs[it->second] += t.coeff / var_coeff(sys.variables[it->second].observable);
        }
        for (auto c = eq.coeffs.begin(); c != eq.coeffs.end();)
            c = c->second.is_zero() ? eq.coeffs.erase(c) : std::next(c);
        sys.equations[idx] = std::move(eq);
    }
    return sys;
}

ODESystem moment_odes(const Generator& g, const std::vector<Element>& seeds, int order,
                      int budget) {
    if (order < 1) throw std::invalid_argument("moment_odes: order must be >= 1");
    std::vector<Element> all = seeds;
    std::vector<Element> prev = seeds;
    for (int k = 2; k <= order; ++k) {
        const auto mode = g.constraint ? OverlapMode::Restricted : OverlapMode::Full;
        std::vector<Element> next;
        for (const auto& p : prev)
            for (const auto& s : seeds)
                next.push_back(product(p, s, g.sem, mode, g.constraint));
        all.insert(all.end(), next.begin(), next.end());
        prev = std::move(next);
    }
    return derive_mean_odes(g, all, budget);
}

}  // namespace graphrw
