#include "graphrw/rule.hpp"

#include <stdexcept>

#include "graphrw/canonical.hpp"
#include "graphrw/constructions.hpp"
#include "graphrw/match.hpp"
#include "flatten.hpp"

namespace graphrw {

Rule make_rule(const GraphPtr& O, const GraphPtr& K, const GraphPtr& I, std::vector<int> ov,
               std::vector<int> oe, std::vector<int> iv, std::vector<int> ie, CondPtr cond) {
    Rule r;
    r.span.o.dom = K;
    r.span.o.cod = O;
    r.span.o.v = std::move(ov);
    r.span.o.e = std::move(oe);
    r.span.i.dom = K;
    r.span.i.cod = I;
    r.span.i.v = std::move(iv);
    r.span.i.e = std::move(ie);
    r.cond = std::move(cond);
    std::string why;
    if (!r.span.o.is_valid(&why) || !r.span.o.is_mono())
        throw std::invalid_argument("make_rule: bad output leg: " + why);
    if (!r.span.i.is_valid(&why) || !r.span.i.is_mono())
        throw std::invalid_argument("make_rule: bad input leg: " + why);
    return r;
}

Rule identity_rule(const GraphPtr& g, CondPtr cond) {
    Rule r;
    r.span.o = identity(g);
    r.span.i = identity(g);
    r.cond = std::move(cond);
    return r;
}

Rule empty_rule(const TypeGraphPtr& t) { return identity_rule(empty_graph(t)); }

std::vector<Morphism> admissible_matches(const Rule& r, const GraphPtr& host, Semantics sem) {
    std::vector<Morphism> out;
    for (auto& m : enumerate_monos(rule_input(r), host)) {
        if (sem == Semantics::DPO && !pushout_complement(r.span.i, m)) continue;
        if (!satisfies(m, r.cond)) continue;
        out.push_back(std::move(m));
    }
    return out;
}

std::optional<Derivation> direct_derivation(const Rule& r, const Morphism& match,
                                            Semantics sem) {
    std::optional<std::pair<Morphism, Morphism>> comp;
    if (sem == Semantics::DPO) {
        comp = pushout_complement(r.span.i, match);
        if (!comp) return std::nullopt;
    } else {
        comp = final_pullback_complement(r.span.i, match);
    }
    const auto& [k_kt, kx] = *comp;  // K -> K~, K~ -> X
    Span s;
    s.left = k_kt;      // K -> K~
    s.right = r.span.o; // K -> O
    auto po = pushout(s);  // K~ -> Y, O -> Y
    Derivation d;
    d.match = match;
    d.comatch = po.right;
    d.kx = kx;
    d.ky = po.left;
    d.result = po.left.cod;
    return d;
}

std::vector<Morphism> dpo_dagger_comatches(const Rule& r, const GraphPtr& host) {
    std::vector<Morphism> out;
    for (auto& m : enumerate_monos(rule_output(r), host))
        if (pushout_complement(r.span.o, m)) out.push_back(std::move(m));
    return out;
}

namespace {

Morphism from_empty_to(const GraphPtr& g) {
    Morphism m;
    m.dom = empty_graph(g->types);
    m.cod = g;
    return m;
}

CondPtr guaranteeing_condition(const Rule& r, const CondPtr& c_empty) {
    auto shifted_out = shift(from_empty_to(rule_output(r)), c_empty);
    auto transported = trans(r.span.o, r.span.i, shifted_out);
    auto shifted_in = shift(from_empty_to(rule_input(r)), c_empty);
    auto c = c_and({r.cond ? r.cond : c_true(), transported, shifted_in});
    return normalize(c, rule_input(r));
}

}  // namespace

Rule complete_guaranteeing(const Rule& r, const CondPtr& c_empty) {
    Rule out = r;
    out.cond = guaranteeing_condition(r, c_empty);
    return out;
}

std::optional<GuaranteeingAtoms> guaranteeing_atoms(const Rule& r, const CondPtr& c_empty) {
    const GraphPtr& I = rule_input(r);
    auto shifted_in = shift(from_empty_to(I), c_empty);
    auto transported = trans(r.span.o, r.span.i, shift(from_empty_to(rule_output(r)), c_empty));
    auto a = neg_atom_form(normalize(shifted_in, I), I, /*reduce=*/false);
    auto b = neg_atom_form(normalize(transported, I), I, /*reduce=*/false);
    if (!a || !b) return std::nullopt;
    return GuaranteeingAtoms{std::move(*a), std::move(*b)};
}

Rule complete_preserving(const Rule& r, const CondPtr& c_empty) {
    auto tilde = guaranteeing_condition(r, c_empty);
    Rule out = r;
    const GraphPtr& I = rule_input(r);
    auto atoms = neg_atom_form(tilde, I, /*reduce=*/false);
    if (atoms) {
        // On hosts satisfying the constraint, atoms whose own pattern
        // violates it can never be instantiated: drop them. This is the
        // complexity collapse of the preserving form.
        std::vector<CondPtr> kept;
        for (const auto& a : *atoms)
            if (satisfies_constraint(a.cod, c_empty)) kept.push_back(c_not(c_exists(a)));
        auto reduced = neg_atom_form(c_and(std::move(kept)), I, /*reduce=*/true);
        std::vector<CondPtr> parts;
        for (const auto& a : *reduced) parts.push_back(c_not(c_exists(a)));
        out.cond = normalize(c_and(std::move(parts)), I);
        return out;
    }
    if (is_false(tilde)) {
        // The guaranteeing form is already unsatisfiable; the implication
        // reduces to the negated shifted constraint.
        out.cond = normalize(c_not(shift(from_empty_to(I), c_empty)), I);
        return out;
    }
    // General implication form: shifted-constraint implies guaranteeing.
    auto shifted_in = shift(from_empty_to(I), c_empty);
    out.cond = normalize(c_not(c_and({shifted_in, c_not(tilde)})), I);
    return out;
}

std::string rule_key(const Rule& r) {
    detail::FlatBuilder fb;
    auto lo = fb.add_layer(*rule_output(r), detail::kCompO);
    auto lk = fb.add_layer(*rule_context(r), detail::kCompK);
    auto li = fb.add_layer(*rule_input(r), detail::kCompI);
    fb.add_map(detail::kFlatMapO, r.span.o, lk, lo);
    fb.add_map(detail::kFlatMapI, r.span.i, lk, li);
    auto cond = normalize(r.cond ? r.cond : c_true(), rule_input(r));
    fb.add_condition(cond, li);
    return canonical_form(fb.g, fb.pins).code;
}

std::string plain_rule_key(const PlainRule& r) {
    Rule plain;
    plain.span = r;
    plain.cond = c_true();
    return rule_key(plain);
}

}  // namespace graphrw
