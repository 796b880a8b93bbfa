#include <random>

#include "graphrw/match.hpp"
#include "graphrw/stochastic.hpp"

namespace graphrw {

Trajectory ssa_simulate(const std::vector<Transition>& transitions, const GraphPtr& x0,
                        double t_end, std::uint64_t seed,
                        const std::vector<Element>& observables, Semantics sem,
                        const CondPtr& c_empty) {
    Trajectory tr;
    for (size_t i = 0; i < observables.size(); ++i) tr.names.push_back("o" + std::to_string(i));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    GraphPtr x = x0;
    double t = 0;
    auto record = [&](double at) {
        std::vector<double> row;
        row.reserve(observables.size());
        for (const auto& o : observables) row.push_back(observable_value(o, x, sem).to_double());
        tr.t.push_back(at);
        tr.values.push_back(std::move(row));
    };
    auto check = [&]() {
        if (c_empty && !satisfies_constraint(x, c_empty)) tr.constraint_violated = true;
    };
    check();
    record(0.0);

    while (true) {
        std::vector<std::vector<Morphism>> matches;
        double total = 0;
        for (const auto& trn : transitions) {
            matches.push_back(admissible_matches(trn.rule, x, sem));
            total += trn.rate.to_double() * static_cast<double>(matches.back().size());
        }
        if (total <= 0) {
            tr.absorbed = true;
            break;
        }
        double wait = -std::log(1.0 - uni(rng)) / total;
        if (t + wait > t_end) break;
        t += wait;

        double pick = uni(rng) * total;
        size_t j = 0;
        for (; j + 1 < transitions.size(); ++j) {
            double block = transitions[j].rate.to_double() *
                           static_cast<double>(matches[j].size());
            if (pick < block) break;
            pick -= block;
        }
        // Guard against empty match lists at the chosen index.
        while (matches[j].empty()) ++j;
        auto m = static_cast<size_t>(pick / transitions[j].rate.to_double());
        if (m >= matches[j].size()) m = matches[j].size() - 1;
        auto d = direct_derivation(transitions[j].rule, matches[j][m], sem);
        if (!d) {
            tr.absorbed = true;
            break;
        }
        x = d->result;
        check();
        record(t);
    }
    record(t_end);
    return tr;
}

}  // namespace graphrw
