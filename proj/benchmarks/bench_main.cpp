#include <benchmark/benchmark.h>

#include <random>

#include "graphrw/algebra.hpp"
#include "graphrw/canonical.hpp"
#include "graphrw/match.hpp"
#include "graphrw/stochastic.hpp"

using namespace graphrw;

namespace {

TypeGraphPtr one_type() {
    auto t = std::make_shared<TypeGraph>();
    t->add_vertex_type("v");
    t->add_edge_type("e", {0, 0});
    return t;
}

// Deterministic sparse host: n vertices, ~2n edges, no multiedges.
GraphPtr random_host(const TypeGraphPtr& t, int n, unsigned seed) {
    std::mt19937 rng(seed);
    Graph g(t);
    for (int i = 0; i < n; ++i) g.add_vertex(0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::set<std::pair<int, int>> seen;
    while ((int)seen.size() < 2 * n) {
        int a = pick(rng), b = pick(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (seen.insert({a, b}).second) g.add_edge(0, {a, b});
    }
    return make_graph(std::move(g));
}

GraphPtr path(const TypeGraphPtr& t, int n) {
    Graph g(t);
    for (int i = 0; i < n; ++i) g.add_vertex(0);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(0, {i, i + 1});
    return make_graph(std::move(g));
}

GraphPtr discrete(const TypeGraphPtr& t, int n) {
    Graph g(t);
    for (int i = 0; i < n; ++i) g.add_vertex(0);
    return make_graph(std::move(g));
}

Rule edge_swap_rule(const TypeGraphPtr& t) {
    // Deletes one edge of a path of three and adds the closing edge.
    auto in = path(t, 3);
    Graph og(t);
    for (int i = 0; i < 3; ++i) og.add_vertex(0);
    og.add_edge(0, {0, 2});
    return make_rule(make_graph(std::move(og)), discrete(t, 3), in,
                     {0, 1, 2}, {}, {0, 1, 2}, {});
}

void bm_enumerate_monos(benchmark::State& state) {
    auto t = one_type();
    auto pattern = path(t, (int)state.range(0));
    auto host = random_host(t, 40, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_monos(pattern, host, {}));
}
BENCHMARK(bm_enumerate_monos)->Arg(2)->Arg(3)->Arg(4);

void bm_canonical_code(benchmark::State& state) {
    auto t = one_type();
    auto host = random_host(t, (int)state.range(0), 11);
    for (auto _ : state) benchmark::DoNotOptimize(canonical_code(*host));
}
BENCHMARK(bm_canonical_code)->Arg(10)->Arg(40)->Arg(160);

void bm_compositions(benchmark::State& state) {
    auto t = one_type();
    auto r = edge_swap_rule(t);
    auto mode = state.range(0) ? OverlapMode::Full : OverlapMode::EdgeReflecting;
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_compositions(r, r, Semantics::DPO, mode));
}
BENCHMARK(bm_compositions)->Arg(0)->Arg(1);

void bm_commutator(benchmark::State& state) {
    auto t = one_type();
    auto in = path(t, 3);
    Graph og(t);
    for (int i = 0; i < 3; ++i) og.add_vertex(0);
    og.add_edge(0, {0, 2});
    auto out = make_graph(std::move(og));
    auto k = discrete(t, 3);
    auto a = delta(make_rule(out, k, in, {0, 1, 2}, {}, {0, 1, 2}, {}));
    auto b = delta(make_rule(in, k, out, {0, 1, 2}, {}, {0, 1, 2}, {}));
    for (auto _ : state)
        benchmark::DoNotOptimize(commutator(a, b, Semantics::DPO));
}
BENCHMARK(bm_commutator);

void bm_ssa_birth_death(benchmark::State& state) {
    auto t = one_type();
    auto e0 = discrete(t, 0);
    auto d1 = discrete(t, 1);
    std::vector<Transition> trans = {
        {Rational(1), make_rule(d1, e0, e0, {}, {}, {}, {})},
        {Rational(1), make_rule(e0, e0, d1, {}, {}, {}, {})}};
    std::vector<Element> obs = {delta(identity_rule(d1))};
    unsigned seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            ssa_simulate(trans, e0, 10.0, seed++, obs, Semantics::SqPO));
}
BENCHMARK(bm_ssa_birth_death);

}  // namespace

BENCHMARK_MAIN();
