#include <hisd/decomposition.hh>
#include <hisd/folio.hh>
#include <hisd/special.hh>

#include <benchmark/benchmark.h>

#include <random>

namespace
{
    auto random_graph(int n, double p, std::uint64_t seed) -> hisd::Graph
    {
        std::mt19937_64 rng{seed};
        std::uniform_real_distribution<double> coin{0.0, 1.0};
        hisd::Graph g(n);
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                if (coin(rng) < p)
                    g.add_edge(u, v);
        return g;
    }

    // Arguments: vertex count, thread count. Threads = 1 is the serial reference.
    auto bench_folio(benchmark::State & state, const char * pattern) -> void
    {
        auto g = random_graph(static_cast<int>(state.range(0)), 0.3, 17);
        auto ntd = hisd::niceify(hisd::heuristic_decomposition(g), g);
        auto h = hisd::parse_pattern(pattern);
        hisd::SolveOptions options;
        options.witness = false;
        options.threads = static_cast<int>(state.range(1));
        for (auto _ : state)
            benchmark::DoNotOptimize(hisd::solve_folio(g, ntd, h, nullptr, options).opt);
        state.counters["width"] = ntd.width();
    }

    auto bench_clique(benchmark::State & state) -> void
    {
        auto g = random_graph(static_cast<int>(state.range(0)), 0.3, 23);
        auto ntd = hisd::niceify(hisd::heuristic_decomposition(g), g);
        int threads = static_cast<int>(state.range(1));
        for (auto _ : state)
            benchmark::DoNotOptimize(hisd::solve_clique_hitting(g, ntd, 3, nullptr, threads));
    }
}

BENCHMARK_CAPTURE(bench_folio, p3, "P3")->ArgsProduct({{16, 22}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(bench_folio, c4, "C4")->ArgsProduct({{14, 18}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bench_clique)->ArgsProduct({{24, 30}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
