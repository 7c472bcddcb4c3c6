#pragma once

#include <hisd/decomposition.hh>
#include <hisd/graph.hh>

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hisd::testing
{
    inline auto graph_of(int n, std::vector<std::pair<int, int>> edges) -> Graph
    {
        return Graph::from_edges(n, edges);
    }

    inline auto complete(int n) -> Graph
    {
        Graph g(n);
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                g.add_edge(u, v);
        return g;
    }

    inline auto path(int n) -> Graph
    {
        Graph g(n);
        for (int v = 0 ; v + 1 < n ; ++v)
            g.add_edge(v, v + 1);
        return g;
    }

    inline auto cycle(int n) -> Graph
    {
        Graph g = path(n);
        g.add_edge(n - 1, 0);
        return g;
    }

    inline auto star(int leaves) -> Graph
    {
        Graph g(leaves + 1);
        for (int v = 1 ; v <= leaves ; ++v)
            g.add_edge(0, v);
        return g;
    }

    inline auto petersen() -> Graph
    {
        Graph g(10);
        for (int i = 0 ; i < 5 ; ++i) {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        return g;
    }

    inline auto random_graph(int n, double p, std::mt19937_64 & rng) -> Graph
    {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        Graph g(n);
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                if (coin(rng) < p)
                    g.add_edge(u, v);
        return g;
    }

    inline auto random_coloring(int n, int labels, std::mt19937_64 & rng) -> Coloring
    {
        std::uniform_int_distribution<int> pick(0, labels - 1);
        Coloring c(n);
        for (auto & x : c)
            x = pick(rng);
        return c;
    }

    /// Graph number `code` on n vertices: bit i of code decides the i-th pair (u < v).
    inline auto graph_from_code(int n, std::uint64_t code) -> Graph
    {
        Graph g(n);
        int bit = 0;
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v, ++bit)
                if ((code >> bit) & 1u)
                    g.add_edge(u, v);
        return g;
    }

    inline auto nice_of(const Graph & g) -> NiceTreeDecomposition
    {
        return niceify(heuristic_decomposition(g), g);
    }

    inline auto vertices_of_mask(int n, std::uint64_t mask) -> std::vector<int>
    {
        std::vector<int> out;
        for (int v = 0 ; v < n ; ++v)
            if ((mask >> v) & 1u)
                out.push_back(v);
        return out;
    }

    /// Smallest deletion set by trying every subset in order of size. Uses only
    /// is_pattern_free, so it is independent of the oracle's search.
    inline auto brute_force_deletion(const Graph & g, const Pattern & h, const Coloring * coloring = nullptr) -> int
    {
        int n = g.vertex_count();
        int best = n;
        for (std::uint64_t mask = 0 ; mask < (std::uint64_t{1} << n) ; ++mask) {
            int size = __builtin_popcountll(mask);
            if (size >= best)
                continue;
            if (is_pattern_free(g, h, vertices_of_mask(n, ~mask), coloring))
                best = size;
        }
        return best;
    }

    inline auto brute_force_independence(const Graph & g) -> int
    {
        int n = g.vertex_count();
        int best = 0;
        for (std::uint64_t mask = 0 ; mask < (std::uint64_t{1} << n) ; ++mask) {
            auto s = vertices_of_mask(n, mask);
            if (static_cast<int>(s.size()) <= best)
                continue;
            bool independent = true;
            for (std::size_t i = 0 ; i < s.size() && independent ; ++i)
                for (std::size_t j = i + 1 ; j < s.size() && independent ; ++j)
                    independent = ! g.adjacent(s[i], s[j]);
            if (independent)
                best = static_cast<int>(s.size());
        }
        return best;
    }

    /// Interval graph on n random intervals; always chordal.
    inline auto random_interval_graph(int n, int span, std::mt19937_64 & rng) -> Graph
    {
        std::uniform_int_distribution<int> start(0, span), length(0, span / 3);
        std::vector<std::pair<int, int>> iv(n);
        for (auto & [a, b] : iv) {
            a = start(rng);
            b = a + length(rng);
        }
        Graph g(n);
        for (int u = 0 ; u < n ; ++u)
            for (int v = u + 1 ; v < n ; ++v)
                if (std::max(iv[u].first, iv[v].first) <= std::min(iv[u].second, iv[v].second))
                    g.add_edge(u, v);
        return g;
    }
}
