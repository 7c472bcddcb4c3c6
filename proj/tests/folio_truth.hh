#pragma once

#include "support.hh"

#include <hisd/folio.hh>

#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace hisd::testing
{
    using FolioKey = std::pair<std::uint64_t, RootedFolio>;

    struct FolioKeyLess
    {
        auto operator() (const FolioKey & a, const FolioKey & b) const -> bool
        {
            return std::tie(a.first, a.second.local, a.second.triples) < std::tie(b.first, b.second.local, b.second.triples);
        }
    };

    using FolioTable = std::map<FolioKey, int, FolioKeyLess>;

    /// Vertices introduced somewhere in the subtree of each node.
    inline auto subtree_vertices(const NiceTreeDecomposition & ntd) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> below(ntd.node_count());
        for (int x = 0 ; x < ntd.node_count() ; ++x) {
            auto & node = ntd.nodes[x];
            for (int c : node.children)
                below[x].insert(below[x].end(), below[c].begin(), below[c].end());
            if (node.kind == NodeKind::Introduce)
                below[x].push_back(node.vertex);
            std::sort(below[x].begin(), below[x].end());
            below[x].erase(std::unique(below[x].begin(), below[x].end()), below[x].end());
        }
        return below;
    }

    /// Folio of a feasible partial solution computed from its definition: local
    /// proper subpatterns inside the bag, and every induced copy of a proper
    /// subpattern with at least one vertex already forgotten.
    inline auto direct_folio(const Graph & g, const Pattern & h, const Coloring * coloring,
            const std::vector<int> & bag, const std::vector<int> & rest) -> RootedFolio
    {
        RootedFolio folio;
        std::vector<int> bag_rest;
        for (int v : bag)
            if (std::binary_search(rest.begin(), rest.end(), v))
                bag_rest.push_back(v);
        auto all = h.all_labels();
        for (LabelSet d = 1 ; d < all ; ++d) {
            if (has_induced_embedding(g, h, d, bag_rest, coloring))
                folio.local.push_back(d);
            for (auto & e : enumerate_induced_embeddings(g, h, d, rest, coloring)) {
                RootedTriple t;
                t.domain = d;
                bool forgotten = false;
                for (int label = 0 ; label < h.size() ; ++label) {
                    if (! has_label(d, label))
                        continue;
                    if (std::binary_search(bag.begin(), bag.end(), e.image[label])) {
                        t.rooted |= LabelSet{1} << label;
                        t.rho[label] = e.image[label];
                    }
                    else
                        forgotten = true;
                }
                if (forgotten)
                    folio.triples.push_back(t);
            }
        }
        std::sort(folio.triples.begin(), folio.triples.end());
        folio.triples.erase(std::unique(folio.triples.begin(), folio.triples.end()), folio.triples.end());
        return folio;
    }

    /// Minimum partial solution size per (trace, folio) key at one node.
    inline auto direct_table(const Graph & g, const Pattern & h, const Coloring * coloring,
            const std::vector<int> & bag, const std::vector<int> & below) -> FolioTable
    {
        FolioTable table;
        int n = static_cast<int>(below.size());
        for (std::uint64_t mask = 0 ; mask < (std::uint64_t{1} << n) ; ++mask) {
            std::vector<int> rest;
            std::uint64_t hat = 0;
            for (int i = 0 ; i < n ; ++i) {
                int v = below[i];
                if ((mask >> i) & 1u) {
                    auto at = std::lower_bound(bag.begin(), bag.end(), v);
                    if (at != bag.end() && *at == v)
                        hat |= std::uint64_t{1} << (at - bag.begin());
                }
                else
                    rest.push_back(v);
            }
            if (! is_pattern_free(g, h, rest, coloring))
                continue;
            FolioKey key{hat, direct_folio(g, h, coloring, bag, rest)};
            int size = __builtin_popcountll(mask);
            auto [it, fresh] = table.emplace(std::move(key), size);
            if (! fresh)
                it->second = std::min(it->second, size);
        }
        return table;
    }

    inline auto dp_table(const std::vector<DPState> & states) -> FolioTable
    {
        FolioTable table;
        for (auto & s : states) {
            auto [it, fresh] = table.emplace(FolioKey{s.hat, s.folio}, s.opt);
            if (! fresh)
                it->second = std::min(it->second, s.opt);
        }
        return table;
    }

    struct TruthMismatch
    {
        int node = -1;
        std::size_t expected = 0, actual = 0;
    };

    /// Solves with tables kept and compares every node against direct_table.
    /// Returns the first mismatching node, or node -1 when all agree.
    inline auto check_all_nodes(const Graph & g, const Pattern & h, const Coloring * coloring,
            const NiceTreeDecomposition & ntd) -> TruthMismatch
    {
        SolveOptions options;
        options.keep_tables = true;
        auto result = solve_folio(g, ntd, h, coloring, options);
        auto below = subtree_vertices(ntd);
        for (int x = 0 ; x < ntd.node_count() ; ++x) {
            auto expected = direct_table(g, h, coloring, ntd.nodes[x].bag, below[x]);
            auto actual = dp_table(result.tables[x]);
            if (expected != actual)
                return {x, expected.size(), actual.size()};
        }
        return {};
    }
}
