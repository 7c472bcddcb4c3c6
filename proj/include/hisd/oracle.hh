#pragma once

#include <hisd/graph.hh>

#include <optional>
#include <vector>

namespace hisd
{
    /// Sorted vertex sets, sorted and duplicate-free.
    using OccurrenceSet = std::vector<std::vector<int>>;

    /// Distinct vertex images of induced (colourful) embeddings of all of H.
    auto enumerate_occurrences(const Graph & g, const Pattern & h, const Coloring * coloring = nullptr) -> OccurrenceSet;

    struct HittingSet
    {
        int size = 0;
        std::vector<int> witness;       ///< sorted
        bool found = true;              ///< false when a cutoff was given and nothing fits under it
        long nodes = 0;                 ///< search nodes explored
    };

    /// Exact minimum hitting set by branch and bound. With a cutoff the search
    /// only looks for sets of size <= cutoff and stops at the first one found;
    /// `found` is false when none exists.
    auto min_hitting_set(const OccurrenceSet & occurrences, int vertex_count,
            std::optional<int> cutoff = std::nullopt) -> HittingSet;

    /// Size of a greedy family of pairwise disjoint occurrences.
    auto disjoint_packing(const OccurrenceSet & occurrences) -> int;

    struct OracleOptions
    {
        int size_limit = 16;
        bool override_limit = false;
        std::optional<int> cutoff;
    };

    struct OracleResult
    {
        int opt = 0;
        std::vector<int> witness;
        int occurrence_count = 0;
        int packing_bound = 0;
        bool found = true;
        long nodes = 0;
    };

    /// Ground-truth solver. Throws CapExceeded above options.size_limit vertices
    /// unless override_limit is set. With a cutoff, `found` tells whether a
    /// solution of size <= cutoff exists and `opt` is only meaningful if so.
    auto oracle_solve(const Graph & g, const Pattern & h, const Coloring * coloring = nullptr,
            const OracleOptions & options = {}) -> OracleResult;
}
