#pragma once

#include <hisd/decomposition.hh>
#include <hisd/graph.hh>

#include <optional>
#include <string>
#include <vector>

namespace hisd
{
    using CliqueCover = std::vector<std::vector<int>>;

    /// Minimum set hitting every (colourful) K_h. The DP state is the deleted
    /// part of the bag alone, since every clique lies inside some bag.
    auto solve_clique_hitting(const Graph & g, const NiceTreeDecomposition & ntd, int h,
            const Coloring * coloring = nullptr, int threads = 1) -> int;

    /// Maximum cardinality search plus a check; the first vertex of the
    /// returned order is simplicial in G. Empty optional iff G is not chordal.
    auto perfect_elimination_ordering(const Graph & g) -> std::optional<std::vector<int>>;

    /// At most h-1 cliques covering a chordal I_h-free graph, built by
    /// repeatedly taking the closed neighbourhood of a simplicial vertex.
    /// Throws InvalidArgument if G is not chordal or contains I_h.
    auto chordal_clique_cover(const Graph & g, int h) -> CliqueCover;

    /// Minimum I_h-hitting set size: the largest I_h-free vertex set lies in the
    /// union of at most h-1 bags, so every such union is searched.
    auto solve_independent_set_hitting(const Graph & g, const TreeDecomposition & td, int h, int threads = 1) -> int;

    /// Minimum set hitting every K_h + I_l subgraph (not necessarily induced).
    auto solve_kh_il_subgraph(const Graph & g, const NiceTreeDecomposition & ntd, int h, int l) -> int;

    struct PairSolution
    {
        int size = 0;
        std::vector<int> cover;     ///< sorted
    };

    /// Colourful K_2 or I_2 deletion, decided by whether the two labels of `h`
    /// are adjacent. Reduces to a bipartite vertex cover solved by matching.
    auto solve_colorful_pair(const Graph & g, const Coloring & coloring, const Pattern & h) -> PairSolution;

    enum class Engine
    {
        Folio,
        Clique,
        IndependentSet,
        Matching,
        Oracle
    };

    auto engine_name(Engine e) -> std::string;
    auto parse_engine(const std::string & name) -> Engine;

    /// K_h goes to the clique solver, uncoloured I_h to the independent-set
    /// solver, two-label colourful patterns to matching, the rest to folio DP.
    auto auto_engine(const Pattern & h, bool colorful) -> Engine;
}
