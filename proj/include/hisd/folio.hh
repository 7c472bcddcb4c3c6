#pragma once

#include <hisd/decomposition.hh>
#include <hisd/graph.hh>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace hisd
{
    /// (D, R, rho): an induced copy of H[D] below the current node whose labels
    /// in R sit on bag vertices rho(r), and whose other labels (never empty)
    /// sit on vertices that have already been forgotten.
    struct RootedTriple
    {
        LabelSet domain = 0;
        LabelSet rooted = 0;
        std::array<int, max_pattern_size> rho = Embedding::filled_image();

        auto unrooted() const -> LabelSet { return domain & ~rooted; }
        auto operator<=> (const RootedTriple &) const = default;
    };

    /// Local occurrences (proper label subsets that embed in the bag minus the
    /// deleted part) plus rooted triples, both sorted.
    struct RootedFolio
    {
        std::vector<LabelSet> local;
        std::vector<RootedTriple> triples;

        auto operator== (const RootedFolio &) const -> bool = default;
    };

    /// One DP table entry. `hat` is a bitmask over positions of the node's
    /// sorted bag. `from` indexes the child table entries it was built from.
    struct DPState
    {
        std::uint64_t hat = 0;
        RootedFolio folio;
        int opt = 0;
        std::array<int, 2> from{-1, -1};
        std::size_t hash = 0;
    };

    struct DPContext
    {
        const Graph * graph = nullptr;
        const Pattern * pattern = nullptr;
        const Coloring * coloring = nullptr;
        int threads = 1;
    };

    /// Bag vertices selected by a hat mask.
    auto hat_vertices(std::uint64_t hat, const std::vector<int> & bag) -> std::vector<int>;

    auto leaf_table() -> std::vector<DPState>;

    /// `child_bag` is the bag below the node; v is not in it.
    auto introduce_transition(const DPContext & ctx, const std::vector<DPState> & child,
            const std::vector<int> & child_bag, int v) -> std::vector<DPState>;

    /// `child_bag` is the bag below the node; v is in it.
    auto forget_transition(const DPContext & ctx, const std::vector<DPState> & child,
            const std::vector<int> & child_bag, int v) -> std::vector<DPState>;

    auto join_transition(const DPContext & ctx, const std::vector<DPState> & left,
            const std::vector<DPState> & right, const std::vector<int> & bag) -> std::vector<DPState>;

    /// Minimum over a root table. Throws std::logic_error on an empty table or
    /// on a state that still has bag-rooted content.
    auto root_extract(const std::vector<DPState> & root_table) -> int;

    struct SolveOptions
    {
        bool witness = true;
        bool keep_tables = false;
        int threads = 1;
    };

    struct SolveResult
    {
        int opt = 0;
        std::optional<std::vector<int>> witness;
        int width_used = 0;
        int node_count = 0;
        long peak_state_count = 0;
        long total_state_count = 0;
        double wall_time_ms = 0.0;
        std::vector<std::vector<DPState>> tables;   ///< per nice node, when kept
    };

    /// Minimum (colourful, when `coloring` is given) H-IS-deletion over a nice
    /// decomposition. The witness is checked to leave G pattern-free.
    /// Throws CapExceeded if a bag exceeds 64 vertices.
    auto solve_folio(const Graph & g, const NiceTreeDecomposition & ntd, const Pattern & h,
            const Coloring * coloring = nullptr, const SolveOptions & options = {}) -> SolveResult;
}
