#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hisd
{
    /// Largest supported pattern. Labelled subsets of V(H) are h-bit masks, so
    /// every subset family of the pattern fits in 2^8 entries.
    inline constexpr int max_pattern_size = 8;

    /// Bit i set means pattern label i is in the set.
    using LabelSet = unsigned;

    inline auto label_count(LabelSet s) -> int
    {
        return __builtin_popcount(s);
    }

    inline auto has_label(LabelSet s, int label) -> bool
    {
        return (s >> label) & 1u;
    }

    /// Undirected simple graph on vertices 0 .. vertex_count() - 1. Adjacency is
    /// kept both as a bit row per vertex (constant-time probes) and as sorted
    /// neighbour lists.
    class Graph
    {
        private:
            int _size = 0;
            int _edge_count = 0;
            std::vector<std::vector<std::uint64_t>> _rows;
            std::vector<std::vector<int>> _neighbours;

        public:
            Graph() = default;
            explicit Graph(int vertex_count);

            static auto from_edges(int vertex_count, std::span<const std::pair<int, int>> edges) -> Graph;

            auto vertex_count() const -> int { return _size; }
            auto edge_count() const -> int { return _edge_count; }

            /// Appends an isolated vertex and returns its id.
            auto add_vertex() -> int;

            /// Returns false if the edge was already present. Self-loops and
            /// out-of-range endpoints throw InvalidArgument.
            auto add_edge(int u, int v) -> bool;
            auto remove_edge(int u, int v) -> bool;

            auto adjacent(int u, int v) const -> bool
            {
                auto word = static_cast<std::size_t>(v) >> 6;
                auto & row = _rows[u];
                return word < row.size() && ((row[word] >> (v & 63)) & 1u);
            }

            auto neighbours(int v) const -> const std::vector<int> & { return _neighbours[v]; }
            auto degree(int v) const -> int { return static_cast<int>(_neighbours[v].size()); }
            auto max_degree() const -> int;

            /// Edges as (u, v) with u < v, sorted.
            auto edges() const -> std::vector<std::pair<int, int>>;

            /// Subgraph induced by `vertices`, relabelled to 0 .. |vertices| - 1 in the given order.
            auto induced(std::span<const int> vertices) const -> Graph;

            auto complement() const -> Graph;

            /// Graph with `removed` deleted; vertex ids are preserved and the deleted
            /// vertices become isolated.
            auto without(std::span<const int> removed) const -> Graph;

            auto operator== (const Graph & other) const -> bool;
    };

    /// The fixed pattern H with labelled vertices 0 .. size() - 1.
    class Pattern
    {
        private:
            int _size = 0;
            std::array<LabelSet, max_pattern_size> _adjacency{};

        public:
            Pattern() = default;

            /// Throws CapExceeded when size > max_pattern_size.
            explicit Pattern(int size);

            auto size() const -> int { return _size; }
            auto all_labels() const -> LabelSet { return (LabelSet{1} << _size) - 1; }

            auto add_edge(int a, int b) -> void;
            auto adjacent(int a, int b) const -> bool { return has_label(_adjacency[a], b); }
            auto neighbours(int a) const -> LabelSet { return _adjacency[a]; }
            auto edge_count() const -> int;

            auto complement() const -> Pattern;
            auto is_clique() const -> bool;
            auto is_independent() const -> bool;

            /// Connected components as label sets, ordered by smallest label.
            auto components() const -> std::vector<LabelSet>;

            /// The subpattern on `labels`, relabelled in increasing label order.
            auto restricted(LabelSet labels) const -> Pattern;

            auto as_graph() const -> Graph;
            static auto from_graph(const Graph & g) -> Pattern;

            /// Disjoint union; labels of `other` are shifted by size().
            auto disjoint_union(const Pattern & other) const -> Pattern;

            auto operator== (const Pattern &) const -> bool = default;
    };

    /// Builds a named pattern. Names and parameters:
    ///   "K" h, "I" h, "P" h, "C" h, "K-e" h, "Kab" a b, "Kvx" h x.
    /// For "K-e" the missing edge joins the two highest labels. For "Kvx" the
    /// clique is K_{h+1} on labels 0 .. h and label h+1 is adjacent to labels 0 .. x-1.
    auto named_pattern(std::string_view name, std::span<const int> params) -> Pattern;

    /// Parses pattern strings such as "K3", "I4", "P3", "C4", "K2,2", "K4-e",
    /// "Kvx:3:1", and disjoint unions like "K3+I1".
    auto parse_pattern(std::string_view text) -> Pattern;

    /// sigma: V(G) -> V(H), one label per vertex.
    using Coloring = std::vector<int>;

    /// Throws InvalidArgument unless every vertex carries a valid label.
    auto check_coloring(const Graph & g, const Pattern & h, const Coloring & coloring) -> void;

    /// An injective map from a label subset `domain` into V(G); image[label] is
    /// -1 for labels outside the domain.
    struct Embedding
    {
        LabelSet domain = 0;
        std::array<int, max_pattern_size> image = filled_image();

        static constexpr auto filled_image() -> std::array<int, max_pattern_size>
        {
            std::array<int, max_pattern_size> result{};
            result.fill(-1);
            return result;
        }

        auto operator<=> (const Embedding &) const = default;
    };

    using EmbeddingVisitor = std::function<auto (const Embedding &) -> bool>;

    /// Calls `visit` for every induced (colour-respecting, when `coloring` is
    /// non-null) embedding of H[domain] into G[scope]. The visitor returns false
    /// to stop; the function returns false iff it was stopped.
    auto for_each_induced_embedding(const Graph & g, const Pattern & h, LabelSet domain,
            std::span<const int> scope, const Coloring * coloring, const EmbeddingVisitor & visit) -> bool;

    /// All induced embeddings of H[domain] into G[scope], sorted lexicographically
    /// by image tuple in label order.
    auto enumerate_induced_embeddings(const Graph & g, const Pattern & h, LabelSet domain,
            std::span<const int> scope, const Coloring * coloring = nullptr) -> std::vector<Embedding>;

    auto has_induced_embedding(const Graph & g, const Pattern & h, LabelSet domain,
            std::span<const int> scope, const Coloring * coloring = nullptr) -> bool;

    auto is_pattern_free(const Graph & g, const Pattern & h, std::span<const int> scope,
            const Coloring * coloring = nullptr) -> bool;

    auto is_pattern_free(const Graph & g, const Pattern & h, const Coloring * coloring = nullptr) -> bool;

    auto all_vertices(const Graph & g) -> std::vector<int>;
}
