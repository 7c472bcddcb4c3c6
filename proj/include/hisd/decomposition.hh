#pragma once

#include <hisd/graph.hh>

#include <string>
#include <utility>
#include <vector>

namespace hisd
{
    /// A tree T together with one bag per node. Bags are kept sorted.
    struct TreeDecomposition
    {
        std::vector<std::vector<int>> bags;
        std::vector<std::pair<int, int>> tree_edges;

        /// Largest bag size minus one; -1 when every bag is empty.
        auto width() const -> int;
        auto node_count() const -> int { return static_cast<int>(bags.size()); }
    };

    enum class Axiom
    {
        TreeShape,          ///< T is not a tree
        VertexRange,        ///< a bag mentions a vertex outside the graph
        VertexCoverage,     ///< some vertex is in no bag
        EdgeCoverage,       ///< some edge is in no bag
        Connectivity,       ///< the bags holding a vertex do not form a subtree
        NiceShape           ///< a nice-decomposition node breaks its kind's rule
    };

    auto axiom_name(Axiom a) -> std::string;

    struct Violation
    {
        Axiom axiom;
        std::string detail;
    };

    struct ValidationReport
    {
        std::vector<Violation> violations;

        auto valid() const -> bool { return violations.empty(); }
        auto has(Axiom a) const -> bool;
        auto describe() const -> std::string;
    };

    /// Checks every tree-decomposition axiom and reports each violation with a witness.
    auto validate(const Graph & g, const TreeDecomposition & td) -> ValidationReport;

    /// Greedy min-fill elimination. Ties are broken by smaller degree, then smaller id.
    auto heuristic_decomposition(const Graph & g) -> TreeDecomposition;

    enum class NodeKind
    {
        Leaf,
        Introduce,
        Forget,
        Join
    };

    struct NiceNode
    {
        NodeKind kind = NodeKind::Leaf;
        int vertex = -1;                ///< introduced or forgotten vertex
        std::vector<int> bag;           ///< sorted
        std::vector<int> children;
    };

    /// Rooted, binarised decomposition. Children always have smaller ids than
    /// their parent, so increasing id order is a post-order.
    struct NiceTreeDecomposition
    {
        std::vector<NiceNode> nodes;
        int root = -1;

        auto width() const -> int;
        auto node_count() const -> int { return static_cast<int>(nodes.size()); }
        auto as_tree_decomposition() const -> TreeDecomposition;
    };

    /// Converts a valid decomposition to nice form of the same width, rooted at
    /// node 0. Between a child bag and its parent bag, forgets come before
    /// introduces, each in ascending vertex order. Throws InvalidDecomposition.
    auto niceify(const TreeDecomposition & td, const Graph & g) -> NiceTreeDecomposition;

    /// Node-kind rules plus the underlying decomposition axioms.
    auto validate_nice(const Graph & g, const NiceTreeDecomposition & ntd) -> ValidationReport;

    /// G plus an edge between every two vertices sharing a bag.
    auto fill_in_graph(const Graph & g, const TreeDecomposition & td) -> Graph;
}
