#pragma once

#include <hisd/decomposition.hh>
#include <hisd/graph.hh>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hisd
{
    /// CNF over variables 0 .. variable_count - 1. A literal is +(v+1) or -(v+1).
    struct CleanFormula
    {
        int variable_count = 0;
        std::vector<std::vector<int>> clauses;

        auto clause_count() const -> int { return static_cast<int>(clauses.size()); }
        auto operator== (const CleanFormula &) const -> bool = default;
    };

    struct FormulaReport
    {
        std::vector<std::string> violations;

        auto valid() const -> bool { return violations.empty(); }
    };

    /// Every variable exactly three times with both signs, clauses of two or
    /// three literals over distinct variables.
    auto validate_clean(const CleanFormula & f) -> FormulaReport;

    /// Brute force over all assignments.
    auto satisfying_assignment(const CleanFormula & f) -> std::optional<std::vector<bool>>;
    auto is_satisfiable(const CleanFormula & f) -> bool;

    /// Flips variables so each occurs twice positively, then takes the least
    /// clause list over all variable renamings.
    auto canonical_formula(const CleanFormula & f) -> CleanFormula;

    /// Every clean formula on n variables in which each variable occurs twice
    /// positively. Flipping a variable yields the same instance graph for every
    /// construction here, so this covers all clean formulas up to sign. With
    /// `up_to_renaming` only canonical representatives are visited. The visitor
    /// returns false to stop.
    auto for_each_clean_formula(int n, bool up_to_renaming, const std::function<auto (const CleanFormula &) -> bool> & visit) -> void;

    /// FNV-1a of the DIMACS text, as 16 hex digits.
    auto formula_hash(const CleanFormula & f) -> std::string;

    /// Smallest s >= 1 with s^columns >= pairs.
    auto row_count(int pairs, int columns) -> int;

    /// Pair i gets the i-th tuple of [s]^h in lexicographic order; rows are 0-based.
    auto assign_functions(int pairs, int s, int h) -> std::vector<std::vector<int>>;

    /// A graph to be glued between two frame vertices at `first` and `second`.
    struct Gadget
    {
        Graph graph;
        int first = 0;
        int second = 1;
        std::optional<Coloring> colors;
    };

    struct LiteralSlot
    {
        int clause = 0;
        int position = 0;
        int variable = 0;
        bool positive = true;
        std::vector<int> a;             ///< one vertex per copy of the variable side
        int b = -1;
        std::vector<int> function;      ///< row per column, 0-based
    };

    struct VariableGadget
    {
        int variable = 0;
        int copy = 0;
        /// a_{x,C1,l}, a_{x,C2,~l}, a_{x,C3,l}, a_x; copies sit on consecutive pairs, cyclically.
        std::array<int, 4> cycle{};
    };

    struct ClauseGadget
    {
        int clause = 0;
        std::vector<int> b;
    };

    struct AttachedCopy
    {
        int first = -1;
        int second = -1;
        std::vector<int> internal;
        bool clause_side = false;
    };

    struct FrameLayout
    {
        int rows = 0;
        int columns = 0;
        std::vector<std::vector<int>> m;        ///< m[i][j]
        std::vector<int> t;
        int variable_copies = 1;
        std::vector<LiteralSlot> literals;      ///< clause-then-literal order
        std::vector<VariableGadget> variables;
        std::vector<ClauseGadget> clauses;
        std::vector<AttachedCopy> copies;
        std::vector<int> a_side;                ///< every vertex of every variable gadget
        std::vector<int> b_side;                ///< every vertex of every clause gadget

        auto central() const -> std::vector<int>;
    };

    struct FrameGraph
    {
        Graph graph;
        Coloring colors;                        ///< -1 where the frame sets no colour
        FrameLayout layout;
    };

    /// The shared scaffold: M (rows x columns), T, the variable and clause
    /// gadgets, with no edges touching M or T yet. Frame colours put z0 on A
    /// attachment vertices, z_{columns+1} on B and z_{j+1} on column j; gadget
    /// colours, when present, cover the rest.
    auto build_frame(const CleanFormula & f, int columns, int t_size, const Gadget & variable_l,
            const Gadget & clause_l, int variable_copies = 1) -> FrameGraph;

    struct DeletionInstance
    {
        std::string construction;
        Graph graph;
        Pattern pattern;
        std::optional<Coloring> coloring;
        int budget = 0;
        int h = 0;
        int x = -1;
        std::string provenance;
        FrameLayout layout;
        std::vector<int> central;               ///< M'
        TreeDecomposition hint;
        int component_bound = 0;                ///< P1 constant
    };

    /// H = K_{h+2} - e, budget 5n - m.
    auto reduce_k_minus_e(const CleanFormula & f, int h) -> DeletionInstance;

    /// H = K_h + I_2, budget 5n - m. L = K_h, or K_2 when h = 1 since one
    /// vertex cannot be attached between two.
    auto reduce_kh_i2(const CleanFormula & f, int h) -> DeletionInstance;

    /// H = K_{h+1} + v_x with h - x - 1 columns and x + 1 sentinels, budget 5n - m.
    auto reduce_kvx(const CleanFormula & f, int h, int x) -> DeletionInstance;

    /// H = K_{h,h} with h - 1 copies of the variable side, budget (2h+1)n - m.
    auto reduce_khh(const CleanFormula & f, int h) -> DeletionInstance;

    struct ColorfulChoice
    {
        int component = 0;                      ///< index into h.components()
        int z0 = 0;
        int z_last = 0;
        std::vector<int> column_labels;
        int a_beta = 0, a_gamma = 0;
        int b_beta = 0, b_gamma = 0;
        bool path = false;
    };

    /// Labels used by the colourful construction, or InvalidArgument if every
    /// component of H is a clique.
    auto colorful_choice(const Pattern & h) -> ColorfulChoice;

    /// Three glued copies of the chosen component, attached at `anchor` in the
    /// first and third copies. Coloured by H labels.
    auto colorful_gadget(const Pattern & h, const ColorfulChoice & choice, bool clause_side) -> Gadget;

    /// Colourful H-IS-deletion instance, budget 15n - 4m.
    auto reduce_colorful(const CleanFormula & f, const Pattern & h) -> DeletionInstance;

    enum class VcKind
    {
        K3,
        I3,
        K2K1
    };

    auto vc_kind_name(VcKind kind) -> std::string;

    /// Edge gadgets of three glued coloured triangles, then complemented for I3
    /// or K2+K1. Requires max degree <= 3. The budget field holds 2 * vc for a
    /// cover of size `vc_budget`.
    auto reduce_vc_colorful(const Graph & g, VcKind kind, int vc_budget = 0) -> DeletionInstance;

    /// Hitting budget attached to a vertex-cover budget k.
    auto vc_budget_map(int k) -> int;

    /// Brute-force minimum vertex cover.
    auto min_vertex_cover(const Graph & g) -> int;

    struct ReductionReport
    {
        int budget = 0;
        bool budget_identity_ok = false;
        int max_component = 0;
        int component_bound = 0;
        bool p1_ok = false;
        bool satisfiable = false;
        bool within_budget = false;
        bool equivalence_ok = false;
        bool p2_checked = false;
        bool p2_ok = true;
        std::vector<int> witness;
        bool certificate_tried = false;
        bool certificate_ok = false;            ///< the assignment-shaped set of size k hits every occurrence
        int certificate_survivors = 0;          ///< occurrences it misses, counted up to a cap
        bool searched = false;
        long oracle_nodes = 0;
        std::vector<std::string> notes;

        auto ok() const -> bool { return budget_identity_ok && p1_ok && equivalence_ok && p2_ok; }
    };

    /// The set of size k built from an assignment: per variable copy the pair of
    /// true literal vertices, or the dummy with the false one; per clause every
    /// b-vertex but that of its first true literal.
    auto assignment_solution(const DeletionInstance & instance, const CleanFormula & f,
            const std::vector<bool> & assignment) -> std::vector<int>;

    /// P1 bound, budget identities, SAT versus oracle-within-budget, and the P2
    /// shape (all variable-side copies for K_{h,h}) of the oracle's solution.
    /// Within budget is decided by checking the assignment-shaped set first and
    /// otherwise by exact search with cutoff k.
    auto verify_reduction(const DeletionInstance & instance, const CleanFormula & f) -> ReductionReport;

    struct VcReport
    {
        int vertex_cover = 0;
        int opt = 0;
        int edges = 0;
        int vertex_count = 0;
        int occurrences = 0;
        bool size_ok = false;           ///< |V| + 5|E| vertices
        bool occurrences_ok = false;    ///< three per edge
        bool budget_ok = false;         ///< opt == vc_budget_map(vc)
        bool edge_count_ok = false;     ///< opt == vc + |E|

        auto ok() const -> bool { return size_ok && occurrences_ok && budget_ok; }
    };

    auto verify_vc_reduction(const DeletionInstance & instance, const Graph & g) -> VcReport;
}
