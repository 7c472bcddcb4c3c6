#include <hisd/errors.hh>
#include <hisd/oracle.hh>
#include <hisd/reductions.hh>

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using std::string;
using std::to_string;
using std::vector;

namespace hisd
{
    auto validate_clean(const CleanFormula & f) -> FormulaReport
    {
        FormulaReport report;
        auto fail = [&] (string s) { report.violations.push_back(std::move(s)); };

        if (f.variable_count < 1)
            fail("formula has no variables");
        vector<int> positive(std::max(f.variable_count, 0), 0), negative(std::max(f.variable_count, 0), 0);
        for (int c = 0 ; c < f.clause_count() ; ++c) {
            auto & clause = f.clauses[c];
            if (clause.size() < 2 || clause.size() > 3)
                fail("clause " + to_string(c + 1) + " has " + to_string(clause.size()) + " literals");
            vector<int> seen;
            for (int literal : clause) {
                int v = std::abs(literal) - 1;
                if (literal == 0 || v >= f.variable_count) {
                    fail("clause " + to_string(c + 1) + " has out-of-range literal " + to_string(literal));
                    continue;
                }
                if (std::find(seen.begin(), seen.end(), v) != seen.end())
                    fail("clause " + to_string(c + 1) + " repeats variable " + to_string(v + 1));
                seen.push_back(v);
                ++(literal > 0 ? positive : negative)[v];
            }
        }
        for (int v = 0 ; v < f.variable_count ; ++v) {
            int total = positive[v] + negative[v];
            if (total != 3)
                fail("variable " + to_string(v + 1) + " appears " + to_string(total) + " times");
            else if (positive[v] == 0 || negative[v] == 0)
                fail("variable " + to_string(v + 1) + " appears with one sign only");
        }
        return report;
    }

    auto satisfying_assignment(const CleanFormula & f) -> std::optional<vector<bool>>
    {
        if (f.variable_count > 30)
            throw CapExceeded{"brute-force SAT is limited to 30 variables"};
        for (std::uint64_t a = 0 ; a < (std::uint64_t{1} << f.variable_count) ; ++a) {
            bool all = std::all_of(f.clauses.begin(), f.clauses.end(), [&] (const vector<int> & clause) {
                return std::any_of(clause.begin(), clause.end(), [&] (int literal) {
                    bool value = (a >> (std::abs(literal) - 1)) & 1u;
                    return literal > 0 ? value : ! value;
                });
            });
            if (all) {
                vector<bool> result(f.variable_count);
                for (int v = 0 ; v < f.variable_count ; ++v)
                    result[v] = (a >> v) & 1u;
                return result;
            }
        }
        return std::nullopt;
    }

    auto is_satisfiable(const CleanFormula & f) -> bool
    {
        return satisfying_assignment(f).has_value();
    }

    namespace
    {
        // literal code: 2 * variable + (negative ? 1 : 0)
        using Coded = vector<vector<int>>;

        auto encode(const CleanFormula & f) -> Coded
        {
            Coded result;
            for (auto & clause : f.clauses) {
                vector<int> c;
                for (int literal : clause)
                    c.push_back(2 * (std::abs(literal) - 1) + (literal < 0 ? 1 : 0));
                std::sort(c.begin(), c.end());
                result.push_back(std::move(c));
            }
            std::sort(result.begin(), result.end());
            return result;
        }

        auto decode(const Coded & coded, int n) -> CleanFormula
        {
            CleanFormula f;
            f.variable_count = n;
            for (auto & c : coded) {
                vector<int> clause;
                for (int code : c)
                    clause.push_back((code & 1) ? -(code / 2 + 1) : code / 2 + 1);
                f.clauses.push_back(std::move(clause));
            }
            return f;
        }

        auto renamed(const Coded & coded, const vector<int> & perm) -> Coded
        {
            Coded result;
            result.reserve(coded.size());
            for (auto & c : coded) {
                vector<int> d;
                for (int code : c)
                    d.push_back(2 * perm[code / 2] + (code & 1));
                std::sort(d.begin(), d.end());
                result.push_back(std::move(d));
            }
            std::sort(result.begin(), result.end());
            return result;
        }

        auto canonical_coded(const Coded & input, int n) -> Coded
        {
            // flip so that each variable has at most one negative occurrence
            vector<int> negatives(n, 0);
            for (auto & c : input)
                for (int code : c)
                    if (code & 1)
                        ++negatives[code / 2];
            Coded coded = input;
            for (auto & c : coded) {
                for (auto & code : c)
                    if (negatives[code / 2] >= 2)
                        code ^= 1;
                std::sort(c.begin(), c.end());
            }
            std::sort(coded.begin(), coded.end());

            // a renaming-invariant signature per variable restricts the permutations tried
            vector<vector<int>> signature(n);
            for (auto & c : coded)
                for (int code : c)
                    signature[code / 2].push_back(static_cast<int>(c.size()) * 2 + (code & 1));
            for (auto & s : signature)
                std::sort(s.begin(), s.end());
            vector<int> by_signature(n);
            std::iota(by_signature.begin(), by_signature.end(), 0);
            std::stable_sort(by_signature.begin(), by_signature.end(), [&] (int a, int b) { return signature[a] < signature[b]; });

            // variable by_signature[i] may only take a new name in its signature block
            vector<int> block_start(n);
            for (int i = 0 ; i < n ; ++i)
                block_start[i] = (i > 0 && signature[by_signature[i]] == signature[by_signature[i - 1]]) ? block_start[i - 1] : i;

            Coded best;
            bool have = false;
            vector<int> perm(n, -1);
            vector<char> used(n, 0);
            std::function<auto (int) -> void> assign = [&] (int i) {
                if (i == n) {
                    auto candidate = renamed(coded, perm);
                    if (! have || candidate < best) {
                        best = std::move(candidate);
                        have = true;
                    }
                    return;
                }
                int start = block_start[i];
                for (int name = start ; name < n && signature[by_signature[name]] == signature[by_signature[start]] ; ++name)
                    if (! used[name]) {
                        used[name] = 1;
                        perm[by_signature[i]] = name;
                        assign(i + 1);
                        used[name] = 0;
                    }
            };
            assign(0);
            return best;
        }
    }

    namespace
    {
        // clause packed as base-13 digits (code + 1), missing third literal as 0,
        // which orders packed clauses like the coded vectors
        auto pack(int a, int b, int c) -> int
        {
            return (a + 1) * 169 + (b + 1) * 13 + (c + 1);
        }

        // `sorted` is a normalised, sorted coded formula; true iff no renaming
        // within signature classes gives a smaller clause list
        auto is_canonical(const Coded & sorted, int n) -> bool
        {
            int m = static_cast<int>(sorted.size());
            std::array<std::array<int, 3>, 32> clauses{};
            std::array<int, 32> original{};
            vector<vector<int>> signature(n);
            for (int c = 0 ; c < m ; ++c) {
                auto & cl = sorted[c];
                clauses[c] = {cl[0], cl[1], cl.size() == 3 ? cl[2] : -1};
                original[c] = pack(clauses[c][0], clauses[c][1], clauses[c][2]);
                for (int code : cl)
                    signature[code / 2].push_back(static_cast<int>(cl.size()) * 2 + (code & 1));
            }
            for (auto & sg : signature)
                std::sort(sg.begin(), sg.end());
            if (! std::is_sorted(signature.begin(), signature.end()))
                return false;

            vector<int> perm(n, -1);
            vector<char> used(n, 0);
            bool smaller = false;
            std::array<int, 32> packed{};
            std::function<auto (int) -> void> assign = [&] (int v) {
                if (smaller)
                    return;
                if (v == n) {
                    for (int c = 0 ; c < m ; ++c) {
                        std::array<int, 3> r{-1, -1, -1};
                        int size = clauses[c][2] == -1 ? 2 : 3;
                        for (int i = 0 ; i < size ; ++i)
                            r[i] = 2 * perm[clauses[c][i] / 2] + (clauses[c][i] & 1);
                        std::sort(r.begin(), r.begin() + size);
                        packed[c] = pack(r[0], r[1], r[2]);
                    }
                    std::sort(packed.begin(), packed.begin() + m);
                    smaller = std::lexicographical_compare(packed.begin(), packed.begin() + m, original.begin(), original.begin() + m);
                    return;
                }
                for (int name = 0 ; name < n ; ++name)
                    if (! used[name] && signature[name] == signature[v]) {
                        used[name] = 1;
                        perm[v] = name;
                        assign(v + 1);
                        used[name] = 0;
                    }
            };
            assign(0);
            return ! smaller;
        }
    }

    auto canonical_formula(const CleanFormula & f) -> CleanFormula
    {
        return decode(canonical_coded(encode(f), f.variable_count), f.variable_count);
    }

    auto for_each_clean_formula(int n, bool up_to_renaming, const std::function<auto (const CleanFormula &) -> bool> & visit) -> void
    {
        if (n < 1)
            return;
        vector<int> remaining(2 * n, 0);
        for (int v = 0 ; v < n ; ++v) {
            remaining[2 * v] = 2;
            remaining[2 * v + 1] = 1;
        }

        Coded current;
        bool stopped = false;
        // The smallest remaining literal always starts the next clause; clauses that
        // share that leading literal are produced in nondecreasing order.
        std::function<auto (const vector<int> &, int) -> void> grow = [&] (const vector<int> & previous, int previous_lead) {
            if (stopped)
                return;
            int lead = -1;
            for (int i = 0 ; i < 2 * n ; ++i)
                if (remaining[i]) {
                    lead = i;
                    break;
                }
            if (lead == -1) {
                Coded sorted = current;
                std::sort(sorted.begin(), sorted.end());
                if (up_to_renaming && ! is_canonical(sorted, n))
                    return;
                if (! visit(decode(sorted, n)))
                    stopped = true;
                return;
            }

            vector<int> partners;
            for (int i = lead + 1 ; i < 2 * n ; ++i)
                if (remaining[i] && i / 2 != lead / 2)
                    partners.push_back(i);

            auto attempt = [&] (vector<int> clause) {
                if (lead == previous_lead && clause < previous)
                    return;
                if (clause.size() == 3 && clause[1] / 2 == clause[2] / 2)
                    return;
                for (int code : clause)
                    --remaining[code];
                current.push_back(clause);
                grow(clause, lead);
                current.pop_back();
                for (int code : clause)
                    ++remaining[code];
            };

            for (std::size_t i = 0 ; i < partners.size() && ! stopped ; ++i) {
                attempt({lead, partners[i]});
                for (std::size_t j = i + 1 ; j < partners.size() && ! stopped ; ++j)
                    attempt({lead, partners[i], partners[j]});
            }
        };
        grow({}, -1);
    }

    auto formula_hash(const CleanFormula & f) -> string
    {
        std::ostringstream text;
        text << "p cnf " << f.variable_count << " " << f.clause_count() << "\n";
        for (auto & clause : f.clauses) {
            for (int literal : clause)
                text << literal << " ";
            text << "0\n";
        }
        std::uint64_t hash = 14695981039346656037ULL;
        for (unsigned char c : text.str()) {
            hash ^= c;
            hash *= 1099511628211ULL;
        }
        char buffer[17];
        std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
        return buffer;
    }

    auto row_count(int pairs, int columns) -> int
    {
        if (columns < 1)
            throw InvalidArgument{"frame needs at least one column"};
        for (long s = 1 ; ; ++s) {
            long power = 1;
            for (int j = 0 ; j < columns && power < pairs ; ++j)
                power *= s;
            if (power >= pairs)
                return static_cast<int>(s);
        }
    }

    auto assign_functions(int pairs, int s, int h) -> vector<vector<int>>
    {
        long capacity = 1;
        for (int j = 0 ; j < h && capacity < pairs ; ++j)
            capacity *= s;
        if (capacity < pairs)
            throw InvalidArgument{"too many clause-literal pairs for s^h functions"};
        vector<vector<int>> result;
        for (int i = 0 ; i < pairs ; ++i) {
            vector<int> tuple(h);
            long rest = i;
            for (int j = h - 1 ; j >= 0 ; --j) {
                tuple[j] = static_cast<int>(rest % s);
                rest /= s;
            }
            result.push_back(std::move(tuple));
        }
        return result;
    }

    auto FrameLayout::central() const -> vector<int>
    {
        vector<int> result;
        for (auto & row : m)
            result.insert(result.end(), row.begin(), row.end());
        result.insert(result.end(), t.begin(), t.end());
        std::sort(result.begin(), result.end());
        return result;
    }

    namespace
    {
        auto add_coloured_vertex(Graph & g, Coloring & colors, int colour) -> int
        {
            colors.push_back(colour);
            return g.add_vertex();
        }

        auto attach(FrameGraph & frame, const Gadget & gadget, int u, int v, bool clause_side) -> void
        {
            int size = gadget.graph.vertex_count();
            vector<int> id(size, -1);
            id[gadget.first] = u;
            id[gadget.second] = v;
            AttachedCopy copy{u, v, {}, clause_side};
            for (int i = 0 ; i < size ; ++i)
                if (id[i] == -1) {
                    id[i] = add_coloured_vertex(frame.graph, frame.colors, gadget.colors ? (*gadget.colors)[i] : -1);
                    copy.internal.push_back(id[i]);
                }
            for (auto & [a, b] : gadget.graph.edges())
                frame.graph.add_edge(id[a], id[b]);
            auto & side = clause_side ? frame.layout.b_side : frame.layout.a_side;
            side.insert(side.end(), copy.internal.begin(), copy.internal.end());
            frame.layout.copies.push_back(std::move(copy));
        }

        auto pattern_from(const char * name, std::initializer_list<int> params) -> Pattern
        {
            vector<int> p(params);
            return named_pattern(name, p);
        }

        auto gadget_from(const Pattern & p, int first, int second) -> Gadget
        {
            return Gadget{p.as_graph(), first, second, std::nullopt};
        }

        auto components_without(const Graph & g, const vector<int> & removed) -> vector<vector<int>>
        {
            int n = g.vertex_count();
            vector<char> gone(n, 0);
            for (int v : removed)
                gone[v] = 1;
            vector<int> component(n, -1);
            vector<vector<int>> result;
            for (int s = 0 ; s < n ; ++s) {
                if (gone[s] || component[s] != -1)
                    continue;
                vector<int> members{s}, stack{s};
                component[s] = static_cast<int>(result.size());
                while (! stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (int y : g.neighbours(x))
                        if (! gone[y] && component[y] == -1) {
                            component[y] = component[s];
                            members.push_back(y);
                            stack.push_back(y);
                        }
                }
                std::sort(members.begin(), members.end());
                result.push_back(std::move(members));
            }
            return result;
        }

        auto star_hint(const Graph & g, const vector<int> & central) -> TreeDecomposition
        {
            TreeDecomposition td;
            td.bags.push_back(central);
            for (auto & c : components_without(g, central)) {
                vector<int> bag = central;
                bag.insert(bag.end(), c.begin(), c.end());
                std::sort(bag.begin(), bag.end());
                td.tree_edges.emplace_back(0, td.node_count());
                td.bags.push_back(std::move(bag));
            }
            return td;
        }

        auto finish(DeletionInstance & instance, const CleanFormula & f, const FrameGraph & frame,
                const Gadget & variable_l, const Gadget & clause_l) -> void
        {
            instance.provenance = formula_hash(f);
            instance.layout = frame.layout;
            instance.central = frame.layout.central();
            instance.hint = star_hint(instance.graph, instance.central);
            int variable_side = 4 + 4 * (variable_l.graph.vertex_count() - 2);
            int clause_side = 3 + 3 * (clause_l.graph.vertex_count() - 2);
            instance.component_bound = std::max(variable_side, clause_side);
        }

        auto add_complete(Graph & g, const vector<int> & xs, const vector<int> & ys) -> void
        {
            for (int x : xs)
                for (int y : ys)
                    if (x != y)
                        g.add_edge(x, y);
        }

        auto budget_5n_m(const CleanFormula & f) -> int
        {
            return 5 * f.variable_count - f.clause_count();
        }

        auto check_formula(const CleanFormula & f) -> void
        {
            auto report = validate_clean(f);
            if (! report.valid())
                throw InvalidArgument{"formula is not clean: " + report.violations.front()};
        }

        auto all_side(const FrameLayout & layout, bool clause_side) -> vector<int>
        {
            auto side = clause_side ? layout.b_side : layout.a_side;
            std::sort(side.begin(), side.end());
            return side;
        }
    }

    auto build_frame(const CleanFormula & f, int columns, int t_size, const Gadget & variable_l,
            const Gadget & clause_l, int variable_copies) -> FrameGraph
    {
        check_formula(f);
        if (variable_l.graph.vertex_count() < 2 || clause_l.graph.vertex_count() < 2)
            throw InvalidArgument{"attached graphs need at least two vertices"};

        FrameGraph frame;
        auto & layout = frame.layout;
        auto & g = frame.graph;
        int n = f.variable_count;
        layout.columns = columns;
        layout.rows = row_count(3 * n, columns);
        layout.variable_copies = variable_copies;

        layout.m.assign(layout.rows, vector<int>(columns));
        for (int i = 0 ; i < layout.rows ; ++i)
            for (int j = 0 ; j < columns ; ++j)
                layout.m[i][j] = add_coloured_vertex(g, frame.colors, j + 1);
        for (int i = 0 ; i < t_size ; ++i)
            layout.t.push_back(add_coloured_vertex(g, frame.colors, -1));

        for (int c = 0 ; c < f.clause_count() ; ++c)
            for (int p = 0 ; p < static_cast<int>(f.clauses[c].size()) ; ++p) {
                int literal = f.clauses[c][p];
                layout.literals.push_back(LiteralSlot{c, p, std::abs(literal) - 1, literal > 0, {}, -1, {}});
            }
        auto functions = assign_functions(static_cast<int>(layout.literals.size()), layout.rows, columns);
        for (std::size_t i = 0 ; i < layout.literals.size() ; ++i)
            layout.literals[i].function = functions[i];

        vector<vector<int>> dummies(variable_copies);
        for (int copy = 0 ; copy < variable_copies ; ++copy) {
            for (auto & slot : layout.literals) {
                slot.a.push_back(add_coloured_vertex(g, frame.colors, 0));
                layout.a_side.push_back(slot.a.back());
            }
            for (int v = 0 ; v < n ; ++v) {
                dummies[copy].push_back(add_coloured_vertex(g, frame.colors, 0));
                layout.a_side.push_back(dummies[copy].back());
            }
        }
        for (auto & slot : layout.literals) {
            slot.b = add_coloured_vertex(g, frame.colors, columns + 1);
            layout.b_side.push_back(slot.b);
        }

        for (int copy = 0 ; copy < variable_copies ; ++copy)
            for (int v = 0 ; v < n ; ++v) {
                vector<int> positive, negative;
                for (std::size_t i = 0 ; i < layout.literals.size() ; ++i)
                    if (layout.literals[i].variable == v)
                        (layout.literals[i].positive ? positive : negative).push_back(static_cast<int>(i));
                auto & majority = positive.size() == 2 ? positive : negative;
                auto & minority = positive.size() == 2 ? negative : positive;
                VariableGadget gadget{v, copy, {
                    layout.literals[majority[0]].a[copy],
                    layout.literals[minority[0]].a[copy],
                    layout.literals[majority[1]].a[copy],
                    dummies[copy][v]}};
                for (int k = 0 ; k < 4 ; ++k)
                    attach(frame, variable_l, gadget.cycle[k], gadget.cycle[(k + 1) % 4], false);
                layout.variables.push_back(gadget);
            }

        for (int c = 0 ; c < f.clause_count() ; ++c) {
            ClauseGadget gadget{c, {}};
            for (auto & slot : layout.literals)
                if (slot.clause == c)
                    gadget.b.push_back(slot.b);
            for (std::size_t i = 0 ; i < gadget.b.size() ; ++i)
                for (std::size_t j = i + 1 ; j < gadget.b.size() ; ++j)
                    attach(frame, clause_l, gadget.b[i], gadget.b[j], true);
            layout.clauses.push_back(std::move(gadget));
        }

        std::sort(layout.a_side.begin(), layout.a_side.end());
        std::sort(layout.b_side.begin(), layout.b_side.end());
        return frame;
    }

    auto reduce_k_minus_e(const CleanFormula & f, int h) -> DeletionInstance
    {
        if (h < 1)
            throw InvalidArgument{"K_{h+2}-e construction needs h >= 1"};
        auto pattern = pattern_from("K-e", {h + 2});
        auto l = gadget_from(pattern, h, h + 1);
        auto frame = build_frame(f, h, 0, l, l);
        auto & layout = frame.layout;
        auto & g = frame.graph;

        for (int j = 0 ; j < h ; ++j)
            for (int j2 = j + 1 ; j2 < h ; ++j2)
                for (int i = 0 ; i < layout.rows ; ++i)
                    for (int i2 = 0 ; i2 < layout.rows ; ++i2)
                        g.add_edge(layout.m[i][j], layout.m[i2][j2]);
        for (auto & slot : layout.literals)
            for (int j = 0 ; j < h ; ++j) {
                int w = layout.m[slot.function[j]][j];
                g.add_edge(slot.a[0], w);
                g.add_edge(slot.b, w);
            }

        DeletionInstance instance;
        instance.construction = "k-e";
        instance.graph = std::move(g);
        instance.pattern = pattern;
        instance.budget = budget_5n_m(f);
        instance.h = h;
        finish(instance, f, frame, l, l);
        return instance;
    }

    auto reduce_kh_i2(const CleanFormula & f, int h) -> DeletionInstance
    {
        if (h < 1)
            throw InvalidArgument{"K_h+I_2 construction needs h >= 1"};
        auto pattern = pattern_from("K", {h}).disjoint_union(pattern_from("I", {2}));
        auto l = gadget_from(pattern_from("K", {std::max(h, 2)}), 0, 1);
        auto frame = build_frame(f, h, 0, l, l);
        auto & layout = frame.layout;
        auto & g = frame.graph;

        auto central = layout.central();
        for (std::size_t a = 0 ; a < central.size() ; ++a)
            for (std::size_t b = a + 1 ; b < central.size() ; ++b)
                g.add_edge(central[a], central[b]);
        for (auto & slot : layout.literals)
            for (int j = 0 ; j < h ; ++j)
                for (int i = 0 ; i < layout.rows ; ++i)
                    if (i != slot.function[j]) {
                        g.add_edge(slot.a[0], layout.m[i][j]);
                        g.add_edge(slot.b, layout.m[i][j]);
                    }
        for (auto & copy : layout.copies)
            add_complete(g, copy.internal, central);

        DeletionInstance instance;
        instance.construction = "kh+i2";
        instance.graph = std::move(g);
        instance.pattern = pattern;
        instance.budget = budget_5n_m(f);
        instance.h = h;
        finish(instance, f, frame, l, l);
        return instance;
    }

    auto reduce_kvx(const CleanFormula & f, int h, int x) -> DeletionInstance
    {
        if (h < 1 || x < 0 || x > h - 1)
            throw InvalidArgument{"K_{h+1}+v_x construction needs 0 <= x <= h-1"};
        int columns = h - x - 1;
        if (columns < 1)
            throw InvalidArgument{"K_{h+1}+v_x construction needs h - x - 1 >= 1"};

        auto pattern = x == 0 ? pattern_from("K", {h + 1}).disjoint_union(pattern_from("I", {1})) : pattern_from("Kvx", {h, x});
        auto l = x == 0 ? gadget_from(pattern_from("K", {h + 1}), 0, 1) : gadget_from(pattern, 0, h + 1);
        auto frame = build_frame(f, columns, x + 1, l, l);
        auto & layout = frame.layout;
        auto & g = frame.graph;

        vector<int> m_all;
        for (auto & row : layout.m)
            m_all.insert(m_all.end(), row.begin(), row.end());
        for (int j = 0 ; j < columns ; ++j)
            for (int j2 = j + 1 ; j2 < columns ; ++j2)
                for (int i = 0 ; i < layout.rows ; ++i)
                    for (int i2 = 0 ; i2 < layout.rows ; ++i2)
                        g.add_edge(layout.m[i][j], layout.m[i2][j2]);
        for (std::size_t a = 0 ; a < layout.t.size() ; ++a)
            for (std::size_t b = a + 1 ; b < layout.t.size() ; ++b)
                g.add_edge(layout.t[a], layout.t[b]);

        auto a_side = all_side(layout, false);
        auto b_side = all_side(layout, true);
        add_complete(g, {layout.t[0]}, a_side);
        add_complete(g, {layout.t[0]}, m_all);
        for (std::size_t k = 1 ; k < layout.t.size() ; ++k) {
            add_complete(g, {layout.t[k]}, a_side);
            add_complete(g, {layout.t[k]}, b_side);
            add_complete(g, {layout.t[k]}, m_all);
        }

        for (auto & slot : layout.literals)
            for (int j = 0 ; j < columns ; ++j) {
                g.add_edge(slot.a[0], layout.m[slot.function[j]][j]);
                for (int i = 0 ; i < layout.rows ; ++i)
                    if (i != slot.function[j])
                        g.add_edge(slot.b, layout.m[i][j]);
            }

        if (x == 0)
            for (auto & copy : layout.copies)
                if (copy.clause_side)
                    for (int j = 0 ; j < columns && j < static_cast<int>(copy.internal.size()) ; ++j)
                        for (int i = 0 ; i < layout.rows ; ++i)
                            g.add_edge(copy.internal[j], layout.m[i][j]);

        DeletionInstance instance;
        instance.construction = "kvx";
        instance.graph = std::move(g);
        instance.pattern = pattern;
        instance.budget = budget_5n_m(f);
        instance.h = h;
        instance.x = x;
        finish(instance, f, frame, l, l);
        return instance;
    }

    auto reduce_khh(const CleanFormula & f, int h) -> DeletionInstance
    {
        if (h < 2)
            throw InvalidArgument{"K_{h,h} construction needs h >= 2"};
        auto pattern = pattern_from("Kab", {h, h});
        auto l = gadget_from(pattern, 0, 1);
        auto frame = build_frame(f, h, 0, l, l, h - 1);
        auto & layout = frame.layout;
        auto & g = frame.graph;

        for (auto & slot : layout.literals)
            for (int j = 0 ; j < h ; ++j) {
                int w = layout.m[slot.function[j]][j];
                for (int a : slot.a)
                    g.add_edge(a, w);
                g.add_edge(slot.b, w);
            }

        DeletionInstance instance;
        instance.construction = "khh";
        instance.graph = std::move(g);
        instance.pattern = pattern;
        instance.budget = (2 * h + 1) * f.variable_count - f.clause_count();
        instance.h = h;
        finish(instance, f, frame, l, l);
        return instance;
    }

    auto colorful_choice(const Pattern & h) -> ColorfulChoice
    {
        auto components = h.components();
        ColorfulChoice choice;
        choice.component = -1;
        for (std::size_t c = 0 ; c < components.size() ; ++c)
            if (! h.restricted(components[c]).is_clique()) {
                choice.component = static_cast<int>(c);
                break;
            }
        if (choice.component == -1)
            throw InvalidArgument{"every component of the pattern is a clique"};

        LabelSet comp = components[choice.component];
        vector<int> labels;
        for (int z = 0 ; z < h.size() ; ++z)
            if (has_label(comp, z))
                labels.push_back(z);

        bool found = false;
        for (std::size_t a = 0 ; a < labels.size() && ! found ; ++a)
            for (std::size_t b = a + 1 ; b < labels.size() && ! found ; ++b)
                if (! h.adjacent(labels[a], labels[b])) {
                    choice.z0 = labels[a];
                    choice.z_last = labels[b];
                    found = true;
                }
        for (int z : labels)
            if (z != choice.z0 && z != choice.z_last)
                choice.column_labels.push_back(z);

        auto degree_in = [&] (int z) { return label_count(h.neighbours(z) & comp); };
        int edges = 0;
        bool max_two = true;
        for (int z : labels) {
            edges += degree_in(z);
            max_two = max_two && degree_in(z) <= 2;
        }
        edges /= 2;
        choice.path = max_two && edges == static_cast<int>(labels.size()) - 1;

        auto non_separating = [&] (int z) {
            LabelSet rest = comp & ~(LabelSet{1} << z);
            return h.restricted(rest).components().size() == 1;
        };

        auto pick = [&] (int anchor, int & beta, int & gamma) {
            if (choice.path) {
                beta = gamma = -1;
                for (int z : labels)
                    if (z != anchor && degree_in(z) == 1 && beta == -1)
                        beta = z;
                for (int z : labels)
                    if (z != anchor && degree_in(z) == 2 && gamma == -1)
                        gamma = z;
            }
            else {
                vector<int> candidates;
                for (int z : labels)
                    if (z != anchor && non_separating(z))
                        candidates.push_back(z);
                if (candidates.size() < 2)
                    throw std::logic_error{"non-path component without two non-separating vertices"};
                beta = candidates[0];
                gamma = candidates[1];
            }
            if (beta == -1 || gamma == -1)
                throw std::logic_error{"no valid glue vertices"};
        };
        pick(choice.z0, choice.a_beta, choice.a_gamma);
        pick(choice.z_last, choice.b_beta, choice.b_gamma);
        return choice;
    }

    auto colorful_gadget(const Pattern & h, const ColorfulChoice & choice, bool clause_side) -> Gadget
    {
        LabelSet comp = h.components()[choice.component];
        vector<int> labels;
        for (int z = 0 ; z < h.size() ; ++z)
            if (has_label(comp, z))
                labels.push_back(z);
        int anchor = clause_side ? choice.z_last : choice.z0;
        int beta = clause_side ? choice.b_beta : choice.a_beta;
        int gamma = clause_side ? choice.b_gamma : choice.a_gamma;

        Gadget gadget;
        Coloring colors;
        std::array<std::map<int, int>, 3> id;
        for (int copy = 0 ; copy < 3 ; ++copy)
            for (int z : labels) {
                if (copy == 1 && z == beta)
                    id[1][z] = id[0][z];
                else if (copy == 2 && z == gamma)
                    id[2][z] = id[1][z];
                else {
                    id[copy][z] = gadget.graph.add_vertex();
                    colors.push_back(z);
                }
            }
        for (int copy = 0 ; copy < 3 ; ++copy)
            for (int a : labels)
                for (int b : labels)
                    if (a < b && h.adjacent(a, b))
                        gadget.graph.add_edge(id[copy][a], id[copy][b]);
        if (choice.path)
            for (int a : labels)
                for (int b : labels)
                    if (a != gamma && b != gamma && id[1][a] != id[2][b])
                        gadget.graph.add_edge(id[1][a], id[2][b]);

        gadget.first = id[0][anchor];
        gadget.second = id[2][anchor];
        gadget.colors = std::move(colors);
        return gadget;
    }

    auto reduce_colorful(const CleanFormula & f, const Pattern & h) -> DeletionInstance
    {
        auto choice = colorful_choice(h);
        int columns = static_cast<int>(choice.column_labels.size());
        auto l_a = colorful_gadget(h, choice, false);
        auto l_b = colorful_gadget(h, choice, true);
        auto frame = build_frame(f, columns, 0, l_a, l_b);
        auto & layout = frame.layout;
        auto & g = frame.graph;

        // frame colours are positional; recolour with H labels
        Coloring colors(g.vertex_count(), -1);
        for (int i = 0 ; i < layout.rows ; ++i)
            for (int j = 0 ; j < columns ; ++j)
                colors[layout.m[i][j]] = choice.column_labels[j];
        for (auto & slot : layout.literals) {
            colors[slot.a[0]] = choice.z0;
            colors[slot.b] = choice.z_last;
        }
        for (auto & gadget : layout.variables)
            colors[gadget.cycle[3]] = choice.z0;
        for (auto & copy : layout.copies)
            for (int v : copy.internal)
                colors[v] = frame.colors[v];

        for (int j = 0 ; j < columns ; ++j)
            for (int j2 = 0 ; j2 < columns ; ++j2)
                if (j < j2 && h.adjacent(choice.column_labels[j], choice.column_labels[j2]))
                    for (int i = 0 ; i < layout.rows ; ++i)
                        for (int i2 = 0 ; i2 < layout.rows ; ++i2)
                            g.add_edge(layout.m[i][j], layout.m[i2][j2]);

        for (auto & slot : layout.literals)
            for (int j = 0 ; j < columns ; ++j) {
                int zj = choice.column_labels[j];
                for (auto [vertex, anchor] : {std::pair{slot.a[0], choice.z0}, std::pair{slot.b, choice.z_last}}) {
                    if (h.adjacent(anchor, zj))
                        g.add_edge(vertex, layout.m[slot.function[j]][j]);
                    else
                        for (int i = 0 ; i < layout.rows ; ++i)
                            if (i != slot.function[j])
                                g.add_edge(vertex, layout.m[i][j]);
                }
            }

        int n = f.variable_count, m = f.clause_count();
        int budget = 15 * n - 4 * m;

        // k + 1 coloured copies of every other component
        auto components = h.components();
        for (std::size_t c = 0 ; c < components.size() ; ++c) {
            if (static_cast<int>(c) == choice.component)
                continue;
            vector<int> labels;
            for (int z = 0 ; z < h.size() ; ++z)
                if (has_label(components[c], z))
                    labels.push_back(z);
            for (int copy = 0 ; copy <= budget ; ++copy) {
                std::map<int, int> id;
                for (int z : labels) {
                    id[z] = g.add_vertex();
                    colors.push_back(z);
                }
                for (int a : labels)
                    for (int b : labels)
                        if (a < b && h.adjacent(a, b))
                            g.add_edge(id[a], id[b]);
            }
        }

        DeletionInstance instance;
        instance.construction = "colorful";
        instance.graph = std::move(g);
        instance.pattern = h;
        instance.coloring = std::move(colors);
        instance.budget = budget;
        instance.h = columns;
        finish(instance, f, frame, l_a, l_b);
        for (auto & comp : components)
            instance.component_bound = std::max(instance.component_bound, label_count(comp));
        return instance;
    }

    auto vc_kind_name(VcKind kind) -> string
    {
        switch (kind) {
            case VcKind::K3:   return "vc-k3";
            case VcKind::I3:   return "vc-i3";
            case VcKind::K2K1: return "vc-k2k1";
        }
        return "unknown";
    }

    auto vc_budget_map(int k) -> int
    {
        return 2 * k;
    }

    auto reduce_vc_colorful(const Graph & input, VcKind kind, int vc_budget) -> DeletionInstance
    {
        if (input.max_degree() > 3)
            throw InvalidArgument{"vertex cover reduction needs maximum degree at most 3"};

        Graph g(input.vertex_count());
        Coloring colors(input.vertex_count(), 0);
        auto fresh = [&] (int colour) {
            colors.push_back(colour);
            return g.add_vertex();
        };
        // copy 1 = {u, p, q1}, copy 2 = {r, p, c}, copy 3 = {v, q3, c}; labels z1, z2, z3 are 0, 1, 2
        for (auto & [u, v] : input.edges()) {
            int p = fresh(1), q1 = fresh(2), r = fresh(0), c = fresh(2), q3 = fresh(1);
            for (auto [a, b] : std::initializer_list<std::pair<int, int>>{{u, p}, {u, q1}, {p, q1}, {r, p}, {r, c}, {p, c}, {v, q3}, {v, c}, {q3, c}})
                g.add_edge(a, b);
        }

        Pattern pattern;
        if (kind == VcKind::K3)
            pattern = pattern_from("K", {3});
        else if (kind == VcKind::I3) {
            pattern = pattern_from("I", {3});
            Graph complemented(g.vertex_count());
            for (int a = 0 ; a < g.vertex_count() ; ++a)
                for (int b = a + 1 ; b < g.vertex_count() ; ++b)
                    if (colors[a] != colors[b] && ! g.adjacent(a, b))
                        complemented.add_edge(a, b);
            g = std::move(complemented);
        }
        else {
            pattern = pattern_from("K", {2}).disjoint_union(pattern_from("I", {1}));
            Graph complemented(g.vertex_count());
            for (auto & [a, b] : g.edges())
                if (colors[a] != 2 && colors[b] != 2)
                    complemented.add_edge(a, b);
            for (int a = 0 ; a < g.vertex_count() ; ++a)
                for (int b = 0 ; b < g.vertex_count() ; ++b)
                    if (colors[a] == 2 && colors[b] != 2 && ! g.adjacent(a, b))
                        complemented.add_edge(a, b);
            g = std::move(complemented);
        }

        DeletionInstance instance;
        instance.construction = vc_kind_name(kind);
        instance.graph = std::move(g);
        instance.pattern = pattern;
        instance.coloring = std::move(colors);
        instance.budget = vc_budget_map(vc_budget);
        instance.h = 3;
        instance.hint.bags.push_back(all_vertices(instance.graph));
        instance.component_bound = instance.graph.vertex_count();
        return instance;
    }

    auto min_vertex_cover(const Graph & g) -> int
    {
        int n = g.vertex_count();
        if (n > 30)
            throw CapExceeded{"brute-force vertex cover is limited to 30 vertices"};
        auto edges = g.edges();
        int best = n;
        for (std::uint64_t mask = 0 ; mask < (std::uint64_t{1} << n) ; ++mask) {
            int size = __builtin_popcountll(mask);
            if (size >= best)
                continue;
            bool covers = std::all_of(edges.begin(), edges.end(), [&] (auto & e) {
                return ((mask >> e.first) & 1u) || ((mask >> e.second) & 1u);
            });
            if (covers)
                best = size;
        }
        return best;
    }

    auto assignment_solution(const DeletionInstance & instance, const CleanFormula & f,
            const vector<bool> & assignment) -> vector<int>
    {
        auto & layout = instance.layout;
        auto truth = [&] (const LiteralSlot & slot) { return assignment[slot.variable] == slot.positive; };
        vector<int> solution;
        for (auto & gadget : layout.variables) {
            // cycle[0] carries a literal of the majority sign
            const LiteralSlot * majority = nullptr;
            for (auto & slot : layout.literals)
                if (slot.a[gadget.copy] == gadget.cycle[0])
                    majority = &slot;
            if (truth(*majority)) {
                solution.push_back(gadget.cycle[0]);
                solution.push_back(gadget.cycle[2]);
            }
            else {
                solution.push_back(gadget.cycle[3]);
                solution.push_back(gadget.cycle[1]);
            }
        }
        for (int c = 0 ; c < f.clause_count() ; ++c) {
            bool kept = false;
            for (auto & slot : layout.literals)
                if (slot.clause == c) {
                    if (! kept && truth(slot))
                        kept = true;
                    else
                        solution.push_back(slot.b);
                }
        }
        if (instance.construction == "colorful") {
            // each glued gadget needs one more vertex beside its deleted attachment
            auto choice = colorful_choice(instance.pattern);
            LabelSet component = instance.pattern.components()[choice.component];
            std::set<int> taken(solution.begin(), solution.end());
            for (auto & copy : layout.copies) {
                vector<int> scope = copy.internal;
                scope.push_back(copy.first);
                scope.push_back(copy.second);
                std::sort(scope.begin(), scope.end());
                auto embeddings = enumerate_induced_embeddings(instance.graph, instance.pattern, component, scope, &*instance.coloring);
                vector<vector<int>> open;
                for (auto & e : embeddings) {
                    vector<int> image;
                    for (int z = 0 ; z < instance.pattern.size() ; ++z)
                        if (e.image[z] >= 0)
                            image.push_back(e.image[z]);
                    if (std::none_of(image.begin(), image.end(), [&] (int v) { return taken.contains(v); }))
                        open.push_back(std::move(image));
                }
                if (open.empty())
                    continue;
                for (int v : copy.internal)
                    if (std::all_of(open.begin(), open.end(), [&] (auto & o) { return std::find(o.begin(), o.end(), v) != o.end(); })) {
                        taken.insert(v);
                        solution.push_back(v);
                        break;
                    }
            }
        }
        std::sort(solution.begin(), solution.end());
        return solution;
    }

    auto verify_reduction(const DeletionInstance & instance, const CleanFormula & f) -> ReductionReport
    {
        ReductionReport report;
        report.budget = instance.budget;

        int n = f.variable_count, m = f.clause_count();
        int literal_slack = 0, three = 0, two = 0;
        for (auto & clause : f.clauses) {
            literal_slack += static_cast<int>(clause.size()) - 1;
            (clause.size() == 3 ? three : two) += 1;
        }
        int base = 2 * n + literal_slack;
        bool identities = base == 5 * n - m
            && three == 3 * n - 2 * m && two == 3 * m - 3 * n
            && base + 4 * n + (3 * m - 3 * n) + 3 * (3 * n - 2 * m) == 15 * n - 4 * m;
        int expected = base;
        if (instance.construction == "khh")
            expected = base + 2 * (instance.h - 2) * n;
        else if (instance.construction == "colorful")
            expected = base + 4 * n + two + 3 * three;
        if (instance.construction == "khh")
            identities = identities && expected == (2 * instance.h + 1) * n - m;
        report.budget_identity_ok = identities && expected == instance.budget;

        for (auto & c : components_without(instance.graph, instance.central))
            report.max_component = std::max(report.max_component, static_cast<int>(c.size()));
        report.component_bound = instance.component_bound;
        report.p1_ok = report.max_component <= report.component_bound;

        auto assignment = satisfying_assignment(f);
        report.satisfiable = assignment.has_value();
        const Coloring * coloring = instance.coloring ? &*instance.coloring : nullptr;
        vector<int> solution;
        bool found = false;
        if (assignment) {
            report.certificate_tried = true;
            solution = assignment_solution(instance, f, *assignment);
            vector<char> removed(instance.graph.vertex_count(), 0);
            for (int v : solution)
                removed[v] = 1;
            vector<int> scope;
            for (int v = 0 ; v < instance.graph.vertex_count() ; ++v)
                if (! removed[v])
                    scope.push_back(v);
            for_each_induced_embedding(instance.graph, instance.pattern, instance.pattern.all_labels(), scope, coloring,
                    [&] (const Embedding &) { return ++report.certificate_survivors < 1000; });
            report.certificate_ok = report.certificate_survivors == 0 && static_cast<int>(solution.size()) <= instance.budget;
            found = report.certificate_ok;
        }
        if (! found) {
            report.searched = true;
            OracleOptions options;
            options.override_limit = true;
            options.cutoff = instance.budget;
            auto result = oracle_solve(instance.graph, instance.pattern, coloring, options);
            report.oracle_nodes = result.nodes;
            found = result.found;
            if (found)
                solution = result.witness;
        }
        report.within_budget = found;
        report.equivalence_ok = report.satisfiable == report.within_budget;

        if (found) {
            report.witness = solution;
            report.p2_checked = true;
            auto in_witness = [&] (int v) { return std::binary_search(solution.begin(), solution.end(), v); };
            for (auto & gadget : instance.layout.variables) {
                auto & c = gadget.cycle;
                bool first_pair = in_witness(c[0]) && in_witness(c[2]);
                bool second_pair = in_witness(c[3]) && in_witness(c[1]);
                if (! first_pair && ! second_pair) {
                    report.p2_ok = false;
                    report.notes.push_back("variable " + to_string(gadget.variable + 1) + " copy " + to_string(gadget.copy + 1)
                            + " keeps both pairs partly");
                }
            }
            for (auto & gadget : instance.layout.clauses) {
                int taken = static_cast<int>(std::count_if(gadget.b.begin(), gadget.b.end(), in_witness));
                if (taken < static_cast<int>(gadget.b.size()) - 1) {
                    report.p2_ok = false;
                    report.notes.push_back("clause " + to_string(gadget.clause + 1) + " keeps " + to_string(gadget.b.size() - taken)
                            + " literal vertices");
                }
            }
        }
        return report;
    }

    auto verify_vc_reduction(const DeletionInstance & instance, const Graph & g) -> VcReport
    {
        VcReport report;
        report.vertex_cover = min_vertex_cover(g);
        report.edges = g.edge_count();
        report.vertex_count = instance.graph.vertex_count();
        report.size_ok = report.vertex_count == g.vertex_count() + 5 * g.edge_count();

        OracleOptions options;
        options.override_limit = true;
        auto result = oracle_solve(instance.graph, instance.pattern, &*instance.coloring, options);
        report.opt = result.opt;
        report.occurrences = result.occurrence_count;
        report.occurrences_ok = report.occurrences == 3 * g.edge_count();
        report.budget_ok = report.opt == vc_budget_map(report.vertex_cover);
        report.edge_count_ok = report.opt == report.vertex_cover + report.edges;
        return report;
    }
}
