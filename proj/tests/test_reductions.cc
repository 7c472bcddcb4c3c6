#include "support.hh"

#include <hisd/errors.hh>
#include <hisd/oracle.hh>
#include <hisd/reductions.hh>

#include <doctest.h>

#include <set>

using namespace hisd;
using namespace hisd::testing;

namespace
{
    // (x or y) and (not x or not y) and (x or not y)
    auto small_formula() -> CleanFormula
    {
        return {2, {{1, 2}, {-1, -2}, {1, -2}}};
    }

    // Counts clause multisets in which every variable occurs twice positively
    // and once negatively, by trying every multiset of candidate clauses.
    auto count_by_clause_multisets(int n) -> long
    {
        std::vector<std::vector<int>> candidates;
        for (int mask = 0 ; mask < (1 << n) ; ++mask) {
            std::vector<int> vars;
            for (int v = 0 ; v < n ; ++v)
                if ((mask >> v) & 1)
                    vars.push_back(v + 1);
            if (vars.size() < 2 || vars.size() > 3)
                continue;
            for (int signs = 0 ; signs < (1 << vars.size()) ; ++signs) {
                std::vector<int> clause;
                for (std::size_t i = 0 ; i < vars.size() ; ++i)
                    clause.push_back((signs >> i) & 1 ? -vars[i] : vars[i]);
                candidates.push_back(clause);
            }
        }
        long count = 0;
        std::vector<int> pos(n, 0), neg(n, 0);
        auto search = [&] (auto & self, std::size_t from, int literals) -> void {
            if (literals == 3 * n) {
                bool fits = true;
                for (int v = 0 ; v < n ; ++v)
                    fits = fits && pos[v] == 2 && neg[v] == 1;
                count += fits;
                return;
            }
            for (std::size_t i = from ; i < candidates.size() ; ++i) {
                bool room = true;
                for (int l : candidates[i])
                    room = room && (l > 0 ? pos[l - 1] < 2 : neg[-l - 1] < 1);
                if (! room)
                    continue;
                for (int l : candidates[i])
                    ++(l > 0 ? pos[l - 1] : neg[-l - 1]);
                self(self, i, literals + static_cast<int>(candidates[i].size()));
                for (int l : candidates[i])
                    --(l > 0 ? pos[l - 1] : neg[-l - 1]);
            }
        };
        search(search, 0, 0);
        return count;
    }

    auto first_unsatisfiable(int n) -> CleanFormula
    {
        CleanFormula found;
        for_each_clean_formula(n, true, [&] (const CleanFormula & f) {
            if (is_satisfiable(f))
                return true;
            found = f;
            return false;
        });
        return found;
    }
}

TEST_SUITE("reductions")
{
    TEST_CASE("clean formula validation")
    {
        CHECK(validate_clean(small_formula()).valid());

        CleanFormula four_times{2, {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}};
        CHECK_FALSE(validate_clean(four_times).valid());

        CleanFormula repeated{1, {{1, -1}, {1, 0}}};
        auto report = validate_clean(repeated);
        REQUIRE_FALSE(report.valid());
        bool mentions_repeat = false;
        for (auto & v : report.violations)
            mentions_repeat = mentions_repeat || v.find("repeats variable") != std::string::npos;
        CHECK(mentions_repeat);

        CleanFormula one_sign{2, {{1, 2}, {1, -2}, {1, 2}}};
        CHECK_FALSE(validate_clean(one_sign).valid());
    }

    TEST_CASE("clause count identities hold on every enumerated formula")
    {
        for (int n = 2 ; n <= 4 ; ++n)
            for_each_clean_formula(n, false, [&] (const CleanFormula & f) {
                int m = f.clause_count(), literals = 0, three = 0, two = 0;
                for (auto & c : f.clauses) {
                    literals += static_cast<int>(c.size());
                    three += c.size() == 3;
                    two += c.size() == 2;
                }
                CHECK(validate_clean(f).valid());
                CHECK(literals == 3 * n);
                CHECK(three == 3 * n - 2 * m);
                CHECK(two == 3 * m - 3 * n);
                return true;
            });
    }

    TEST_CASE("formula enumeration counts")
    {
        std::vector<long> all, classes;
        for (int n = 2 ; n <= 4 ; ++n) {
            long a = 0, c = 0;
            for_each_clean_formula(n, false, [&] (const CleanFormula &) { ++a; return true; });
            for_each_clean_formula(n, true, [&] (const CleanFormula &) { ++c; return true; });
            all.push_back(a);
            classes.push_back(c);
        }
        CHECK(all[0] == 2);
        CHECK(all[1] == count_by_clause_multisets(3));
        CHECK(classes == std::vector<long>{2, 10, 99});

        std::set<CleanFormula, bool (*) (const CleanFormula &, const CleanFormula &)> seen{
            [] (const CleanFormula & a, const CleanFormula & b) { return a.clauses < b.clauses; }};
        for_each_clean_formula(4, false, [&] (const CleanFormula & f) {
            seen.insert(canonical_formula(f));
            return true;
        });
        CHECK(static_cast<long>(seen.size()) == classes[2]);
    }

    TEST_CASE("satisfiability by brute force")
    {
        CHECK(is_satisfiable(small_formula()));
        auto unsat = first_unsatisfiable(4);
        REQUIRE(unsat.variable_count == 4);
        CHECK_FALSE(satisfying_assignment(unsat).has_value());
    }

    TEST_CASE("function assignment is lexicographic and injective")
    {
        CHECK(assign_functions(1, 2, 2) == std::vector<std::vector<int>>{{0, 0}});
        CHECK(assign_functions(3, 2, 2) == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}});
        CHECK(row_count(12, 2) == 4);
        auto twelve = assign_functions(12, 4, 2);
        CHECK(std::set<std::vector<int>>(twelve.begin(), twelve.end()).size() == 12);
        CHECK_THROWS_AS(assign_functions(5, 2, 2), InvalidArgument);
    }

    TEST_CASE("frame counts for the small formula")
    {
        auto inst = reduce_k_minus_e(small_formula(), 2);
        auto & layout = inst.layout;
        CHECK(layout.rows == 3);
        CHECK(layout.columns == 2);
        CHECK(layout.variables.size() * 4 == 8);
        CHECK(layout.literals.size() == 6);
        CHECK(layout.copies.size() == 11);
        CHECK(inst.pattern == parse_pattern("K4-e"));
    }

    TEST_CASE("budgets follow the clause data")
    {
        auto f = small_formula();
        CHECK(reduce_k_minus_e(f, 1).budget == 7);
        CHECK(reduce_kh_i2(f, 2).budget == 7);
        CHECK(reduce_kvx(f, 2, 0).budget == 7);
        CHECK(reduce_khh(f, 2).budget == 7);
        CHECK(reduce_khh(f, 3).budget == 11);
        CHECK(reduce_colorful(f, parse_pattern("P3")).budget == 18);
    }

    TEST_CASE("construction parameters")
    {
        auto f = small_formula();
        auto kvx = reduce_kvx(f, 2, 0);
        CHECK(kvx.layout.columns == 1);
        CHECK(kvx.layout.t.size() == 1);
        CHECK(kvx.pattern == parse_pattern("K3+I1"));

        auto kvx31 = reduce_kvx(f, 3, 1);
        CHECK(kvx31.layout.columns == 1);
        CHECK(kvx31.layout.t.size() == 2);
        CHECK_THROWS_AS(reduce_kvx(f, 3, 2), InvalidArgument);
        CHECK_THROWS_AS(reduce_kvx(f, 2, 2), InvalidArgument);

        CHECK(reduce_khh(f, 2).layout.variable_copies == 1);
        CHECK(reduce_khh(f, 3).layout.variable_copies == 2);
        CHECK_THROWS_AS(reduce_khh(f, 1), InvalidArgument);

        CleanFormula bad{2, {{1, 2}, {1, 2}, {1, 2}}};
        CHECK_THROWS_AS(reduce_k_minus_e(bad, 2), InvalidArgument);
    }

    TEST_CASE("K_h + I_2 makes every gadget interior complete to M")
    {
        auto inst = reduce_kh_i2(small_formula(), 2);
        int m_size = inst.layout.rows * inst.layout.columns;
        for (auto & copy : inst.layout.copies)
            for (int v : copy.internal)
                CHECK(inst.graph.degree(v) >= m_size);
    }

    TEST_CASE("colourful choice and gadget")
    {
        auto p3 = colorful_choice(parse_pattern("P3"));
        CHECK(p3.z0 == 0);
        CHECK(p3.z_last == 2);
        CHECK(p3.column_labels == std::vector<int>{1});
        CHECK_THROWS_AS(colorful_choice(parse_pattern("I3")), InvalidArgument);

        for (auto name : {"P3", "C4", "P4", "K1,3", "K4-e", "P3+I1"}) {
            auto h = parse_pattern(name);
            auto choice = colorful_choice(h);
            auto h0 = h.restricted(h.components()[choice.component]);
            for (bool clause_side : {false, true}) {
                auto gadget = colorful_gadget(h, choice, clause_side);
                REQUIRE(gadget.colors.has_value());
                auto occ = enumerate_occurrences(gadget.graph, h0, &*gadget.colors);
                CHECK(occ.size() == 3);
                CHECK(min_hitting_set(occ, gadget.graph.vertex_count()).size == 2);
            }
        }
    }

    TEST_CASE("colourful frame colours")
    {
        auto inst = reduce_colorful(small_formula(), parse_pattern("C4"));
        REQUIRE(inst.coloring.has_value());
        auto & c = *inst.coloring;
        for (int label : c)
            CHECK((label >= 0 && label < inst.pattern.size()));
        for (int j = 0 ; j < inst.layout.columns ; ++j)
            for (int i = 0 ; i < inst.layout.rows ; ++i)
                CHECK(c[inst.layout.m[i][j]] == c[inst.layout.m[0][j]]);
    }

    TEST_CASE("vertex cover constructions")
    {
        auto k2 = complete(2);
        auto inst = reduce_vc_colorful(k2, VcKind::K3, 1);
        CHECK(inst.graph.vertex_count() == 7);
        CHECK(enumerate_occurrences(inst.graph, inst.pattern, &*inst.coloring).size() == 3);
        CHECK(oracle_solve(inst.graph, inst.pattern, &*inst.coloring).opt == vc_budget_map(1));

        CHECK(reduce_vc_colorful(path(3), VcKind::K3).graph.vertex_count() == 13);
        CHECK_THROWS_AS(reduce_vc_colorful(star(4), VcKind::K3), InvalidArgument);
        CHECK(min_vertex_cover(cycle(4)) == 2);
        CHECK(min_vertex_cover(complete(4)) == 3);

        for (auto kind : {VcKind::I3, VcKind::K2K1}) {
            auto other = reduce_vc_colorful(k2, kind, 1);
            CHECK(other.graph.vertex_count() == 7);
            CHECK(enumerate_occurrences(other.graph, other.pattern, &*other.coloring).size() == 3);
        }
    }

    TEST_CASE("verification on a satisfiable and an unsatisfiable formula")
    {
        auto f = small_formula();
        for (auto inst : {reduce_k_minus_e(f, 2), reduce_khh(f, 2), reduce_colorful(f, parse_pattern("P3"))}) {
            auto r = verify_reduction(inst, f);
            CHECK(r.budget_identity_ok);
            CHECK(r.p1_ok);
            CHECK(r.satisfiable);
            CHECK(r.within_budget);
            CHECK(r.p2_ok);
            CHECK(r.ok());
        }

        auto unsat = first_unsatisfiable(4);
        for (auto inst : {reduce_k_minus_e(unsat, 2), reduce_khh(unsat, 2)}) {
            auto r = verify_reduction(inst, unsat);
            CHECK_FALSE(r.satisfiable);
            CHECK_FALSE(r.within_budget);
            CHECK(r.ok());
        }
    }

    TEST_CASE("assignment certificates have the budget size")
    {
        auto f = small_formula();
        auto assignment = satisfying_assignment(f);
        REQUIRE(assignment.has_value());
        for (auto inst : {reduce_k_minus_e(f, 2), reduce_khh(f, 3), reduce_colorful(f, parse_pattern("C4"))}) {
            auto x = assignment_solution(inst, f, *assignment);
            CHECK(static_cast<int>(x.size()) == inst.budget);
        }
    }

    TEST_CASE("decomposition hints are valid")
    {
        auto f = small_formula();
        for (auto inst : {reduce_k_minus_e(f, 2), reduce_kvx(f, 2, 0), reduce_colorful(f, parse_pattern("P3"))}) {
            CHECK(validate(inst.graph, inst.hint).valid());
            CHECK(inst.hint.width() < static_cast<int>(inst.central.size()) + inst.component_bound);
        }
    }

    TEST_CASE("formula hash is stable")
    {
        auto f = small_formula();
        CHECK(formula_hash(f) == formula_hash(small_formula()));
        CHECK(formula_hash(f).size() == 16);
        CleanFormula g = f;
        std::swap(g.clauses[0], g.clauses[1]);
        CHECK(formula_hash(f) != formula_hash(g));
    }
}
