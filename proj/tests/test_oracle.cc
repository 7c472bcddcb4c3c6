#include "support.hh"

#include <hisd/errors.hh>
#include <hisd/oracle.hh>

#include <doctest.h>

#include <random>

using namespace hisd;
using namespace hisd::testing;

TEST_SUITE("oracle")
{
    TEST_CASE("occurrence enumeration")
    {
        CHECK(enumerate_occurrences(complete(4), parse_pattern("K3")).size() == 4);

        auto p4 = enumerate_occurrences(path(4), parse_pattern("P3"));
        CHECK(p4 == OccurrenceSet{{0, 1, 2}, {1, 2, 3}});

        auto c6 = enumerate_occurrences(cycle(6), parse_pattern("I3"));
        CHECK(c6 == OccurrenceSet{{0, 2, 4}, {1, 3, 5}});
    }

    TEST_CASE("hitting sets of small families")
    {
        auto none = min_hitting_set({}, 0);
        CHECK(none.size == 0);
        CHECK(none.witness.empty());

        auto one = min_hitting_set({{0, 1, 2}}, 3);
        CHECK(one.size == 1);
        REQUIRE(one.witness.size() == 1);
        CHECK(one.witness[0] <= 2);

        auto k5 = enumerate_occurrences(complete(5), parse_pattern("K3"));
        CHECK(min_hitting_set(k5, 5).size == 3);
    }

    TEST_CASE("cutoff search reports whether a small set exists")
    {
        auto k5 = enumerate_occurrences(complete(5), parse_pattern("K3"));
        CHECK_FALSE(min_hitting_set(k5, 5, 2).found);
        auto within = min_hitting_set(k5, 5, 3);
        CHECK(within.found);
        CHECK(within.size <= 3);
    }

    TEST_CASE("solve on fixed graphs")
    {
        auto k3 = parse_pattern("K3");
        CHECK(oracle_solve(complete(3), k3).opt == 1);
        auto two = graph_of(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
        CHECK(oracle_solve(two, k3).opt == 2);
        CHECK(oracle_solve(petersen(), parse_pattern("C4")).opt == 0);
    }

    TEST_CASE("size guard")
    {
        Graph big(17);
        CHECK_THROWS_AS(oracle_solve(big, parse_pattern("K3")), CapExceeded);
        OracleOptions options;
        options.override_limit = true;
        CHECK(oracle_solve(big, parse_pattern("K3"), nullptr, options).opt == 0);
    }

    TEST_CASE("oracle agrees with subset brute force and is deterministic")
    {
        std::mt19937_64 rng(101);
        for (int round = 0 ; round < 60 ; ++round) {
            auto g = random_graph(8, 0.5, rng);
            auto h = parse_pattern(round % 3 == 0 ? "P3" : round % 3 == 1 ? "C4" : "K3+I1");
            Coloring c = random_coloring(8, h.size(), rng);
            const Coloring * coloring = round % 2 ? &c : nullptr;
            auto a = oracle_solve(g, h, coloring);
            auto b = oracle_solve(g, h, coloring);
            CHECK(a.opt == brute_force_deletion(g, h, coloring));
            CHECK(a.witness == b.witness);
            CHECK(a.packing_bound <= a.opt);
        }
    }

    TEST_CASE("packing bound counts disjoint occurrences")
    {
        CHECK(disjoint_packing({{0, 1}, {1, 2}, {3, 4}}) == 2);
        CHECK(disjoint_packing({}) == 0);
    }
}
