#include "folio_truth.hh"
#include "support.hh"

#include <hisd/errors.hh>
#include <hisd/folio.hh>
#include <hisd/oracle.hh>

#include <doctest.h>

#include <random>

using namespace hisd;
using namespace hisd::testing;

namespace
{
    auto contains_triple(const std::vector<DPState> & states, const RootedTriple & t) -> bool
    {
        for (auto & s : states)
            if (std::binary_search(s.folio.triples.begin(), s.folio.triples.end(), t))
                return true;
        return false;
    }

    auto triple(LabelSet domain, LabelSet rooted, std::vector<std::pair<int, int>> rho) -> RootedTriple
    {
        RootedTriple t;
        t.domain = domain;
        t.rooted = rooted;
        for (auto [label, v] : rho)
            t.rho[label] = v;
        return t;
    }
}

TEST_SUITE("folio")
{
    TEST_CASE("solve on small fixed instances")
    {
        auto kme = parse_pattern("K4-e");
        auto g = kme.as_graph();
        auto r = solve_folio(g, nice_of(g), kme);
        CHECK(r.opt == 1);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->size() == 1);

        auto p3 = path(3);
        CHECK(solve_folio(p3, nice_of(p3), parse_pattern("K3")).opt == 0);

        auto c5 = cycle(5);
        Coloring sigma{0, 1, 2, 3, 0};
        CHECK(solve_folio(c5, nice_of(c5), parse_pattern("C4"), &sigma).opt == 0);
    }

    TEST_CASE("solve matches the oracle on random graphs")
    {
        std::mt19937_64 rng(21);
        for (int round = 0 ; round < 40 ; ++round) {
            auto g = random_graph(10, 0.3 + 0.1 * (round % 4), rng);
            auto h = parse_pattern(round % 2 ? "P3" : "K1,3");
            CHECK(solve_folio(g, nice_of(g), h).opt == oracle_solve(g, h).opt);
        }
    }

    TEST_CASE("root extraction")
    {
        std::vector<DPState> one(1);
        one[0].opt = 3;
        CHECK(root_extract(one) == 3);

        std::vector<DPState> two(2);
        two[0].opt = 4;
        two[1].opt = 2;
        two[1].folio.triples.push_back(triple(1, 0, {}));
        CHECK(root_extract(two) == 2);

        CHECK_THROWS(root_extract({}));

        auto k3 = complete(3);
        SolveOptions keep;
        keep.keep_tables = true;
        auto ntd = nice_of(k3);
        auto r = solve_folio(k3, ntd, parse_pattern("K3"), nullptr, keep);
        CHECK(root_extract(r.tables[ntd.root]) == 1);
    }

    TEST_CASE("introduce on an empty bag yields take and skip")
    {
        Graph g(1);
        auto k3 = parse_pattern("K3");
        DPContext ctx{&g, &k3, nullptr, 1};
        auto table = introduce_transition(ctx, leaf_table(), {}, 0);
        REQUIRE(table.size() == 2);
        auto & take = table[0].hat ? table[0] : table[1];
        auto & skip = table[0].hat ? table[1] : table[0];
        CHECK(take.opt == 1);
        CHECK(take.folio.local.empty());
        CHECK(skip.opt == 0);
        CHECK(skip.folio.local == std::vector<LabelSet>{1, 2, 4});
    }

    TEST_CASE("an unrooted K3 label blocks every extension")
    {
        Graph g(2);
        auto k3 = parse_pattern("K3");
        DPContext ctx{&g, &k3, nullptr, 1};
        DPState child;
        child.folio.triples.push_back(triple(1, 0, {}));
        auto table = introduce_transition(ctx, {child}, {}, 1);
        for (auto & s : table)
            CHECK(s.folio.triples == std::vector<RootedTriple>{triple(1, 0, {})});
    }

    TEST_CASE("forgetting one end of an edge roots the other")
    {
        auto g = complete(2);
        auto k3 = parse_pattern("K3");
        DPContext ctx{&g, &k3, nullptr, 1};
        auto a = introduce_transition(ctx, leaf_table(), {}, 0);
        auto b = introduce_transition(ctx, a, {0}, 1);
        std::vector<DPState> untouched;
        for (auto & s : b)
            if (s.hat == 0)
                untouched.push_back(s);
        REQUIRE(untouched.size() == 1);
        auto forgotten = forget_transition(ctx, untouched, {0, 1}, 1);
        REQUIRE(forgotten.size() == 1);
        CHECK(contains_triple(forgotten, triple(3, 1, {{0, 0}})));
        CHECK(contains_triple(forgotten, triple(3, 2, {{1, 0}})));

        auto gone = forget_transition(ctx, forgotten, {0}, 0);
        CHECK(contains_triple(gone, triple(3, 0, {})));
    }

    TEST_CASE("forgetting a deleted vertex keeps the folio")
    {
        auto g = complete(2);
        auto k3 = parse_pattern("K3");
        DPContext ctx{&g, &k3, nullptr, 1};
        DPState s;
        s.hat = 0b10;
        s.opt = 4;
        s.folio.local = {1};
        auto out = forget_transition(ctx, {s}, {0, 1}, 1);
        REQUIRE(out.size() == 1);
        CHECK(out[0].hat == 0);
        CHECK(out[0].opt == 4);
        CHECK(out[0].folio == s.folio);
    }

    TEST_CASE("join adds optima and discards completed patterns")
    {
        Graph g(3);
        auto k3 = parse_pattern("K3");
        DPContext ctx{&g, &k3, nullptr, 1};
        DPState left, right;
        left.opt = 2;
        right.opt = 3;
        auto out = join_transition(ctx, {left}, {right}, {});
        REQUIRE(out.size() == 1);
        CHECK(out[0].opt == 5);

        // P3 labelled 0-1-2: two halves rooted at the middle label complete it.
        Graph k1(1);
        auto p3 = parse_pattern("P3");
        DPContext path_ctx{&k1, &p3, nullptr, 1};
        DPState l, r;
        l.folio.local = r.folio.local = {1, 2, 4};
        l.folio.triples = {triple(3, 2, {{1, 0}})};
        r.folio.triples = {triple(6, 2, {{1, 0}})};
        CHECK(join_transition(path_ctx, {l}, {r}, {0}).empty());

        // The unrooted K3 labels would sit on opposite sides of the bag and could
        // never be adjacent, so these halves do not combine.
        DPContext k3_ctx{&k1, &k3, nullptr, 1};
        l.folio.triples = {triple(3, 1, {{0, 0}})};
        r.folio.triples = {triple(5, 1, {{0, 0}})};
        CHECK(join_transition(k3_ctx, {l}, {r}, {0}).size() == 1);
    }

    TEST_CASE("every node table matches the folio definition")
    {
        std::mt19937_64 rng(31);
        for (int round = 0 ; round < 12 ; ++round) {
            auto g = random_graph(6, 0.5, rng);
            auto h = parse_pattern(round % 3 == 0 ? "P3" : round % 3 == 1 ? "K3" : "I3");
            auto ntd = nice_of(g);
            CHECK(check_all_nodes(g, h, nullptr, ntd).node == -1);
        }
        auto p4 = path(4);
        CHECK(check_all_nodes(p4, parse_pattern("P3"), nullptr, nice_of(p4)).node == -1);
    }

    TEST_CASE("colourful optimum never exceeds the uncoloured optimum")
    {
        std::mt19937_64 rng(41);
        for (int round = 0 ; round < 30 ; ++round) {
            auto g = random_graph(9, 0.4, rng);
            auto h = parse_pattern("P3");
            auto c = random_coloring(9, 3, rng);
            auto ntd = nice_of(g);
            CHECK(solve_folio(g, ntd, h, &c).opt <= solve_folio(g, ntd, h).opt);
        }
    }

    TEST_CASE("threaded tables equal the serial reference")
    {
        std::mt19937_64 rng(51);
        for (int round = 0 ; round < 10 ; ++round) {
            auto g = random_graph(11, 0.35, rng);
            auto h = parse_pattern("C4");
            auto ntd = nice_of(g);
            SolveOptions serial, parallel;
            serial.keep_tables = parallel.keep_tables = true;
            parallel.threads = 4;
            auto a = solve_folio(g, ntd, h, nullptr, serial);
            auto b = solve_folio(g, ntd, h, nullptr, parallel);
            CHECK(a.opt == b.opt);
            CHECK(a.witness == b.witness);
            REQUIRE(a.tables.size() == b.tables.size());
            for (std::size_t x = 0 ; x < a.tables.size() ; ++x) {
                REQUIRE(a.tables[x].size() == b.tables[x].size());
                for (std::size_t i = 0 ; i < a.tables[x].size() ; ++i) {
                    CHECK(a.tables[x][i].hat == b.tables[x][i].hat);
                    CHECK(a.tables[x][i].folio == b.tables[x][i].folio);
                    CHECK(a.tables[x][i].opt == b.tables[x][i].opt);
                    CHECK(a.tables[x][i].from == b.tables[x][i].from);
                }
            }
        }
    }

    TEST_CASE("solve checks its inputs")
    {
        auto g = path(3);
        NiceTreeDecomposition empty;
        CHECK_THROWS_AS(solve_folio(g, empty, parse_pattern("P3")), InvalidDecomposition);
        Coloring wrong{0, 5, 1};
        CHECK_THROWS_AS(solve_folio(g, nice_of(g), parse_pattern("P3"), &wrong), InvalidArgument);
    }
}
