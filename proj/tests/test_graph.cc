#include "support.hh"

#include <hisd/errors.hh>
#include <hisd/graph.hh>

#include <doctest.h>

#include <random>

using namespace hisd;
using namespace hisd::testing;

TEST_SUITE("graph")
{
    TEST_CASE("graph rejects self-loops and reports duplicates")
    {
        Graph g(3);
        CHECK(g.add_edge(0, 1));
        CHECK_FALSE(g.add_edge(1, 0));
        CHECK_THROWS_AS(g.add_edge(2, 2), InvalidArgument);
        CHECK_THROWS_AS(g.add_edge(0, 3), InvalidArgument);
        CHECK(g.edge_count() == 1);
        CHECK(g.adjacent(0, 1));
        CHECK(g.adjacent(1, 0));
        CHECK(g.remove_edge(0, 1));
        CHECK_FALSE(g.adjacent(1, 0));
    }

    TEST_CASE("induced subgraph relabels in the given order")
    {
        auto g = path(4);
        std::vector<int> keep{3, 2, 0};
        auto sub = g.induced(keep);
        CHECK(sub.vertex_count() == 3);
        CHECK(sub.edge_count() == 1);
        CHECK(sub.adjacent(0, 1));
        CHECK_FALSE(sub.adjacent(1, 2));
    }

    TEST_CASE("named patterns")
    {
        std::vector<int> three{3}, four{4}, kvx{3, 1};
        auto k3 = named_pattern("K", three);
        CHECK(k3.size() == 3);
        CHECK(k3.edge_count() == 3);

        auto kme = named_pattern("K-e", four);
        CHECK(kme.edge_count() == 5);
        CHECK_FALSE(kme.adjacent(2, 3));

        auto v = named_pattern("Kvx", kvx);
        CHECK(v.size() == 5);
        CHECK(v.edge_count() == 7);
        CHECK(v.neighbours(4) == 1u);

        std::vector<int> bad{3, 3};
        CHECK_THROWS_AS(named_pattern("Kvx", bad), InvalidArgument);
        CHECK_THROWS(named_pattern("Q", three));
    }

    TEST_CASE("pattern strings")
    {
        CHECK(parse_pattern("K3+I1").size() == 4);
        CHECK(parse_pattern("K3+I1").edge_count() == 3);
        CHECK(parse_pattern("K1,3").edge_count() == 3);
        auto biclique = parse_pattern("K2,2").as_graph();
        auto c4 = parse_pattern("C4");
        CHECK(biclique.edge_count() == 4);
        CHECK(enumerate_induced_embeddings(biclique, c4, c4.all_labels(), all_vertices(biclique)).size() == 8);
        CHECK(parse_pattern("P4").edge_count() == 3);
        CHECK_THROWS_AS(parse_pattern("K9"), CapExceeded);
        CHECK_THROWS_AS(parse_pattern("banana"), ParseError);
    }

    TEST_CASE("embedding enumeration")
    {
        auto k3 = parse_pattern("K3");
        auto g = complete(3);
        auto all = all_vertices(g);
        CHECK(enumerate_induced_embeddings(g, k3, k3.all_labels(), all).size() == 6);

        auto p3 = path(3);
        CHECK(enumerate_induced_embeddings(p3, k3, k3.all_labels(), all_vertices(p3)).empty());

        auto c5 = cycle(5);
        auto c4 = parse_pattern("C4");
        CHECK(enumerate_induced_embeddings(c5, c4, c4.all_labels(), all_vertices(c5)).empty());
    }

    TEST_CASE("embeddings are sorted and respect the scope")
    {
        auto g = complete(4);
        auto k2 = parse_pattern("K2");
        std::vector<int> scope{1, 3};
        auto found = enumerate_induced_embeddings(g, k2, k2.all_labels(), scope);
        REQUIRE(found.size() == 2);
        CHECK(found[0].image[0] == 1);
        CHECK(found[1].image[0] == 3);
        CHECK(std::is_sorted(found.begin(), found.end()));
    }

    TEST_CASE("pattern freeness")
    {
        CHECK_FALSE(is_pattern_free(complete(4), parse_pattern("K3")));
        CHECK(is_pattern_free(complete(4), parse_pattern("I2")));
        CHECK_FALSE(is_pattern_free(star(3), parse_pattern("K1,3")));
    }

    TEST_CASE("complement duality of embeddings")
    {
        std::mt19937_64 rng(7);
        for (int round = 0 ; round < 30 ; ++round) {
            auto g = random_graph(7, 0.5, rng);
            for (auto name : {"P3", "K3", "C4", "K1,3"}) {
                auto h = parse_pattern(name);
                auto a = enumerate_induced_embeddings(g, h, h.all_labels(), all_vertices(g));
                auto gc = g.complement();
                auto b = enumerate_induced_embeddings(gc, h.complement(), h.all_labels(), all_vertices(gc));
                CHECK(a == b);
            }
        }
    }

    TEST_CASE("colour filtering only removes embeddings")
    {
        std::mt19937_64 rng(11);
        for (int round = 0 ; round < 30 ; ++round) {
            auto g = random_graph(8, 0.4, rng);
            auto h = parse_pattern("P3");
            auto c = random_coloring(8, 3, rng);
            auto plain = enumerate_induced_embeddings(g, h, h.all_labels(), all_vertices(g));
            auto coloured = enumerate_induced_embeddings(g, h, h.all_labels(), all_vertices(g), &c);
            for (auto & e : coloured) {
                CHECK(std::binary_search(plain.begin(), plain.end(), e));
                for (int label = 0 ; label < 3 ; ++label)
                    CHECK(c[e.image[label]] == label);
            }
        }
    }

    TEST_CASE("colourings are checked")
    {
        auto g = path(3);
        auto h = parse_pattern("P3");
        Coloring short_one{0, 1};
        CHECK_THROWS_AS(check_coloring(g, h, short_one), InvalidArgument);
        Coloring out_of_range{0, 1, 3};
        CHECK_THROWS_AS(check_coloring(g, h, out_of_range), InvalidArgument);
        Coloring fine{0, 1, 2};
        CHECK_NOTHROW(check_coloring(g, h, fine));
    }
}
