#include "support.hh"

#include <hisd/errors.hh>
#include <hisd/io.hh>

#include <doctest.h>

#include <sstream>

using namespace hisd;
using namespace hisd::testing;

namespace
{
    auto gr(const std::string & text) -> Graph
    {
        std::istringstream in{text};
        return read_gr(in);
    }

    auto td(const std::string & text) -> TreeDecomposition
    {
        std::istringstream in{text};
        return read_td(in);
    }

    auto cnf(const std::string & text) -> CleanFormula
    {
        std::istringstream in{text};
        return read_dimacs(in);
    }
}

TEST_SUITE("io")
{
    TEST_CASE("graph files")
    {
        auto g = gr("c a path\np tw 3 2\n1 2\n\n2 3\n");
        CHECK(g == path(3));

        std::ostringstream out;
        write_gr(out, g);
        CHECK(out.str() == "p tw 3 2\n1 2\n2 3\n");
        CHECK(gr(out.str()) == g);

        CHECK_THROWS_AS(gr(""), ParseError);
        CHECK_THROWS_AS(gr("p td 3 2\n1 2\n2 3\n"), ParseError);
        CHECK_THROWS_AS(gr("p tw 3 1\n1 4\n"), ParseError);
        CHECK_THROWS_AS(gr("p tw 3 1\n2 2\n"), ParseError);
        CHECK_THROWS_AS(gr("p tw 3 2\n1 2\n2 1\n"), ParseError);
        CHECK_THROWS_AS(gr("p tw 3 2\n1 2\n"), ParseError);
        CHECK_THROWS_AS(gr("p tw 3 1\n1 x\n"), ParseError);
    }

    TEST_CASE("parse errors carry the line number")
    {
        try {
            gr("p tw 3 2\n1 2\n1 9\n");
            FAIL("no error");
        }
        catch (const ParseError & e) {
            CHECK(std::string{e.what()}.find("line 3") != std::string::npos);
        }
    }

    TEST_CASE("decomposition files")
    {
        auto d = td("s td 2 2 3\nb 1 2 1\nb 2 2 3\n1 2\n");
        REQUIRE(d.node_count() == 2);
        CHECK(d.bags[0] == std::vector<int>{0, 1});
        CHECK(d.tree_edges.size() == 1);
        CHECK(validate(path(3), d).valid());

        std::ostringstream out;
        write_td(out, d, 3);
        auto again = td(out.str());
        CHECK(again.bags == d.bags);
        CHECK(again.tree_edges == d.tree_edges);

        CHECK_THROWS_AS(td("s td 2 2 3\nb 1 1 2\n"), ParseError);
        CHECK_THROWS_AS(td("s td 1 2 3\nb 1 1 1\n"), ParseError);
        CHECK_THROWS_AS(td("s td 1 2 3\nb 2 1\n"), ParseError);
        CHECK_THROWS_AS(td("s td 2 2 3\nb 1 1\nb 2 2\n1 3\n"), ParseError);
    }

    TEST_CASE("colouring files")
    {
        std::istringstream in{"1 0\n3 2\n2 1\n"};
        CHECK(read_coloring(in, 3) == Coloring{0, 1, 2});

        std::istringstream missing{"1 0\n"};
        CHECK_THROWS_AS(read_coloring(missing, 2), ParseError);
        std::istringstream twice{"1 0\n1 1\n"};
        CHECK_THROWS_AS(read_coloring(twice, 1), ParseError);

        std::ostringstream out;
        write_coloring(out, Coloring{2, 0});
        CHECK(out.str() == "1 2\n2 0\n");
    }

    TEST_CASE("DIMACS files")
    {
        auto f = cnf("c example\np cnf 2 3\n1 2 0\n-1 -2 0 1\n-2 0\n%\n0\n");
        CHECK(f.variable_count == 2);
        CHECK(f.clauses == std::vector<std::vector<int>>{{1, 2}, {-1, -2}, {1, -2}});

        std::ostringstream out;
        write_dimacs(out, f);
        CHECK(cnf(out.str()) == f);

        CHECK_THROWS_AS(cnf("p cnf 2 1\n1 2\n"), ParseError);
        CHECK_THROWS_AS(cnf("p cnf 2 2\n1 2 0\n"), ParseError);
        CHECK_THROWS_AS(cnf("p cnf 2 1\n1 3 0\n"), ParseError);
        CHECK_THROWS_AS(cnf("p dnf 2 1\n1 2 0\n"), ParseError);
    }

    TEST_CASE("missing files")
    {
        CHECK_THROWS_AS(read_gr_file("/nonexistent/graph.gr"), ParseError);
    }
}
