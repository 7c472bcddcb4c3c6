#include <hisd/errors.hh>
#include <hisd/io.hh>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

using std::string;
using std::to_string;
using std::vector;

namespace hisd
{
    namespace
    {
        struct LineReader
        {
            std::istream & in;
            int number = 0;

            // Next non-empty line that is not a comment; false at end of input.
            auto next(std::istringstream & line) -> bool
            {
                string text;
                while (std::getline(in, text)) {
                    ++number;
                    auto first = text.find_first_not_of(" \t\r");
                    if (first == string::npos || text[first] == 'c')
                        continue;
                    line.clear();
                    line.str(text);
                    return true;
                }
                return false;
            }

            [[noreturn]] auto fail(const string & what) const -> void
            {
                throw ParseError{"line " + to_string(number) + ": " + what};
            }
        };

        auto read_int(std::istringstream & line, LineReader & reader, const string & what) -> long
        {
            string token;
            if (! (line >> token))
                reader.fail("missing " + what);
            char * end = nullptr;
            long value = std::strtol(token.c_str(), &end, 10);
            if (token.empty() || *end != '\0')
                reader.fail("expected an integer for " + what + ", got '" + token + "'");
            return value;
        }

        auto expect_end(std::istringstream & line, LineReader & reader) -> void
        {
            string rest;
            if (line >> rest)
                reader.fail("unexpected trailing token '" + rest + "'");
        }

        auto open(const string & path) -> std::ifstream
        {
            std::ifstream in{path};
            if (! in)
                throw ParseError{"cannot open " + path};
            return in;
        }
    }

    auto read_gr(std::istream & in) -> Graph
    {
        LineReader reader{in};
        std::istringstream line;
        if (! reader.next(line))
            throw ParseError{"empty graph file"};
        string p, tw;
        line >> p >> tw;
        if (p != "p" || tw != "tw")
            reader.fail("expected 'p tw n m' header");
        long n = read_int(line, reader, "vertex count");
        long m = read_int(line, reader, "edge count");
        expect_end(line, reader);
        if (n < 0 || m < 0)
            reader.fail("negative counts in header");

        Graph g(static_cast<int>(n));
        long seen = 0;
        while (reader.next(line)) {
            long u = read_int(line, reader, "edge endpoint");
            long v = read_int(line, reader, "edge endpoint");
            expect_end(line, reader);
            if (u < 1 || u > n || v < 1 || v > n)
                reader.fail("edge endpoint out of range 1.." + to_string(n));
            if (u == v)
                reader.fail("self-loop on vertex " + to_string(u));
            if (! g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1)))
                reader.fail("duplicate edge " + to_string(u) + " " + to_string(v));
            ++seen;
        }
        if (seen != m)
            throw ParseError{"header declares " + to_string(m) + " edges, found " + to_string(seen)};
        return g;
    }

    auto write_gr(std::ostream & out, const Graph & g) -> void
    {
        out << "p tw " << g.vertex_count() << " " << g.edge_count() << "\n";
        for (auto & [u, v] : g.edges())
            out << u + 1 << " " << v + 1 << "\n";
    }

    auto read_td(std::istream & in) -> TreeDecomposition
    {
        LineReader reader{in};
        std::istringstream line;
        if (! reader.next(line))
            throw ParseError{"empty decomposition file"};
        string s, td_tag;
        line >> s >> td_tag;
        if (s != "s" || td_tag != "td")
            reader.fail("expected 's td bags width+1 n' header");
        long bag_count = read_int(line, reader, "bag count");
        read_int(line, reader, "width + 1");
        read_int(line, reader, "vertex count");
        expect_end(line, reader);
        if (bag_count < 0)
            reader.fail("negative bag count");

        TreeDecomposition td;
        td.bags.resize(bag_count);
        vector<char> defined(bag_count, 0);
        while (reader.next(line)) {
            string first;
            line >> first;
            if (first == "b") {
                long id = read_int(line, reader, "bag id");
                if (id < 1 || id > bag_count)
                    reader.fail("bag id out of range 1.." + to_string(bag_count));
                if (defined[id - 1])
                    reader.fail("bag " + to_string(id) + " defined twice");
                defined[id - 1] = 1;
                string token;
                while (line >> token) {
                    char * end = nullptr;
                    long v = std::strtol(token.c_str(), &end, 10);
                    if (*end != '\0' || v < 1)
                        reader.fail("bad vertex '" + token + "' in bag " + to_string(id));
                    td.bags[id - 1].push_back(static_cast<int>(v - 1));
                }
                auto & bag = td.bags[id - 1];
                std::sort(bag.begin(), bag.end());
                if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
                    reader.fail("bag " + to_string(id) + " repeats a vertex");
            }
            else {
                line.clear();
                line.seekg(0);
                long a = read_int(line, reader, "tree edge endpoint");
                long b = read_int(line, reader, "tree edge endpoint");
                expect_end(line, reader);
                if (a < 1 || a > bag_count || b < 1 || b > bag_count)
                    reader.fail("tree edge endpoint out of range 1.." + to_string(bag_count));
                td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
            }
        }
        for (long i = 0 ; i < bag_count ; ++i)
            if (! defined[i])
                throw ParseError{"bag " + to_string(i + 1) + " is never defined"};
        return td;
    }

    auto write_td(std::ostream & out, const TreeDecomposition & td, int vertex_count) -> void
    {
        out << "s td " << td.node_count() << " " << td.width() + 1 << " " << vertex_count << "\n";
        for (int i = 0 ; i < td.node_count() ; ++i) {
            out << "b " << i + 1;
            for (int v : td.bags[i])
                out << " " << v + 1;
            out << "\n";
        }
        for (auto & [a, b] : td.tree_edges)
            out << a + 1 << " " << b + 1 << "\n";
    }

    auto read_coloring(std::istream & in, int vertex_count) -> Coloring
    {
        LineReader reader{in};
        std::istringstream line;
        Coloring coloring(vertex_count, -1);
        while (reader.next(line)) {
            long v = read_int(line, reader, "vertex id");
            long label = read_int(line, reader, "label index");
            expect_end(line, reader);
            if (v < 1 || v > vertex_count)
                reader.fail("vertex id out of range 1.." + to_string(vertex_count));
            if (label < 0)
                reader.fail("negative label");
            if (coloring[v - 1] != -1)
                reader.fail("vertex " + to_string(v) + " coloured twice");
            coloring[v - 1] = static_cast<int>(label);
        }
        for (int v = 0 ; v < vertex_count ; ++v)
            if (coloring[v] == -1)
                throw ParseError{"vertex " + to_string(v + 1) + " has no colour"};
        return coloring;
    }

    auto write_coloring(std::ostream & out, const Coloring & coloring) -> void
    {
        for (std::size_t v = 0 ; v < coloring.size() ; ++v)
            out << v + 1 << " " << coloring[v] << "\n";
    }

    auto read_dimacs(std::istream & in) -> CleanFormula
    {
        LineReader reader{in};
        std::istringstream line;
        if (! reader.next(line))
            throw ParseError{"empty DIMACS file"};
        string p, cnf;
        line >> p >> cnf;
        if (p != "p" || cnf != "cnf")
            reader.fail("expected 'p cnf n m' header");
        long n = read_int(line, reader, "variable count");
        long m = read_int(line, reader, "clause count");
        expect_end(line, reader);
        if (n < 0 || m < 0)
            reader.fail("negative counts in header");

        CleanFormula f;
        f.variable_count = static_cast<int>(n);
        vector<int> clause;
        while (reader.next(line)) {
            string token;
            while (line >> token) {
                if (token == "%")
                    break;
                char * end = nullptr;
                long literal = std::strtol(token.c_str(), &end, 10);
                if (*end != '\0')
                    reader.fail("bad literal '" + token + "'");
                if (literal == 0) {
                    f.clauses.push_back(clause);
                    clause.clear();
                }
                else if (std::labs(literal) > n)
                    reader.fail("literal " + token + " out of range");
                else
                    clause.push_back(static_cast<int>(literal));
            }
            if (token == "%")
                break;
        }
        if (! clause.empty())
            throw ParseError{"last clause is not terminated by 0"};
        if (f.clause_count() != m)
            throw ParseError{"header declares " + to_string(m) + " clauses, found " + to_string(f.clause_count())};
        return f;
    }

    auto write_dimacs(std::ostream & out, const CleanFormula & formula) -> void
    {
        out << "p cnf " << formula.variable_count << " " << formula.clause_count() << "\n";
        for (auto & clause : formula.clauses) {
            for (int literal : clause)
                out << literal << " ";
            out << "0\n";
        }
    }

    auto read_gr_file(const string & path) -> Graph
    {
        auto in = open(path);
        return read_gr(in);
    }

    auto read_td_file(const string & path) -> TreeDecomposition
    {
        auto in = open(path);
        return read_td(in);
    }

    auto read_coloring_file(const string & path, int vertex_count) -> Coloring
    {
        auto in = open(path);
        return read_coloring(in, vertex_count);
    }

    auto read_dimacs_file(const string & path) -> CleanFormula
    {
        auto in = open(path);
        return read_dimacs(in);
    }
}
