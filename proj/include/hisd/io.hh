#pragma once

#include <hisd/decomposition.hh>
#include <hisd/graph.hh>
#include <hisd/reductions.hh>

#include <iosfwd>
#include <string>

namespace hisd
{
    // PACE-2017 graph format: "p tw n m" header, one "u v" line per edge with
    // 1-indexed endpoints, "c" lines are comments.
    auto read_gr(std::istream & in) -> Graph;
    auto write_gr(std::ostream & out, const Graph & g) -> void;

    // PACE-2017 decomposition format: "s td bags width+1 n", then "b i v1 v2 ..."
    // bag lines and "i j" tree edges, all 1-indexed.
    auto read_td(std::istream & in) -> TreeDecomposition;
    auto write_td(std::ostream & out, const TreeDecomposition & td, int vertex_count) -> void;

    // Colouring file: one "vertexId labelIndex" line per vertex, vertex ids
    // 1-indexed as in .gr files, labels 0-indexed.
    auto read_coloring(std::istream & in, int vertex_count) -> Coloring;
    auto write_coloring(std::ostream & out, const Coloring & coloring) -> void;

    // DIMACS CNF.
    auto read_dimacs(std::istream & in) -> CleanFormula;
    auto write_dimacs(std::ostream & out, const CleanFormula & formula) -> void;

    auto read_gr_file(const std::string & path) -> Graph;
    auto read_td_file(const std::string & path) -> TreeDecomposition;
    auto read_coloring_file(const std::string & path, int vertex_count) -> Coloring;
    auto read_dimacs_file(const std::string & path) -> CleanFormula;
}
