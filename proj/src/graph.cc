#include <hisd/graph.hh>
#include <hisd/errors.hh>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <optional>

using std::pair;
using std::span;
using std::string;
using std::string_view;
using std::vector;

namespace hisd
{
    Graph::Graph(int vertex_count) :
        _size(vertex_count),
        _rows(vertex_count, vector<std::uint64_t>((vertex_count + 63) / 64, 0)),
        _neighbours(vertex_count)
    {
        if (vertex_count < 0)
            throw InvalidArgument{"negative vertex count"};
    }

    auto Graph::from_edges(int vertex_count, span<const pair<int, int>> edges) -> Graph
    {
        Graph result{vertex_count};
        for (auto & [u, v] : edges)
            result.add_edge(u, v);
        return result;
    }

    auto Graph::add_vertex() -> int
    {
        _rows.emplace_back((_size + 64) / 64, 0);
        _neighbours.emplace_back();
        return _size++;
    }

    auto Graph::add_edge(int u, int v) -> bool
    {
        if (u < 0 || v < 0 || u >= _size || v >= _size)
            throw InvalidArgument{"edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v)};
        if (u == v)
            throw InvalidArgument{"self-loop on vertex " + std::to_string(u)};
        if (adjacent(u, v))
            return false;

        auto set_bit = [&] (int a, int b) {
            auto & row = _rows[a];
            auto word = static_cast<std::size_t>(b) >> 6;
            if (row.size() <= word)
                row.resize(word + 1, 0);
            row[word] |= std::uint64_t{1} << (b & 63);
            auto & n = _neighbours[a];
            n.insert(std::lower_bound(n.begin(), n.end(), b), b);
        };
        set_bit(u, v);
        set_bit(v, u);
        ++_edge_count;
        return true;
    }

    auto Graph::remove_edge(int u, int v) -> bool
    {
        if (u < 0 || v < 0 || u >= _size || v >= _size || ! adjacent(u, v))
            return false;

        auto clear_bit = [&] (int a, int b) {
            _rows[a][static_cast<std::size_t>(b) >> 6] &= ~(std::uint64_t{1} << (b & 63));
            auto & n = _neighbours[a];
            n.erase(std::lower_bound(n.begin(), n.end(), b));
        };
        clear_bit(u, v);
        clear_bit(v, u);
        --_edge_count;
        return true;
    }

    auto Graph::max_degree() const -> int
    {
        int result = 0;
        for (auto & n : _neighbours)
            result = std::max(result, static_cast<int>(n.size()));
        return result;
    }

    auto Graph::edges() const -> vector<pair<int, int>>
    {
        vector<pair<int, int>> result;
        result.reserve(_edge_count);
        for (int u = 0 ; u < _size ; ++u)
            for (int v : _neighbours[u])
                if (u < v)
                    result.emplace_back(u, v);
        return result;
    }

    auto Graph::induced(span<const int> vertices) const -> Graph
    {
        Graph result{static_cast<int>(vertices.size())};
        for (std::size_t i = 0 ; i < vertices.size() ; ++i)
            for (std::size_t j = i + 1 ; j < vertices.size() ; ++j)
                if (adjacent(vertices[i], vertices[j]))
                    result.add_edge(static_cast<int>(i), static_cast<int>(j));
        return result;
    }

    auto Graph::complement() const -> Graph
    {
        Graph result{_size};
        for (int u = 0 ; u < _size ; ++u)
            for (int v = u + 1 ; v < _size ; ++v)
                if (! adjacent(u, v))
                    result.add_edge(u, v);
        return result;
    }

    auto Graph::without(span<const int> removed) const -> Graph
    {
        vector<char> gone(_size, 0);
        for (int v : removed)
            gone.at(v) = 1;
        Graph result{_size};
        for (auto & [u, v] : edges())
            if (! gone[u] && ! gone[v])
                result.add_edge(u, v);
        return result;
    }

    auto Graph::operator== (const Graph & other) const -> bool
    {
        return _size == other._size && _neighbours == other._neighbours;
    }

    Pattern::Pattern(int size) :
        _size(size)
    {
        if (size < 1)
            throw InvalidArgument{"pattern must have at least one vertex"};
        if (size > max_pattern_size)
            throw CapExceeded{"pattern has " + std::to_string(size) + " vertices, cap is " + std::to_string(max_pattern_size)};
    }

    auto Pattern::add_edge(int a, int b) -> void
    {
        if (a < 0 || b < 0 || a >= _size || b >= _size || a == b)
            throw InvalidArgument{"bad pattern edge " + std::to_string(a) + " " + std::to_string(b)};
        _adjacency[a] |= LabelSet{1} << b;
        _adjacency[b] |= LabelSet{1} << a;
    }

    auto Pattern::edge_count() const -> int
    {
        int twice = 0;
        for (int a = 0 ; a < _size ; ++a)
            twice += label_count(_adjacency[a]);
        return twice / 2;
    }

    auto Pattern::complement() const -> Pattern
    {
        Pattern result{_size};
        for (int a = 0 ; a < _size ; ++a)
            result._adjacency[a] = all_labels() & ~_adjacency[a] & ~(LabelSet{1} << a);
        return result;
    }

    auto Pattern::is_clique() const -> bool
    {
        return edge_count() == _size * (_size - 1) / 2;
    }

    auto Pattern::is_independent() const -> bool
    {
        return edge_count() == 0;
    }

    auto Pattern::components() const -> vector<LabelSet>
    {
        vector<LabelSet> result;
        LabelSet seen = 0;
        for (int a = 0 ; a < _size ; ++a) {
            if (has_label(seen, a))
                continue;
            LabelSet comp = LabelSet{1} << a, frontier = comp;
            while (frontier) {
                LabelSet next = 0;
                for (int b = 0 ; b < _size ; ++b)
                    if (has_label(frontier, b))
                        next |= _adjacency[b];
                frontier = next & ~comp;
                comp |= next;
            }
            seen |= comp;
            result.push_back(comp);
        }
        return result;
    }

    auto Pattern::restricted(LabelSet labels) const -> Pattern
    {
        vector<int> kept;
        for (int a = 0 ; a < _size ; ++a)
            if (has_label(labels, a))
                kept.push_back(a);
        Pattern result{static_cast<int>(kept.size())};
        for (std::size_t i = 0 ; i < kept.size() ; ++i)
            for (std::size_t j = i + 1 ; j < kept.size() ; ++j)
                if (adjacent(kept[i], kept[j]))
                    result.add_edge(static_cast<int>(i), static_cast<int>(j));
        return result;
    }

    auto Pattern::as_graph() const -> Graph
    {
        Graph result{_size};
        for (int a = 0 ; a < _size ; ++a)
            for (int b = a + 1 ; b < _size ; ++b)
                if (adjacent(a, b))
                    result.add_edge(a, b);
        return result;
    }

    auto Pattern::from_graph(const Graph & g) -> Pattern
    {
        Pattern result{g.vertex_count()};
        for (auto & [u, v] : g.edges())
            result.add_edge(u, v);
        return result;
    }

    auto Pattern::disjoint_union(const Pattern & other) const -> Pattern
    {
        Pattern result{_size + other._size};
        for (int a = 0 ; a < _size ; ++a)
            result._adjacency[a] = _adjacency[a];
        for (int a = 0 ; a < other._size ; ++a)
            result._adjacency[a + _size] = other._adjacency[a] << _size;
        return result;
    }

    namespace
    {
        auto need_params(string_view name, span<const int> params, std::size_t count) -> void
        {
            if (params.size() != count)
                throw InvalidArgument{"pattern " + string{name} + " takes " + std::to_string(count) + " parameter(s)"};
        }

        auto clique(int h) -> Pattern
        {
            Pattern result{h};
            for (int a = 0 ; a < h ; ++a)
                for (int b = a + 1 ; b < h ; ++b)
                    result.add_edge(a, b);
            return result;
        }
    }

    auto named_pattern(string_view name, span<const int> params) -> Pattern
    {
        if (name == "K") {
            need_params(name, params, 1);
            return clique(params[0]);
        }
        else if (name == "I") {
            need_params(name, params, 1);
            return Pattern{params[0]};
        }
        else if (name == "P") {
            need_params(name, params, 1);
            Pattern result{params[0]};
            for (int a = 0 ; a + 1 < params[0] ; ++a)
                result.add_edge(a, a + 1);
            return result;
        }
        else if (name == "C") {
            need_params(name, params, 1);
            if (params[0] < 3)
                throw InvalidArgument{"cycles need at least 3 vertices"};
            Pattern result{params[0]};
            for (int a = 0 ; a < params[0] ; ++a)
                result.add_edge(a, (a + 1) % params[0]);
            return result;
        }
        else if (name == "K-e") {
            need_params(name, params, 1);
            if (params[0] < 2)
                throw InvalidArgument{"K-e needs at least 2 vertices"};
            Pattern without_edge{params[0]};
            for (int a = 0 ; a < params[0] ; ++a)
                for (int b = a + 1 ; b < params[0] ; ++b)
                    if (! (a == params[0] - 2 && b == params[0] - 1))
                        without_edge.add_edge(a, b);
            return without_edge;
        }
        else if (name == "Kab") {
            need_params(name, params, 2);
            if (params[0] < 1 || params[1] < 1)
                throw InvalidArgument{"complete bipartite parts must be non-empty"};
            Pattern result{params[0] + params[1]};
            for (int a = 0 ; a < params[0] ; ++a)
                for (int b = 0 ; b < params[1] ; ++b)
                    result.add_edge(a, params[0] + b);
            return result;
        }
        else if (name == "Kvx") {
            need_params(name, params, 2);
            int h = params[0], x = params[1];
            if (h < 1)
                throw InvalidArgument{"Kvx needs h >= 1"};
            if (x < 0 || x > h - 1)
                throw InvalidArgument{"Kvx needs 0 <= x <= h - 1"};
            Pattern result{h + 2};
            for (int a = 0 ; a <= h ; ++a)
                for (int b = a + 1 ; b <= h ; ++b)
                    result.add_edge(a, b);
            for (int a = 0 ; a < x ; ++a)
                result.add_edge(a, h + 1);
            return result;
        }
        throw InvalidArgument{"unknown pattern name '" + string{name} + "'"};
    }

    namespace
    {
        auto parse_int(string_view text, string_view whole) -> int
        {
            int value = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw ParseError{"bad number in pattern '" + string{whole} + "'"};
            return value;
        }

        auto parse_single(string_view text, string_view whole) -> Pattern
        {
            if (text.starts_with("Kvx:")) {
                auto rest = text.substr(4);
                auto colon = rest.find(':');
                if (colon == string_view::npos)
                    throw ParseError{"expected Kvx:h:x in '" + string{whole} + "'"};
                int params[2] = { parse_int(rest.substr(0, colon), whole), parse_int(rest.substr(colon + 1), whole) };
                return named_pattern("Kvx", params);
            }
            if (text.empty())
                throw ParseError{"empty pattern in '" + string{whole} + "'"};

            char kind = text[0];
            auto body = text.substr(1);
            if (kind == 'K' && body.ends_with("-e")) {
                int params[1] = { parse_int(body.substr(0, body.size() - 2), whole) };
                return named_pattern("K-e", params);
            }
            if (kind == 'K' && body.find(',') != string_view::npos) {
                auto comma = body.find(',');
                int params[2] = { parse_int(body.substr(0, comma), whole), parse_int(body.substr(comma + 1), whole) };
                return named_pattern("Kab", params);
            }
            if (kind == 'K' || kind == 'I' || kind == 'P' || kind == 'C') {
                int params[1] = { parse_int(body, whole) };
                return named_pattern(string_view{&kind, 1}, params);
            }
            throw ParseError{"unknown pattern '" + string{whole} + "'"};
        }
    }

    auto parse_pattern(string_view text) -> Pattern
    {
        std::optional<Pattern> result;
        string_view rest = text;
        while (true) {
            auto plus = rest.find('+');
            auto piece = parse_single(rest.substr(0, plus), text);
            result = result ? result->disjoint_union(piece) : piece;
            if (plus == string_view::npos)
                break;
            rest = rest.substr(plus + 1);
        }
        return *result;
    }

    auto check_coloring(const Graph & g, const Pattern & h, const Coloring & coloring) -> void
    {
        if (static_cast<int>(coloring.size()) != g.vertex_count())
            throw InvalidArgument{"coloring covers " + std::to_string(coloring.size()) + " vertices, graph has "
                + std::to_string(g.vertex_count())};
        for (std::size_t v = 0 ; v < coloring.size() ; ++v)
            if (coloring[v] < 0 || coloring[v] >= h.size())
                throw InvalidArgument{"vertex " + std::to_string(v) + " has invalid label " + std::to_string(coloring[v])};
    }

    namespace
    {
        struct EmbeddingSearch
        {
            const Graph & g;
            const Pattern & h;
            span<const int> scope;
            const Coloring * coloring;
            const EmbeddingVisitor & visit;

            vector<int> order;
            // anchor[i] = an earlier position in `order` that is adjacent in H, or -1
            vector<int> anchor;
            vector<char> in_scope;
            bool use_neighbour_candidates = false;
            Embedding current;

            auto fits(int label, int v, std::size_t depth) const -> bool
            {
                if (coloring && (*coloring)[v] != label)
                    return false;
                for (std::size_t i = 0 ; i < depth ; ++i) {
                    int other = current.image[order[i]];
                    if (other == v)
                        return false;
                    if (h.adjacent(label, order[i]) != g.adjacent(v, other))
                        return false;
                }
                return true;
            }

            auto search(std::size_t depth) -> bool
            {
                if (depth == order.size())
                    return visit(current);

                int label = order[depth];
                auto try_vertex = [&] (int v) -> bool {
                    if (! fits(label, v, depth))
                        return true;
                    current.image[label] = v;
                    bool keep_going = search(depth + 1);
                    current.image[label] = -1;
                    return keep_going;
                };

                if (use_neighbour_candidates && anchor[depth] >= 0) {
                    for (int v : g.neighbours(current.image[order[anchor[depth]]]))
                        if (in_scope[v] && ! try_vertex(v))
                            return false;
                }
                else {
                    for (int v : scope)
                        if (! try_vertex(v))
                            return false;
                }
                return true;
            }
        };
    }

    auto for_each_induced_embedding(const Graph & g, const Pattern & h, LabelSet domain,
            span<const int> scope, const Coloring * coloring, const EmbeddingVisitor & visit) -> bool
    {
        EmbeddingSearch s{g, h, scope, coloring, visit, {}, {}, {}, false, {}};
        s.current.domain = domain;

        for (int a = 0 ; a < h.size() ; ++a)
            if (has_label(domain, a))
                s.order.push_back(a);
        std::stable_sort(s.order.begin(), s.order.end(), [&] (int a, int b) {
                return label_count(h.neighbours(a) & domain) > label_count(h.neighbours(b) & domain);
                });

        if (static_cast<int>(s.order.size()) > static_cast<int>(scope.size()))
            return true;

        for (std::size_t i = 0 ; i < s.order.size() ; ++i) {
            int found = -1;
            for (std::size_t j = 0 ; j < i && found < 0 ; ++j)
                if (h.adjacent(s.order[i], s.order[j]))
                    found = static_cast<int>(j);
            s.anchor.push_back(found);
        }

        if (scope.size() > 64) {
            s.use_neighbour_candidates = true;
            s.in_scope.assign(g.vertex_count(), 0);
            for (int v : scope)
                s.in_scope[v] = 1;
        }

        return s.search(0);
    }

    auto enumerate_induced_embeddings(const Graph & g, const Pattern & h, LabelSet domain,
            span<const int> scope, const Coloring * coloring) -> vector<Embedding>
    {
        vector<Embedding> result;
        for_each_induced_embedding(g, h, domain, scope, coloring, [&] (const Embedding & e) {
                result.push_back(e);
                return true;
                });
        std::sort(result.begin(), result.end());
        return result;
    }

    auto has_induced_embedding(const Graph & g, const Pattern & h, LabelSet domain,
            span<const int> scope, const Coloring * coloring) -> bool
    {
        return ! for_each_induced_embedding(g, h, domain, scope, coloring, [] (const Embedding &) { return false; });
    }

    auto is_pattern_free(const Graph & g, const Pattern & h, span<const int> scope, const Coloring * coloring) -> bool
    {
        return ! has_induced_embedding(g, h, h.all_labels(), scope, coloring);
    }

    auto is_pattern_free(const Graph & g, const Pattern & h, const Coloring * coloring) -> bool
    {
        auto scope = all_vertices(g);
        return is_pattern_free(g, h, scope, coloring);
    }

    auto all_vertices(const Graph & g) -> vector<int>
    {
        vector<int> result(g.vertex_count());
        std::iota(result.begin(), result.end(), 0);
        return result;
    }
}
