#include <hisd/errors.hh>
#include <hisd/parallel.hh>
#include <hisd/special.hh>

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <numeric>
#include <set>

using std::uint64_t;
using std::vector;

namespace hisd
{
    namespace
    {
        auto clique_pattern(int h) -> Pattern
        {
            int size = h;
            return named_pattern("K", std::span<const int>{&size, 1});
        }

        auto selected(const vector<int> & bag, uint64_t mask, bool chosen) -> vector<int>
        {
            vector<int> result;
            for (std::size_t i = 0 ; i < bag.size() ; ++i)
                if (((mask >> i) & 1u) == chosen)
                    result.push_back(bag[i]);
            return result;
        }

        auto position_of(const vector<int> & bag, int v) -> int
        {
            return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
        }

        auto insert_bit(uint64_t mask, int p) -> uint64_t
        {
            uint64_t low = mask & ((uint64_t{1} << p) - 1);
            return low | ((mask >> p) << (p + 1));
        }

        auto remove_bit(uint64_t mask, int p) -> uint64_t
        {
            uint64_t low = mask & ((uint64_t{1} << p) - 1);
            uint64_t high = p >= 63 ? 0 : (mask >> (p + 1)) << p;
            return low | high;
        }

        using CliqueTable = std::map<uint64_t, int>;

        auto keep_min(CliqueTable & table, uint64_t hat, int value) -> void
        {
            auto [it, inserted] = table.emplace(hat, value);
            if (! inserted)
                it->second = std::min(it->second, value);
        }

        // Largest independent set size in G[vertices], stopping once `enough` is reached.
        auto has_independent_set(const Graph & g, const vector<int> & vertices, int enough) -> bool
        {
            if (enough <= 0)
                return true;
            vector<int> chosen;
            std::function<auto (std::size_t) -> bool> grow = [&] (std::size_t from) -> bool {
                if (static_cast<int>(chosen.size()) >= enough)
                    return true;
                if (static_cast<int>(chosen.size() + vertices.size() - from) < enough)
                    return false;
                for (std::size_t i = from ; i < vertices.size() ; ++i) {
                    int v = vertices[i];
                    bool free = std::none_of(chosen.begin(), chosen.end(), [&] (int u) { return g.adjacent(u, v); });
                    if (! free)
                        continue;
                    chosen.push_back(v);
                    if (grow(i + 1))
                        return true;
                    chosen.pop_back();
                }
                return false;
            };
            return grow(0);
        }

        // Largest subset of `pool` with no independent set of size h, ignoring sizes <= floor.
        auto largest_free_subset(const Graph & g, const vector<int> & pool, int h, const std::atomic<int> & floor) -> int
        {
            int n = static_cast<int>(pool.size());
            for (int size = n ; size > floor.load() ; --size) {
                vector<char> pick(n, 0);
                std::fill(pick.begin(), pick.begin() + size, 1);
                do {
                    vector<int> subset;
                    for (int i = 0 ; i < n ; ++i)
                        if (pick[i])
                            subset.push_back(pool[i]);
                    if (! has_independent_set(g, subset, h))
                        return size;
                } while (std::prev_permutation(pick.begin(), pick.end()));
            }
            return -1;
        }
    }

    auto solve_clique_hitting(const Graph & g, const NiceTreeDecomposition & ntd, int h,
            const Coloring * coloring, int threads) -> int
    {
        if (h < 1)
            throw InvalidArgument{"clique size must be positive"};
        auto report = validate_nice(g, ntd);
        if (! report.valid())
            throw InvalidDecomposition{report.describe()};
        if (ntd.width() + 1 > 63)
            throw CapExceeded{"clique DP supports bags of at most 63 vertices"};

        auto pattern = clique_pattern(h);
        if (coloring)
            check_coloring(g, pattern, *coloring);

        vector<CliqueTable> tables(ntd.node_count());
        for (int x = 0 ; x < ntd.node_count() ; ++x) {
            auto & node = ntd.nodes[x];
            CliqueTable table;
            switch (node.kind) {
                case NodeKind::Leaf:
                    table.emplace(0, 0);
                    break;

                case NodeKind::Introduce: {
                    auto & child = tables[node.children[0]];
                    int p = position_of(node.bag, node.vertex);
                    vector<std::pair<uint64_t, int>> entries(child.begin(), child.end());
                    auto skip_ok = parallel_map<char>(static_cast<int>(entries.size()), threads, [&] (int i) -> char {
                        auto rest = selected(node.bag, insert_bit(entries[i].first, p), false);
                        return is_pattern_free(g, pattern, rest, coloring);
                    });
                    for (std::size_t i = 0 ; i < entries.size() ; ++i) {
                        auto [hat, value] = entries[i];
                        uint64_t moved = insert_bit(hat, p);
                        keep_min(table, moved | (uint64_t{1} << p), value + 1);
                        if (skip_ok[i])
                            keep_min(table, moved, value);
                    }
                    break;
                }

                case NodeKind::Forget: {
                    auto & child = tables[node.children[0]];
                    int p = position_of(ntd.nodes[node.children[0]].bag, node.vertex);
                    for (auto [hat, value] : child)
                        keep_min(table, remove_bit(hat, p), value);
                    break;
                }

                case NodeKind::Join: {
                    auto & left = tables[node.children[0]];
                    auto & right = tables[node.children[1]];
                    for (auto [hat, value] : left) {
                        auto other = right.find(hat);
                        if (other != right.end())
                            keep_min(table, hat, value + other->second - __builtin_popcountll(hat));
                    }
                    break;
                }
            }
            tables[x] = std::move(table);
            for (int c : node.children)
                CliqueTable{}.swap(tables[c]);
        }

        auto & root = tables[ntd.root];
        if (root.empty())
            throw std::logic_error{"empty root table"};
        return root.begin()->second;
    }

    auto perfect_elimination_ordering(const Graph & g) -> std::optional<vector<int>>
    {
        int n = g.vertex_count();
        vector<int> weight(n, 0), visit;
        vector<char> done(n, 0);
        for (int step = 0 ; step < n ; ++step) {
            int pick = -1;
            for (int v = 0 ; v < n ; ++v)
                if (! done[v] && (pick == -1 || weight[v] > weight[pick]))
                    pick = v;
            done[pick] = 1;
            visit.push_back(pick);
            for (int u : g.neighbours(pick))
                if (! done[u])
                    ++weight[u];
        }

        vector<int> order(visit.rbegin(), visit.rend());
        vector<int> position(n);
        for (int i = 0 ; i < n ; ++i)
            position[order[i]] = i;

        for (int i = 0 ; i < n ; ++i) {
            vector<int> later;
            for (int u : g.neighbours(order[i]))
                if (position[u] > i)
                    later.push_back(u);
            for (std::size_t a = 0 ; a < later.size() ; ++a)
                for (std::size_t b = a + 1 ; b < later.size() ; ++b)
                    if (! g.adjacent(later[a], later[b]))
                        return std::nullopt;
        }
        return order;
    }

    auto chordal_clique_cover(const Graph & g, int h) -> CliqueCover
    {
        auto order = perfect_elimination_ordering(g);
        if (! order)
            throw InvalidArgument{"graph is not chordal"};

        vector<char> remaining(g.vertex_count(), 1);
        CliqueCover cover;
        for (int v : *order) {
            if (! remaining[v])
                continue;
            if (static_cast<int>(cover.size()) >= h - 1)
                throw InvalidArgument{"graph contains an independent set of size " + std::to_string(h)};
            // v comes first among the remaining vertices, so it is simplicial there
            vector<int> part{v};
            for (int u : g.neighbours(v))
                if (remaining[u])
                    part.push_back(u);
            std::sort(part.begin(), part.end());
            for (int u : part)
                remaining[u] = 0;
            cover.push_back(std::move(part));
        }
        return cover;
    }

    auto solve_independent_set_hitting(const Graph & g, const TreeDecomposition & td, int h, int threads) -> int
    {
        if (h < 1)
            throw InvalidArgument{"independent set size must be positive"};
        auto report = validate(g, td);
        if (! report.valid())
            throw InvalidDecomposition{report.describe()};

        int n = g.vertex_count();
        if (h == 1 || n == 0)
            return n;

        std::set<vector<int>> distinct;
        for (auto b : td.bags) {
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
            distinct.insert(std::move(b));
        }
        vector<vector<int>> bags(distinct.begin(), distinct.end());

        std::set<vector<int>> union_set;
        vector<int> pick;
        std::function<auto (std::size_t, vector<int>) -> void> choose = [&] (std::size_t from, vector<int> current) {
            if (! pick.empty())
                union_set.insert(current);
            if (static_cast<int>(pick.size()) == h - 1)
                return;
            for (std::size_t i = from ; i < bags.size() ; ++i) {
                vector<int> merged;
                std::set_union(current.begin(), current.end(), bags[i].begin(), bags[i].end(), std::back_inserter(merged));
                pick.push_back(static_cast<int>(i));
                choose(i + 1, std::move(merged));
                pick.pop_back();
            }
        };
        choose(0, {});

        vector<vector<int>> unions(union_set.begin(), union_set.end());
        std::sort(unions.begin(), unions.end(), [] (auto & a, auto & b) { return a.size() > b.size(); });

        std::atomic<int> best{0};
        parallel_for(static_cast<int>(unions.size()), threads, [&] (int i) {
            if (static_cast<int>(unions[i].size()) <= best.load())
                return;
            int found = largest_free_subset(g, unions[i], h, best);
            int seen = best.load();
            while (found > seen && ! best.compare_exchange_weak(seen, found))
                ;
        });
        return n - best.load();
    }

    auto solve_kh_il_subgraph(const Graph & g, const NiceTreeDecomposition & ntd, int h, int l) -> int
    {
        int n = g.vertex_count();
        if (n < h + l)
            return 0;
        int k = solve_clique_hitting(g, ntd, h);
        return k <= n - (h + l) ? k : n - (h + l) + 1;
    }

    auto solve_colorful_pair(const Graph & g, const Coloring & coloring, const Pattern & h) -> PairSolution
    {
        if (h.size() != 2)
            throw InvalidArgument{"pair solver needs a pattern on two labels"};
        check_coloring(g, h, coloring);
        bool want_edges = h.adjacent(0, 1);

        int n = g.vertex_count();
        vector<int> left, right;
        for (int v = 0 ; v < n ; ++v)
            (coloring[v] == 0 ? left : right).push_back(v);

        // occurrences are bichromatic pairs that match the pattern's adjacency
        vector<vector<int>> adj(n);
        for (int u : left)
            for (int v : right)
                if (g.adjacent(u, v) == want_edges)
                    adj[u].push_back(v);

        vector<int> match(n, -1);
        vector<int> seen(n, -1);
        std::function<auto (int, int) -> bool> augment = [&] (int u, int round) -> bool {
            for (int v : adj[u]) {
                if (seen[v] == round)
                    continue;
                seen[v] = round;
                if (match[v] == -1 || augment(match[v], round)) {
                    match[v] = u;
                    match[u] = v;
                    return true;
                }
            }
            return false;
        };

        PairSolution result;
        for (int u : left)
            if (augment(u, u))
                ++result.size;

        // Koenig: Z = vertices reachable from free left vertices by alternating paths
        vector<char> in_z(n, 0);
        vector<int> stack;
        for (int u : left)
            if (match[u] == -1) {
                in_z[u] = 1;
                stack.push_back(u);
            }
        while (! stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u])
                if (! in_z[v]) {
                    in_z[v] = 1;
                    if (match[v] != -1 && ! in_z[match[v]]) {
                        in_z[match[v]] = 1;
                        stack.push_back(match[v]);
                    }
                }
        }
        for (int u : left)
            if (! in_z[u])
                result.cover.push_back(u);
        for (int v : right)
            if (in_z[v])
                result.cover.push_back(v);
        std::sort(result.cover.begin(), result.cover.end());
        if (static_cast<int>(result.cover.size()) != result.size)
            throw std::logic_error{"vertex cover size differs from matching size"};
        return result;
    }

    auto engine_name(Engine e) -> std::string
    {
        switch (e) {
            case Engine::Folio:          return "folio";
            case Engine::Clique:         return "clique";
            case Engine::IndependentSet: return "independent-set";
            case Engine::Matching:       return "matching";
            case Engine::Oracle:         return "oracle";
        }
        return "unknown";
    }

    auto parse_engine(const std::string & name) -> Engine
    {
        for (auto e : {Engine::Folio, Engine::Clique, Engine::IndependentSet, Engine::Matching, Engine::Oracle})
            if (engine_name(e) == name)
                return e;
        throw InvalidArgument{"unknown engine '" + name + "'"};
    }

    auto auto_engine(const Pattern & h, bool colorful) -> Engine
    {
        if (colorful && h.size() == 2)
            return Engine::Matching;
        if (h.is_clique())
            return Engine::Clique;
        if (h.is_independent() && ! colorful)
            return Engine::IndependentSet;
        return Engine::Folio;
    }
}
