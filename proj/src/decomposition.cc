#include <hisd/decomposition.hh>
#include <hisd/errors.hh>

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

using std::pair;
using std::set;
using std::string;
using std::to_string;
using std::vector;

namespace hisd
{
    auto TreeDecomposition::width() const -> int
    {
        int widest = 0;
        for (auto & b : bags)
            widest = std::max(widest, static_cast<int>(b.size()));
        return widest - 1;
    }

    auto axiom_name(Axiom a) -> string
    {
        switch (a) {
            case Axiom::TreeShape:      return "tree-shape";
            case Axiom::VertexRange:    return "vertex-range";
            case Axiom::VertexCoverage: return "vertex-coverage";
            case Axiom::EdgeCoverage:   return "edge-coverage";
            case Axiom::Connectivity:   return "connectivity";
            case Axiom::NiceShape:      return "nice-shape";
        }
        return "unknown";
    }

    auto ValidationReport::has(Axiom a) const -> bool
    {
        return std::any_of(violations.begin(), violations.end(), [&] (const Violation & v) { return v.axiom == a; });
    }

    auto ValidationReport::describe() const -> string
    {
        std::ostringstream out;
        for (auto & v : violations)
            out << axiom_name(v.axiom) << ": " << v.detail << "\n";
        return out.str();
    }

    namespace
    {
        auto tree_adjacency(const TreeDecomposition & td) -> vector<vector<int>>
        {
            vector<vector<int>> adj(td.node_count());
            for (auto & [a, b] : td.tree_edges)
                if (a >= 0 && b >= 0 && a < td.node_count() && b < td.node_count()) {
                    adj[a].push_back(b);
                    adj[b].push_back(a);
                }
            for (auto & a : adj)
                std::sort(a.begin(), a.end());
            return adj;
        }
    }

    auto validate(const Graph & g, const TreeDecomposition & td) -> ValidationReport
    {
        ValidationReport report;
        auto fail = [&] (Axiom a, string detail) { report.violations.push_back(Violation{a, std::move(detail)}); };

        int nodes = td.node_count();
        if (nodes == 0) {
            fail(Axiom::TreeShape, "decomposition has no nodes");
            return report;
        }

        bool edges_ok = true;
        for (auto & [a, b] : td.tree_edges)
            if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) {
                fail(Axiom::TreeShape, "bad tree edge " + to_string(a) + " " + to_string(b));
                edges_ok = false;
            }
        if (static_cast<int>(td.tree_edges.size()) != nodes - 1) {
            fail(Axiom::TreeShape, to_string(td.tree_edges.size()) + " tree edges for " + to_string(nodes) + " nodes");
            edges_ok = false;
        }
        auto adj = tree_adjacency(td);
        if (edges_ok) {
            vector<char> seen(nodes, 0);
            vector<int> stack{0};
            seen[0] = 1;
            int reached = 1;
            while (! stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : adj[x])
                    if (! seen[y]) {
                        seen[y] = 1;
                        ++reached;
                        stack.push_back(y);
                    }
            }
            if (reached != nodes) {
                fail(Axiom::TreeShape, "tree is disconnected or has a cycle");
                edges_ok = false;
            }
        }

        int n = g.vertex_count();
        vector<vector<int>> holders(n);
        for (int x = 0 ; x < nodes ; ++x)
            for (int v : td.bags[x]) {
                if (v < 0 || v >= n)
                    fail(Axiom::VertexRange, "bag " + to_string(x) + " holds vertex " + to_string(v));
                else if (holders[v].empty() || holders[v].back() != x)
                    holders[v].push_back(x);
            }

        for (int v = 0 ; v < n ; ++v)
            if (holders[v].empty())
                fail(Axiom::VertexCoverage, "vertex " + to_string(v) + " is in no bag");

        for (auto & [u, v] : g.edges()) {
            bool covered = false;
            for (int x : holders[u])
                if (std::binary_search(td.bags[x].begin(), td.bags[x].end(), v)) {
                    covered = true;
                    break;
                }
            if (! covered)
                fail(Axiom::EdgeCoverage, "edge " + to_string(u) + " " + to_string(v) + " is in no bag");
        }

        if (edges_ok) {
            vector<char> holds(nodes, 0), seen(nodes, 0);
            for (int v = 0 ; v < n ; ++v) {
                if (holders[v].size() <= 1)
                    continue;
                for (int x : holders[v])
                    holds[x] = 1;
                vector<int> stack{holders[v].front()};
                seen[holders[v].front()] = 1;
                std::size_t reached = 1;
                while (! stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (int y : adj[x])
                        if (holds[y] && ! seen[y]) {
                            seen[y] = 1;
                            ++reached;
                            stack.push_back(y);
                        }
                }
                if (reached != holders[v].size())
                    fail(Axiom::Connectivity, "bags holding vertex " + to_string(v) + " are not connected");
                for (int x : holders[v])
                    holds[x] = seen[x] = 0;
            }
        }

        return report;
    }

    auto heuristic_decomposition(const Graph & g) -> TreeDecomposition
    {
        int n = g.vertex_count();
        TreeDecomposition td;
        if (n == 0) {
            td.bags.emplace_back();
            return td;
        }

        vector<set<int>> adj(n);
        for (auto & [u, v] : g.edges()) {
            adj[u].insert(v);
            adj[v].insert(u);
        }

        auto fill_of = [&] (int v) -> long {
            long missing = 0;
            for (auto i = adj[v].begin() ; i != adj[v].end() ; ++i)
                for (auto j = std::next(i) ; j != adj[v].end() ; ++j)
                    if (! adj[*i].contains(*j))
                        ++missing;
            return missing;
        };

        vector<char> eliminated(n, 0);
        vector<int> position(n, -1), order;
        vector<vector<int>> bag_of(n);
        for (int step = 0 ; step < n ; ++step) {
            int best = -1;
            long best_fill = std::numeric_limits<long>::max();
            for (int v = 0 ; v < n ; ++v) {
                if (eliminated[v])
                    continue;
                long f = fill_of(v);
                if (f < best_fill || (f == best_fill && adj[v].size() < adj[best].size())) {
                    best = v;
                    best_fill = f;
                }
            }

            auto & bag = bag_of[best];
            bag.assign(adj[best].begin(), adj[best].end());
            bag.push_back(best);
            std::sort(bag.begin(), bag.end());

            for (auto i = adj[best].begin() ; i != adj[best].end() ; ++i)
                for (auto j = std::next(i) ; j != adj[best].end() ; ++j) {
                    adj[*i].insert(*j);
                    adj[*j].insert(*i);
                }
            for (int u : adj[best])
                adj[u].erase(best);
            adj[best].clear();
            eliminated[best] = 1;
            position[best] = step;
            order.push_back(best);
        }

        // node i of the decomposition is the bag created when order[i] was eliminated
        int previous_root = -1;
        for (int i = 0 ; i < n ; ++i) {
            int v = order[i];
            td.bags.push_back(bag_of[v]);
            int parent = -1;
            for (int u : bag_of[v])
                if (u != v && (parent == -1 || position[u] < parent))
                    parent = position[u];
            if (parent != -1)
                td.tree_edges.emplace_back(i, parent);
            else {
                if (previous_root != -1)
                    td.tree_edges.emplace_back(previous_root, i);
                previous_root = i;
            }
        }
        return td;
    }

    auto NiceTreeDecomposition::width() const -> int
    {
        int widest = 0;
        for (auto & node : nodes)
            widest = std::max(widest, static_cast<int>(node.bag.size()));
        return widest - 1;
    }

    auto NiceTreeDecomposition::as_tree_decomposition() const -> TreeDecomposition
    {
        TreeDecomposition td;
        for (int x = 0 ; x < node_count() ; ++x) {
            td.bags.push_back(nodes[x].bag);
            for (int c : nodes[x].children)
                td.tree_edges.emplace_back(c, x);
        }
        return td;
    }

    namespace
    {
        struct NiceBuilder
        {
            const TreeDecomposition & td;
            vector<vector<int>> adj;
            NiceTreeDecomposition result;

            auto add(NodeKind kind, int vertex, vector<int> bag, vector<int> children) -> int
            {
                result.nodes.push_back(NiceNode{kind, vertex, std::move(bag), std::move(children)});
                return result.node_count() - 1;
            }

            auto chain(int from, const vector<int> & target) -> int
            {
                vector<int> bag = result.nodes[from].bag;
                vector<int> leaving, arriving;
                std::set_difference(bag.begin(), bag.end(), target.begin(), target.end(), std::back_inserter(leaving));
                std::set_difference(target.begin(), target.end(), bag.begin(), bag.end(), std::back_inserter(arriving));
                for (int v : leaving) {
                    bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
                    from = add(NodeKind::Forget, v, bag, {from});
                }
                for (int v : arriving) {
                    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
                    from = add(NodeKind::Introduce, v, bag, {from});
                }
                return from;
            }

            auto build(int x, int parent) -> int
            {
                vector<int> tops;
                for (int c : adj[x])
                    if (c != parent)
                        tops.push_back(chain(build(c, x), td.bags[x]));

                if (tops.empty())
                    return chain(add(NodeKind::Leaf, -1, {}, {}), td.bags[x]);

                int current = tops.front();
                for (std::size_t i = 1 ; i < tops.size() ; ++i)
                    current = add(NodeKind::Join, -1, td.bags[x], {current, tops[i]});
                return current;
            }
        };
    }

    auto niceify(const TreeDecomposition & td, const Graph & g) -> NiceTreeDecomposition
    {
        auto report = validate(g, td);
        if (! report.valid())
            throw InvalidDecomposition{"cannot niceify an invalid decomposition:\n" + report.describe()};

        TreeDecomposition sorted_td = td;
        for (auto & b : sorted_td.bags) {
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
        }

        NiceBuilder builder{sorted_td, tree_adjacency(sorted_td), {}};
        int top = builder.build(0, -1);
        builder.result.root = builder.chain(top, {});
        return std::move(builder.result);
    }

    auto validate_nice(const Graph & g, const NiceTreeDecomposition & ntd) -> ValidationReport
    {
        ValidationReport report;
        auto fail = [&] (string detail) { report.violations.push_back(Violation{Axiom::NiceShape, std::move(detail)}); };

        if (ntd.root < 0 || ntd.root >= ntd.node_count()) {
            fail("root out of range");
            return report;
        }
        if (! ntd.nodes[ntd.root].bag.empty())
            fail("root bag is not empty");

        for (int x = 0 ; x < ntd.node_count() ; ++x) {
            auto & node = ntd.nodes[x];
            auto where = "node " + to_string(x) + ": ";
            if (! std::is_sorted(node.bag.begin(), node.bag.end()))
                fail(where + "bag not sorted");
            for (int c : node.children)
                if (c < 0 || c >= x)
                    fail(where + "child " + to_string(c) + " does not precede its parent");
            if (! report.valid())
                continue;

            auto child_bag = [&] (std::size_t i) -> const vector<int> & { return ntd.nodes[node.children[i]].bag; };
            switch (node.kind) {
                case NodeKind::Leaf:
                    if (! node.children.empty() || ! node.bag.empty())
                        fail(where + "leaf must have no children and an empty bag");
                    break;
                case NodeKind::Introduce: {
                    if (node.children.size() != 1) {
                        fail(where + "introduce node needs one child");
                        break;
                    }
                    auto expected = child_bag(0);
                    if (std::binary_search(expected.begin(), expected.end(), node.vertex))
                        fail(where + "introduced vertex already in child bag");
                    expected.insert(std::lower_bound(expected.begin(), expected.end(), node.vertex), node.vertex);
                    if (expected != node.bag)
                        fail(where + "bag is not child bag plus introduced vertex");
                    break;
                }
                case NodeKind::Forget: {
                    if (node.children.size() != 1) {
                        fail(where + "forget node needs one child");
                        break;
                    }
                    auto expected = child_bag(0);
                    auto it = std::lower_bound(expected.begin(), expected.end(), node.vertex);
                    if (it == expected.end() || *it != node.vertex) {
                        fail(where + "forgotten vertex not in child bag");
                        break;
                    }
                    expected.erase(it);
                    if (expected != node.bag)
                        fail(where + "bag is not child bag minus forgotten vertex");
                    break;
                }
                case NodeKind::Join:
                    if (node.children.size() != 2 || child_bag(0) != node.bag || child_bag(1) != node.bag)
                        fail(where + "join needs two children with identical bags");
                    break;
            }
        }

        vector<int> parents(ntd.node_count(), 0);
        for (auto & node : ntd.nodes)
            for (int c : node.children)
                if (c >= 0 && c < ntd.node_count())
                    ++parents[c];
        for (int x = 0 ; x < ntd.node_count() ; ++x)
            if (x != ntd.root && parents[x] != 1)
                fail("node " + to_string(x) + " has " + to_string(parents[x]) + " parents");

        auto underlying = validate(g, ntd.as_tree_decomposition());
        report.violations.insert(report.violations.end(), underlying.violations.begin(), underlying.violations.end());
        return report;
    }

    auto fill_in_graph(const Graph & g, const TreeDecomposition & td) -> Graph
    {
        Graph result = g;
        for (auto & bag : td.bags)
            for (std::size_t i = 0 ; i < bag.size() ; ++i)
                for (std::size_t j = i + 1 ; j < bag.size() ; ++j)
                    if (bag[i] != bag[j])
                        result.add_edge(bag[i], bag[j]);
        return result;
    }
}
