#include <hisd/errors.hh>
#include <hisd/oracle.hh>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

using std::vector;

namespace hisd
{
    auto enumerate_occurrences(const Graph & g, const Pattern & h, const Coloring * coloring) -> OccurrenceSet
    {
        OccurrenceSet result;
        auto scope = all_vertices(g);
        for_each_induced_embedding(g, h, h.all_labels(), scope, coloring, [&] (const Embedding & e) {
            vector<int> image(e.image.begin(), e.image.begin() + h.size());
            std::sort(image.begin(), image.end());
            result.push_back(std::move(image));
            return true;
        });
        std::sort(result.begin(), result.end());
        result.erase(std::unique(result.begin(), result.end()), result.end());
        return result;
    }

    auto disjoint_packing(const OccurrenceSet & occurrences) -> int
    {
        vector<char> used;
        int packed = 0;
        for (auto & o : occurrences) {
            bool free = true;
            for (int v : o) {
                if (v >= static_cast<int>(used.size()))
                    used.resize(v + 1, 0);
                if (used[v])
                    free = false;
            }
            if (! free)
                continue;
            for (int v : o)
                used[v] = 1;
            ++packed;
        }
        return packed;
    }

    namespace
    {
        class HittingSearch
        {
            private:
                const OccurrenceSet & _occ;
                vector<vector<int>> _containing;
                vector<int> _hits;              // deleted vertices per occurrence
                vector<int> _open;              // undecided vertices per occurrence
                vector<char> _deleted, _excluded;
                vector<int> _chosen;
                vector<int> _order;             // scratch for the packing bound
                vector<int> _mark;
                int _stamp = 0;
                bool _stop_at_first;

            public:
                int bound;                      // only sizes < bound are accepted
                vector<int> best;
                bool found = false;
                long nodes = 0;

                HittingSearch(const OccurrenceSet & occ, int n, int initial_bound, bool stop_at_first) :
                    _occ(occ),
                    _containing(n),
                    _hits(occ.size(), 0),
                    _open(occ.size(), 0),
                    _deleted(n, 0),
                    _excluded(n, 0),
                    _mark(n, 0),
                    _stop_at_first(stop_at_first),
                    bound(initial_bound)
                {
                    for (std::size_t i = 0 ; i < occ.size() ; ++i) {
                        for (int v : occ[i]) {
                            if (v < 0 || v >= n)
                                throw InvalidArgument{"occurrence vertex out of range"};
                            _containing[v].push_back(static_cast<int>(i));
                        }
                        _open[i] = static_cast<int>(occ[i].size());
                    }
                }

                auto set_deleted(int v, bool on) -> void
                {
                    _deleted[v] = on;
                    for (int i : _containing[v]) {
                        _hits[i] += on ? 1 : -1;
                        _open[i] += on ? -1 : 1;
                    }
                }

                auto set_excluded(int v, bool on) -> void
                {
                    _excluded[v] = on;
                    for (int i : _containing[v])
                        _open[i] += on ? -1 : 1;
                }

                // Greedy packing of uncovered occurrences on their undecided vertices,
                // smallest first.
                auto packing_bound() -> int
                {
                    _order.clear();
                    for (std::size_t i = 0 ; i < _occ.size() ; ++i)
                        if (_hits[i] == 0)
                            _order.push_back(static_cast<int>(i));
                    std::stable_sort(_order.begin(), _order.end(), [&] (int a, int b) { return _open[a] < _open[b]; });
                    ++_stamp;
                    int packed = 0;
                    for (int i : _order) {
                        bool free = true;
                        for (int v : _occ[i])
                            if (! _deleted[v] && ! _excluded[v] && _mark[v] == _stamp) {
                                free = false;
                                break;
                            }
                        if (! free)
                            continue;
                        for (int v : _occ[i])
                            if (! _deleted[v] && ! _excluded[v])
                                _mark[v] = _stamp;
                        ++packed;
                    }
                    return packed;
                }

                // Returns true when the search should stop.
                auto search() -> bool
                {
                    ++nodes;
                    int count = static_cast<int>(_chosen.size());
                    if (count >= bound)
                        return false;

                    int pick = -1;
                    for (std::size_t i = 0 ; i < _occ.size() ; ++i)
                        if (_hits[i] == 0 && (pick == -1 || _open[i] < _open[pick]))
                            pick = static_cast<int>(i);

                    if (pick == -1) {
                        bound = count;
                        best = _chosen;
                        found = true;
                        return _stop_at_first;
                    }
                    if (_open[pick] == 0)
                        return false;
                    if (count + packing_bound() >= bound)
                        return false;

                    vector<int> tried;
                    bool stop = false;
                    for (int v : _occ[pick]) {
                        if (_deleted[v] || _excluded[v])
                            continue;
                        set_deleted(v, true);
                        _chosen.push_back(v);
                        stop = search();
                        _chosen.pop_back();
                        set_deleted(v, false);
                        if (stop)
                            break;
                        set_excluded(v, true);
                        tried.push_back(v);
                        if (count + 1 >= bound)
                            break;
                    }
                    for (int v : tried)
                        set_excluded(v, false);
                    return stop;
                }
        };
    }

    namespace
    {
        struct Reduced
        {
            OccurrenceSet occurrences;
            vector<int> forced;
        };

        // Exact reductions applied to a fixpoint: a singleton occurrence forces its
        // vertex, an occurrence containing another is dropped, and a vertex whose
        // occurrences all contain some other vertex is never needed (for identical
        // occurrence lists the larger id goes).
        auto reduce(const OccurrenceSet & input, int n) -> Reduced
        {
            Reduced result;
            OccurrenceSet occ = input;
            vector<char> alive(occ.size(), 1);
            for (auto & o : occ)
                if (o.empty())
                    throw InvalidArgument{"empty occurrence cannot be hit"};

            bool changed = true;
            while (changed) {
                changed = false;
                vector<vector<int>> containing(n);
                for (std::size_t i = 0 ; i < occ.size() ; ++i)
                    if (alive[i])
                        for (int v : occ[i])
                            containing[v].push_back(static_cast<int>(i));

                for (std::size_t i = 0 ; i < occ.size() ; ++i)
                    if (alive[i] && occ[i].size() == 1) {
                        int v = occ[i][0];
                        result.forced.push_back(v);
                        for (int j : containing[v])
                            alive[j] = 0;
                        containing[v].clear();
                        changed = true;
                    }
                if (changed)
                    continue;

                for (std::size_t i = 0 ; i < occ.size() ; ++i) {
                    if (! alive[i])
                        continue;
                    int pivot = *std::min_element(occ[i].begin(), occ[i].end(), [&] (int a, int b) {
                        return containing[a].size() < containing[b].size();
                    });
                    for (int j : containing[pivot]) {
                        if (static_cast<std::size_t>(j) == i || ! alive[j])
                            continue;
                        bool bigger = occ[j].size() > occ[i].size() || (occ[j].size() == occ[i].size() && static_cast<std::size_t>(j) > i);
                        if (bigger && std::includes(occ[j].begin(), occ[j].end(), occ[i].begin(), occ[i].end())) {
                            alive[j] = 0;
                            changed = true;
                        }
                    }
                }
                if (changed)
                    continue;

                vector<char> excluded(n, 0);
                for (int v = 0 ; v < n ; ++v) {
                    auto & mine = containing[v];
                    if (mine.empty())
                        continue;
                    for (int u : occ[mine.front()]) {
                        if (u == v || excluded[u])
                            continue;
                        auto & theirs = containing[u];
                        if (! std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end()))
                            continue;
                        if (theirs.size() == mine.size() && u > v)
                            continue;
                        excluded[v] = 1;
                        for (int j : mine)
                            occ[j].erase(std::find(occ[j].begin(), occ[j].end(), v));
                        changed = true;
                        break;
                    }
                }
            }

            for (std::size_t i = 0 ; i < occ.size() ; ++i)
                if (alive[i])
                    result.occurrences.push_back(occ[i]);
            std::sort(result.occurrences.begin(), result.occurrences.end());
            result.occurrences.erase(std::unique(result.occurrences.begin(), result.occurrences.end()), result.occurrences.end());
            return result;
        }
    }

    auto min_hitting_set(const OccurrenceSet & occurrences, int vertex_count, std::optional<int> cutoff) -> HittingSet
    {
        auto reduced = reduce(occurrences, vertex_count);
        int forced = static_cast<int>(reduced.forced.size());

        HittingSet result;
        result.size = -1;
        result.found = false;
        if (cutoff && forced > *cutoff)
            return result;

        int initial = cutoff ? *cutoff - forced + 1 : std::numeric_limits<int>::max();
        HittingSearch search{reduced.occurrences, vertex_count, initial, cutoff.has_value()};
        search.search();

        result.found = search.found;
        result.nodes = search.nodes;
        if (search.found) {
            result.witness = search.best;
            result.witness.insert(result.witness.end(), reduced.forced.begin(), reduced.forced.end());
            std::sort(result.witness.begin(), result.witness.end());
            result.size = static_cast<int>(result.witness.size());
        }
        return result;
    }

    auto oracle_solve(const Graph & g, const Pattern & h, const Coloring * coloring, const OracleOptions & options) -> OracleResult
    {
        if (g.vertex_count() > options.size_limit && ! options.override_limit)
            throw CapExceeded{"oracle refuses graphs with more than " + std::to_string(options.size_limit) + " vertices"};
        if (coloring)
            check_coloring(g, h, *coloring);

        auto occurrences = enumerate_occurrences(g, h, coloring);
        auto hitting = min_hitting_set(occurrences, g.vertex_count(), options.cutoff);

        OracleResult result;
        result.occurrence_count = static_cast<int>(occurrences.size());
        result.packing_bound = disjoint_packing(occurrences);
        result.found = hitting.found;
        result.nodes = hitting.nodes;
        if (! hitting.found)
            return result;

        result.opt = hitting.size;
        result.witness = hitting.witness;

        if (! options.cutoff && result.opt < result.packing_bound)
            throw std::logic_error{"oracle optimum below the packing bound"};
        vector<int> rest;
        for (int v = 0 ; v < g.vertex_count() ; ++v)
            if (! std::binary_search(result.witness.begin(), result.witness.end(), v))
                rest.push_back(v);
        if (! is_pattern_free(g, h, rest, coloring))
            throw std::logic_error{"oracle witness leaves an occurrence"};
        return result;
    }
}
