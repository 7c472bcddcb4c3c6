#include <hisd/errors.hh>
#include <hisd/folio.hh>
#include <hisd/parallel.hh>

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

using std::uint64_t;
using std::vector;

namespace hisd
{
    auto openmp_enabled() -> bool
    {
#ifdef _OPENMP
        return true;
#else
        return false;
#endif
    }

    namespace
    {
        auto low_bits(int p) -> uint64_t
        {
            return p >= 64 ? ~uint64_t{0} : (uint64_t{1} << p) - 1;
        }

        // Opens a zero bit at position p, shifting higher bits up.
        auto bit_insert(uint64_t mask, int p) -> uint64_t
        {
            return (mask & low_bits(p)) | ((mask >> p) << (p + 1));
        }

        // Deletes position p, shifting higher bits down.
        auto bit_remove(uint64_t mask, int p) -> uint64_t
        {
            uint64_t high = p >= 63 ? 0 : (mask >> (p + 1)) << p;
            return (mask & low_bits(p)) | high;
        }

        auto position_of(const vector<int> & bag, int v) -> int
        {
            auto it = std::lower_bound(bag.begin(), bag.end(), v);
            if (it == bag.end() || *it != v)
                throw std::logic_error{"vertex not in bag"};
            return static_cast<int>(it - bag.begin());
        }

        auto available(const vector<int> & bag, uint64_t hat) -> vector<int>
        {
            vector<int> result;
            for (std::size_t i = 0 ; i < bag.size() ; ++i)
                if (! ((hat >> i) & 1u))
                    result.push_back(bag[i]);
            return result;
        }

        auto local_set(const DPContext & ctx, const vector<int> & scope) -> vector<LabelSet>
        {
            vector<LabelSet> result;
            auto all = ctx.pattern->all_labels();
            for (LabelSet d = 1 ; d < all ; ++d)
                if (has_induced_embedding(*ctx.graph, *ctx.pattern, d, scope, ctx.coloring))
                    result.push_back(d);
            return result;
        }

        auto hash_state(const DPState & s) -> std::size_t
        {
            std::size_t seed = std::hash<uint64_t>{}(s.hat);
            auto mix = [&] (std::size_t x) { seed ^= x + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); };
            for (auto & t : s.folio.triples) {
                mix((static_cast<std::size_t>(t.domain) << 8) | t.rooted);
                for (int r : t.rho)
                    mix(static_cast<std::size_t>(r + 1));
            }
            return seed;
        }

        auto normalise(vector<RootedTriple> & triples) -> void
        {
            std::sort(triples.begin(), triples.end());
            triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
        }

        // Deduplicating table; on equal keys the first entry stays and takes the smaller opt.
        class TableBuilder
        {
            private:
                struct Hash
                {
                    const vector<DPState> * states;
                    auto operator() (int i) const -> std::size_t { return (*states)[i].hash; }
                };

                struct Equal
                {
                    const vector<DPState> * states;
                    auto operator() (int a, int b) const -> bool
                    {
                        auto & x = (*states)[a];
                        auto & y = (*states)[b];
                        return x.hat == y.hat && x.folio.triples == y.folio.triples;
                    }
                };

                vector<DPState> _states;
                std::unordered_set<int, Hash, Equal> _index{16, Hash{&_states}, Equal{&_states}};

            public:
                auto add(DPState && s) -> void
                {
                    s.hash = hash_state(s);
                    _states.push_back(std::move(s));
                    int i = static_cast<int>(_states.size()) - 1;
                    auto [it, inserted] = _index.insert(i);
                    if (! inserted) {
                        auto & kept = _states[*it];
                        if (_states[i].opt < kept.opt) {
                            kept.opt = _states[i].opt;
                            kept.from = _states[i].from;
                        }
                        _states.pop_back();
                    }
                }

                auto take() -> vector<DPState> { return std::move(_states); }
        };

        auto collect(vector<vector<DPState>> && candidates) -> vector<DPState>
        {
            TableBuilder builder;
            for (auto & batch : candidates)
                for (auto & s : batch)
                    builder.add(std::move(s));
            return builder.take();
        }

        // Per-hat data shared by every child state with that hat.
        template <typename Data, typename Make>
        auto per_hat(const vector<DPState> & states, int threads, Make && make)
            -> std::pair<std::unordered_map<uint64_t, int>, vector<Data>>
        {
            std::unordered_map<uint64_t, int> slot;
            vector<uint64_t> hats;
            for (auto & s : states)
                if (slot.emplace(s.hat, static_cast<int>(hats.size())).second)
                    hats.push_back(s.hat);
            auto data = parallel_map<Data>(static_cast<int>(hats.size()), threads, [&] (int i) { return make(hats[i]); });
            return {std::move(slot), std::move(data)};
        }

        auto extends(const DPContext & ctx, const RootedTriple & t, int d, int v) -> bool
        {
            if (has_label(t.domain, d))
                return false;
            if (ctx.coloring && (*ctx.coloring)[v] != d)
                return false;
            if (ctx.pattern->neighbours(d) & t.unrooted())
                return false;
            for (int r = 0 ; r < ctx.pattern->size() ; ++r)
                if (has_label(t.rooted, r) && ctx.pattern->adjacent(d, r) != ctx.graph->adjacent(v, t.rho[r]))
                    return false;
            return true;
        }
    }

    auto hat_vertices(uint64_t hat, const vector<int> & bag) -> vector<int>
    {
        vector<int> result;
        for (std::size_t i = 0 ; i < bag.size() ; ++i)
            if ((hat >> i) & 1u)
                result.push_back(bag[i]);
        return result;
    }

    auto leaf_table() -> vector<DPState>
    {
        DPState s;
        s.hash = hash_state(s);
        return {s};
    }

    auto introduce_transition(const DPContext & ctx, const vector<DPState> & child,
            const vector<int> & child_bag, int v) -> vector<DPState>
    {
        vector<int> bag = child_bag;
        bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
        int p = position_of(bag, v);
        int h = ctx.pattern->size();

        struct SkipData
        {
            bool pattern_free = false;
            vector<LabelSet> local;
        };
        auto [slot, skip_data] = per_hat<SkipData>(child, ctx.threads, [&] (uint64_t child_hat) {
            SkipData data;
            auto scope = available(bag, bit_insert(child_hat, p));
            data.pattern_free = is_pattern_free(*ctx.graph, *ctx.pattern, scope, ctx.coloring);
            if (data.pattern_free)
                data.local = local_set(ctx, scope);
            return data;
        });

        auto candidates = parallel_map<vector<DPState>>(static_cast<int>(child.size()), ctx.threads, [&] (int i) {
            vector<DPState> out;
            auto & c = child[i];

            DPState take;
            take.hat = bit_insert(c.hat, p) | (uint64_t{1} << p);
            take.folio = c.folio;
            take.opt = c.opt + 1;
            take.from = {i, -1};
            out.push_back(std::move(take));

            auto & data = skip_data[slot.at(c.hat)];
            if (! data.pattern_free)
                return out;

            DPState skip;
            skip.hat = bit_insert(c.hat, p);
            skip.folio.local = data.local;
            skip.opt = c.opt;
            skip.from = {i, -1};
            auto & triples = skip.folio.triples;
            triples = c.folio.triples;
            for (auto & t : c.folio.triples) {
                int size = label_count(t.domain);
                if (size == h - 1) {
                    int missing = __builtin_ctz(ctx.pattern->all_labels() & ~t.domain);
                    if (extends(ctx, t, missing, v))
                        return out;
                    continue;
                }
                for (int d = 0 ; d < h ; ++d)
                    if (extends(ctx, t, d, v)) {
                        RootedTriple grown = t;
                        grown.domain |= LabelSet{1} << d;
                        grown.rooted |= LabelSet{1} << d;
                        grown.rho[d] = v;
                        triples.push_back(grown);
                    }
            }
            normalise(triples);
            out.push_back(std::move(skip));
            return out;
        });

        return collect(std::move(candidates));
    }

    auto forget_transition(const DPContext & ctx, const vector<DPState> & child,
            const vector<int> & child_bag, int v) -> vector<DPState>
    {
        int p = position_of(child_bag, v);
        vector<int> bag = child_bag;
        bag.erase(bag.begin() + p);

        struct ForgetData
        {
            vector<LabelSet> local;
            vector<RootedTriple> fresh;
        };
        auto [slot, forget_data] = per_hat<ForgetData>(child, ctx.threads, [&] (uint64_t child_hat) {
            ForgetData data;
            if ((child_hat >> p) & 1u)
                return data;
            auto old_scope = available(child_bag, child_hat);
            data.local = local_set(ctx, available(bag, bit_remove(child_hat, p)));
            auto all = ctx.pattern->all_labels();
            for (LabelSet d = 1 ; d < all ; ++d)
                for_each_induced_embedding(*ctx.graph, *ctx.pattern, d, old_scope, ctx.coloring, [&] (const Embedding & e) {
                    for (int label = 0 ; label < ctx.pattern->size() ; ++label)
                        if (e.image[label] == v) {
                            RootedTriple t;
                            t.domain = d;
                            t.rooted = d & ~(LabelSet{1} << label);
                            t.rho = e.image;
                            t.rho[label] = -1;
                            data.fresh.push_back(t);
                        }
                    return true;
                });
            return data;
        });

        auto candidates = parallel_map<vector<DPState>>(static_cast<int>(child.size()), ctx.threads, [&] (int i) {
            vector<DPState> out;
            auto & c = child[i];
            DPState s;
            s.hat = bit_remove(c.hat, p);
            s.opt = c.opt;
            s.from = {i, -1};
            if ((c.hat >> p) & 1u) {
                s.folio = c.folio;
                out.push_back(std::move(s));
                return out;
            }

            auto & data = forget_data[slot.at(c.hat)];
            s.folio.local = data.local;
            auto & triples = s.folio.triples;
            triples = data.fresh;
            for (auto t : c.folio.triples) {
                for (int label = 0 ; label < ctx.pattern->size() ; ++label)
                    if (t.rho[label] == v) {
                        t.rooted &= ~(LabelSet{1} << label);
                        t.rho[label] = -1;
                    }
                triples.push_back(t);
            }
            normalise(triples);
            out.push_back(std::move(s));
            return out;
        });

        return collect(std::move(candidates));
    }

    auto join_transition(const DPContext & ctx, const vector<DPState> & left,
            const vector<DPState> & right, const vector<int> &) -> vector<DPState>
    {
        std::unordered_map<uint64_t, vector<int>> by_hat;
        for (int j = 0 ; j < static_cast<int>(right.size()) ; ++j)
            by_hat[right[j].hat].push_back(j);

        auto all = ctx.pattern->all_labels();
        auto separated = [&] (LabelSet a, LabelSet b) {
            for (int label = 0 ; label < ctx.pattern->size() ; ++label)
                if (has_label(a, label) && (ctx.pattern->neighbours(label) & b))
                    return false;
            return true;
        };

        auto candidates = parallel_map<vector<DPState>>(static_cast<int>(left.size()), ctx.threads, [&] (int i) {
            vector<DPState> out;
            auto & a = left[i];
            auto partners = by_hat.find(a.hat);
            if (partners == by_hat.end())
                return out;

            for (int j : partners->second) {
                auto & b = right[j];
                if (a.folio.local != b.folio.local)
                    throw std::logic_error{"join children disagree on local occurrences"};

                DPState s;
                s.hat = a.hat;
                s.folio.local = a.folio.local;
                s.opt = a.opt + b.opt - __builtin_popcountll(a.hat);
                s.from = {i, j};
                auto & triples = s.folio.triples;
                std::merge(a.folio.triples.begin(), a.folio.triples.end(), b.folio.triples.begin(), b.folio.triples.end(),
                        std::back_inserter(triples));

                bool complete = false;
                for (auto & x : a.folio.triples) {
                    for (auto & y : b.folio.triples) {
                        if (x.rooted != y.rooted || x.rho != y.rho)
                            continue;
                        auto ux = x.unrooted(), uy = y.unrooted();
                        if ((ux & uy) || ! separated(ux, uy))
                            continue;
                        if ((x.domain | y.domain) == all) {
                            complete = true;
                            break;
                        }
                        RootedTriple merged = x;
                        merged.domain |= y.domain;
                        triples.push_back(merged);
                    }
                    if (complete)
                        break;
                }
                if (complete)
                    continue;
                normalise(triples);
                out.push_back(std::move(s));
            }
            return out;
        });

        return collect(std::move(candidates));
    }

    auto root_extract(const vector<DPState> & root_table) -> int
    {
        if (root_table.empty())
            throw std::logic_error{"empty root table"};
        int best = root_table.front().opt;
        for (auto & s : root_table) {
            if (s.hat != 0 || ! s.folio.local.empty())
                throw std::logic_error{"root state has a non-empty bag part"};
            for (auto & t : s.folio.triples)
                if (t.rooted != 0)
                    throw std::logic_error{"root triple still has roots"};
            best = std::min(best, s.opt);
        }
        return best;
    }

    auto solve_folio(const Graph & g, const NiceTreeDecomposition & ntd, const Pattern & h,
            const Coloring * coloring, const SolveOptions & options) -> SolveResult
    {
        auto start = std::chrono::steady_clock::now();

        auto report = validate_nice(g, ntd);
        if (! report.valid())
            throw InvalidDecomposition{report.describe()};
        if (ntd.width() + 1 > 64)
            throw CapExceeded{"folio DP supports bags of at most 64 vertices"};
        if (coloring)
            check_coloring(g, h, *coloring);

        DPContext ctx{&g, &h, coloring, std::max(1, options.threads)};
        bool retain = options.witness || options.keep_tables;

        SolveResult result;
        result.width_used = ntd.width();
        result.node_count = ntd.node_count();

        vector<vector<DPState>> tables(ntd.node_count());
        for (int x = 0 ; x < ntd.node_count() ; ++x) {
            auto & node = ntd.nodes[x];
            switch (node.kind) {
                case NodeKind::Leaf:
                    tables[x] = leaf_table();
                    break;
                case NodeKind::Introduce: {
                    int c = node.children[0];
                    tables[x] = introduce_transition(ctx, tables[c], ntd.nodes[c].bag, node.vertex);
                    break;
                }
                case NodeKind::Forget: {
                    int c = node.children[0];
                    tables[x] = forget_transition(ctx, tables[c], ntd.nodes[c].bag, node.vertex);
                    break;
                }
                case NodeKind::Join:
                    tables[x] = join_transition(ctx, tables[node.children[0]], tables[node.children[1]], node.bag);
                    break;
            }

            long size = static_cast<long>(tables[x].size());
            result.peak_state_count = std::max(result.peak_state_count, size);
            result.total_state_count += size;
            if (! retain)
                for (int c : node.children)
                    vector<DPState>{}.swap(tables[c]);
        }

        auto & root_table = tables[ntd.root];
        result.opt = root_extract(root_table);

        if (options.witness) {
            int best = 0;
            while (root_table[best].opt != result.opt)
                ++best;

            vector<int> witness;
            vector<std::pair<int, int>> stack{{ntd.root, best}};
            while (! stack.empty()) {
                auto [x, i] = stack.back();
                stack.pop_back();
                auto & s = tables[x][i];
                auto chosen = hat_vertices(s.hat, ntd.nodes[x].bag);
                witness.insert(witness.end(), chosen.begin(), chosen.end());
                auto & node = ntd.nodes[x];
                for (std::size_t k = 0 ; k < node.children.size() ; ++k)
                    stack.emplace_back(node.children[k], s.from[k]);
            }
            std::sort(witness.begin(), witness.end());
            witness.erase(std::unique(witness.begin(), witness.end()), witness.end());

            vector<int> rest;
            for (int v = 0 ; v < g.vertex_count() ; ++v)
                if (! std::binary_search(witness.begin(), witness.end(), v))
                    rest.push_back(v);
            if (static_cast<int>(witness.size()) != result.opt || ! is_pattern_free(g, h, rest, coloring))
                throw std::logic_error{"folio DP witness failed verification"};
            result.witness = std::move(witness);
        }

        if (options.keep_tables)
            result.tables = std::move(tables);

        result.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return result;
    }
}
