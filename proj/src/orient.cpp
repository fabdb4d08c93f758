#include "wrcirc/orient.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wrc {

namespace {

constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

}  // namespace

Orientation::Orientation(Graph base, std::vector<std::uint8_t> forward)
    : base_(std::move(base)), out_(base_.order(), 0), in_(base_.order(), 0) {
    auto edges = base_.edges();
    if (forward.size() != edges.size())
        throw std::invalid_argument("orientation direction vector does not match the edge count");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        int from = forward[i] ? u : v;
        int to = forward[i] ? v : u;
        out_[from] |= bit(to);
        in_[to] |= bit(from);
    }
}

Orientation Orientation::from_arcs(const Graph& base, const std::vector<std::pair<int, int>>& arcs) {
    auto edges = base.edges();
    std::vector<std::uint8_t> forward(edges.size(), 2);
    for (auto [u, v] : arcs) {
        if (u < 0 || v < 0 || u >= base.order() || v >= base.order() || !base.adjacent(u, v))
            throw std::invalid_argument("arc off the base edge set");
        auto it = std::lower_bound(edges.begin(), edges.end(),
                                   std::make_pair(std::min(u, v), std::max(u, v)));
        std::size_t idx = static_cast<std::size_t>(it - edges.begin());
        if (forward[idx] != 2) throw std::invalid_argument("edge oriented twice");
        forward[idx] = u < v ? 1 : 0;
    }
    for (std::uint8_t f : forward)
        if (f == 2) throw std::invalid_argument("orientation leaves an edge undirected");
    return Orientation(base, forward);
}

std::vector<std::pair<int, int>> Orientation::arcs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(base_.edge_count());
    for (int u = 0; u < order(); ++u) {
        std::uint64_t m = out_[u];
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            out.emplace_back(u, v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Orientation natural_orientation(const Graph& g) {
    return Orientation(g, std::vector<std::uint8_t>(g.edge_count(), 1));
}

namespace {

// Topological order, or empty when cyclic.
std::vector<int> topo_order(const Orientation& o) {
    int n = o.order();
    std::vector<int> indeg(n), order;
    order.reserve(n);
    for (int v = 0; v < n; ++v) indeg[v] = std::popcount(o.in(v));
    std::vector<int> stack;
    for (int v = n - 1; v >= 0; --v)
        if (indeg[v] == 0) stack.push_back(v);
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        order.push_back(u);
        std::uint64_t m = o.out(u);
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            if (--indeg[v] == 0) stack.push_back(v);
        }
    }
    if (static_cast<int>(order.size()) != n) order.clear();
    return order;
}

struct Closure {
    std::array<std::uint64_t, kMaxOrder> reach{};  // strict descendants
    std::array<std::uint64_t, kMaxOrder> anc{};    // strict ancestors
};

Closure closure_of(const Orientation& o, const std::vector<int>& topo) {
    Closure c;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int v = *it;
        std::uint64_t m = o.out(v);
        std::uint64_t r = m;
        while (m) {
            int w = std::countr_zero(m);
            m &= m - 1;
            r |= c.reach[w];
        }
        c.reach[v] = r;
    }
    for (int v : topo) {
        std::uint64_t m = o.in(v);
        std::uint64_t a = m;
        while (m) {
            int u = std::countr_zero(m);
            m &= m - 1;
            a |= c.anc[u];
        }
        c.anc[v] = a;
    }
    return c;
}

// A shortcut exists iff some arc x->y and non-adjacent pair (p,q) satisfy
// x => p => q => y (reachability, x = p and q = y allowed). The three closure
// segments concatenate to a simple directed path of length >= 2.
struct ShortcutSeed {
    int x, y, p, q;
};

std::optional<ShortcutSeed> shortcut_seed(const Graph& base, const Closure& c,
                                          const std::vector<std::uint64_t>& out) {
    int n = base.order();
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q || base.adjacent(p, q)) continue;
            if (!((c.reach[p] >> q) & 1)) continue;
            std::uint64_t up = c.anc[p] | bit(p);
            std::uint64_t down = c.reach[q] | bit(q);
            while (up) {
                int x = std::countr_zero(up);
                up &= up - 1;
                std::uint64_t hits = out[x] & down;
                if (hits) return ShortcutSeed{x, std::countr_zero(hits), p, q};
            }
        }
    }
    return std::nullopt;
}

// Deterministic shortest arc path a -> ... -> b (BFS, ascending discovery).
std::vector<int> bfs_path(const Orientation& o, int a, int b) {
    if (a == b) return {a};
    std::array<int, kMaxOrder> parent{};
    parent.fill(-1);
    std::uint64_t seen = bit(a);
    std::vector<int> frontier{a};
    while (!frontier.empty() && parent[b] == -1) {
        std::vector<int> next;
        for (int u : frontier) {
            std::uint64_t m = o.out(u) & ~seen;
            while (m) {
                int v = std::countr_zero(m);
                m &= m - 1;
                seen |= bit(v);
                parent[v] = u;
                next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    std::vector<int> path;
    for (int v = b; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::uint64_t> out_masks(const Orientation& o) {
    std::vector<std::uint64_t> m(o.order());
    for (int v = 0; v < o.order(); ++v) m[v] = o.out(v);
    return m;
}

}  // namespace

bool is_acyclic(const Orientation& o) {
    return o.order() == 0 || !topo_order(o).empty();
}

bool is_transitive(const Orientation& o) {
    if (!is_acyclic(o)) throw std::invalid_argument("is_transitive requires an acyclic orientation");
    for (int u = 0; u < o.order(); ++u) {
        std::uint64_t m = o.out(u);
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            if (o.out(v) & ~o.out(u)) return false;
        }
    }
    return true;
}

std::optional<ShortcutWitness> find_shortcut(const Orientation& o) {
    auto topo = topo_order(o);
    if (o.order() > 0 && topo.empty())
        throw std::invalid_argument("find_shortcut requires an acyclic orientation");
    Closure c = closure_of(o, topo);
    auto seed = shortcut_seed(o.base(), c, out_masks(o));
    if (!seed) return std::nullopt;

    auto seg1 = bfs_path(o, seed->x, seed->p);
    auto seg2 = bfs_path(o, seed->p, seed->q);
    auto seg3 = bfs_path(o, seed->q, seed->y);
    ShortcutWitness w;
    w.path = seg1;
    w.path.insert(w.path.end(), seg2.begin() + 1, seg2.end());
    w.path.insert(w.path.end(), seg3.begin() + 1, seg3.end());
    w.closing_arc = {seed->x, seed->y};
    w.missing_pair = {seed->p, seed->q};
    return w;
}

std::optional<ShortcutWitness> find_shortcut_by_paths(const Orientation& o) {
    auto topo = topo_order(o);
    if (o.order() > 0 && topo.empty())
        throw std::invalid_argument("find_shortcut_by_paths requires an acyclic orientation");
    Closure c = closure_of(o, topo);

    std::optional<ShortcutWitness> found;
    std::vector<int> path;

    auto emit = [&](int a, int b) {
        // First non-adjacent pair of path vertices, scanned lexicographically.
        for (std::size_t i = 0; i + 1 < path.size() && !found; ++i)
            for (std::size_t j = i + 1; j < path.size(); ++j)
                if (!o.base().adjacent(path[i], path[j])) {
                    found = ShortcutWitness{path, {a, b}, {path[i], path[j]}};
                    break;
                }
    };

    auto dfs = [&](auto&& self, int v, int b, std::uint64_t interval, std::uint64_t onpath) -> void {
        if (found) return;
        if (v == b) {
            if (path.size() >= 3) emit(path.front(), b);
            return;
        }
        std::uint64_t m = o.out(v) & interval & ~onpath;
        while (m && !found) {
            int w = std::countr_zero(m);
            m &= m - 1;
            path.push_back(w);
            self(self, w, b, interval, onpath | bit(w));
            path.pop_back();
        }
    };

    for (auto [a, b] : o.arcs()) {
        std::uint64_t interval = (c.reach[a] & c.anc[b]) | bit(a) | bit(b);
        path.assign(1, a);
        dfs(dfs, a, b, interval, bit(a));
        if (found) return found;
    }
    return std::nullopt;
}

bool validate_shortcut_witness(const Orientation& o, const ShortcutWitness& w) {
    if (w.path.size() < 3) return false;
    for (std::size_t i = 0; i + 1 < w.path.size(); ++i)
        if (!o.has_arc(w.path[i], w.path[i + 1])) return false;
    if (w.closing_arc != std::make_pair(w.path.front(), w.path.back())) return false;
    if (!o.has_arc(w.closing_arc.first, w.closing_arc.second)) return false;
    auto pos = [&](int v) {
        auto it = std::find(w.path.begin(), w.path.end(), v);
        return it == w.path.end() ? -1 : static_cast<int>(it - w.path.begin());
    };
    int i = pos(w.missing_pair.first), j = pos(w.missing_pair.second);
    if (i < 0 || j < 0 || i >= j) return false;
    return !o.base().adjacent(w.missing_pair.first, w.missing_pair.second);
}

bool is_semi_transitive(const Orientation& o) {
    auto topo = topo_order(o);
    if (o.order() > 0 && topo.empty()) return false;
    Closure c = closure_of(o, topo);
    return !shortcut_seed(o.base(), c, out_masks(o)).has_value();
}

Orientation bipartite_transitive_orientation(const Graph& g) {
    auto coloring = is_bipartite(g);
    if (!coloring) throw std::invalid_argument("bipartite_transitive_orientation requires a bipartite graph");
    auto edges = g.edges();
    std::vector<std::uint8_t> forward(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        forward[i] = (*coloring)[u] == 0;  // arcs run from side 0 to side 1
    }
    return Orientation(g, forward);
}

// ---------------------------------------------------------------------------
// Semi-transitivity decision search.

namespace {

// Edges ordered so that the dense core's induced subgraphs complete early:
// vertices get positions by reverse min-degree removal, edges sort by their
// later endpoint's position. Ties break lexicographically.
std::vector<std::pair<int, int>> search_edge_order(const Graph& g) {
    int n = g.order();
    std::vector<int> pos(n, 0);
    std::uint64_t alive = n == 64 ? ~std::uint64_t{0} : (bit(n) - 1);
    for (int step = 0; step < n; ++step) {
        int best = -1, best_deg = n + 1;
        for (int v = 0; v < n; ++v) {
            if (!(alive & bit(v))) continue;
            int d = std::popcount(g.neighbors(v) & alive);
            if (d < best_deg) {
                best_deg = d;
                best = v;
            }
        }
        alive &= ~bit(best);
        pos[best] = n - 1 - step;
    }
    auto edges = g.edges();
    std::stable_sort(edges.begin(), edges.end(), [&](auto a, auto b) {
        auto key = [&](std::pair<int, int> e) {
            return std::tuple(std::max(pos[e.first], pos[e.second]),
                              std::min(pos[e.first], pos[e.second]), e.first, e.second);
        };
        return key(a) < key(b);
    });
    return edges;
}

struct DecideSearch {
    const Graph& g;
    int n;
    std::vector<std::pair<int, int>> edge_order;
    std::vector<std::pair<int, int>> nonadj;  // unordered non-adjacent pairs

    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool budget_hit = false;

    // Cooperative cancellation for the parallel top split.
    const std::atomic<int>* cancel = nullptr;
    int my_index = 0;
    bool cancelled = false;

    std::array<std::uint64_t, kMaxOrder> reach{}, anc{}, outm{}, inm{};
    std::vector<std::pair<int, std::uint64_t>> reach_trail, anc_trail;
    std::vector<std::uint8_t> dirs;
    std::optional<std::vector<std::uint8_t>> found;

    explicit DecideSearch(const Graph& graph, std::uint64_t b)
        : g(graph), n(graph.order()), edge_order(search_edge_order(graph)), budget(b),
          dirs(edge_order.size(), 0) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                if (!g.adjacent(p, q)) nonadj.emplace_back(p, q);
        reach_trail.reserve(64);
        anc_trail.reserve(64);
    }

    bool stop() {
        if (nodes >= budget) {
            budget_hit = true;
            return true;
        }
        if (cancel && (nodes & 1023) == 0 &&
            cancel->load(std::memory_order_relaxed) < my_index) {
            cancelled = true;
            return true;
        }
        return false;
    }

    bool arc_between(int p, int q) const {
        std::uint64_t up = anc[p] | bit(p);
        std::uint64_t down = reach[q] | bit(q);
        while (up) {
            int x = std::countr_zero(up);
            up &= up - 1;
            if (outm[x] & down) return true;
        }
        return false;
    }

    bool has_partial_shortcut() const {
        for (auto [p, q] : nonadj) {
            if (((reach[p] >> q) & 1) && arc_between(p, q)) return true;
            if (((reach[q] >> p) & 1) && arc_between(q, p)) return true;
        }
        return false;
    }

    void apply_arc(int x, int y) {
        std::uint64_t add_reach = reach[y] | bit(y);
        std::uint64_t add_anc = anc[x] | bit(x);
        std::uint64_t rows = add_anc;
        while (rows) {
            int w = std::countr_zero(rows);
            rows &= rows - 1;
            if ((reach[w] & add_reach) != add_reach) {
                reach_trail.emplace_back(w, reach[w]);
                reach[w] |= add_reach;
            }
        }
        std::uint64_t cols = add_reach;
        while (cols) {
            int z = std::countr_zero(cols);
            cols &= cols - 1;
            if ((anc[z] & add_anc) != add_anc) {
                anc_trail.emplace_back(z, anc[z]);
                anc[z] |= add_anc;
            }
        }
        outm[x] |= bit(y);
        inm[y] |= bit(x);
    }

    void undo(int x, int y, std::size_t rmark, std::size_t amark) {
        while (reach_trail.size() > rmark) {
            auto [w, old] = reach_trail.back();
            reach_trail.pop_back();
            reach[w] = old;
        }
        while (anc_trail.size() > amark) {
            auto [z, old] = anc_trail.back();
            anc_trail.pop_back();
            anc[z] = old;
        }
        outm[x] &= ~bit(y);
        inm[y] &= ~bit(x);
    }

    // Returns true when applying x->y keeps the partial orientation free of
    // cycles and completed shortcuts. Counts one node expansion either way.
    bool try_arc(int x, int y, std::size_t& rmark, std::size_t& amark) {
        ++nodes;
        if ((reach[y] >> x) & 1) return false;  // would close a directed cycle
        rmark = reach_trail.size();
        amark = anc_trail.size();
        apply_arc(x, y);
        if (has_partial_shortcut()) {
            undo(x, y, rmark, amark);
            return false;
        }
        return true;
    }

    bool dfs(std::size_t depth) {
        if (depth == edge_order.size()) {
            found = dirs;
            return true;
        }
        auto [u, v] = edge_order[depth];
        for (int dir = 1; dir >= 0; --dir) {  // low->high first: the first leaf is the natural orientation
            if (stop()) return false;
            int x = dir ? u : v;
            int y = dir ? v : u;
            std::size_t rmark, amark;
            if (!try_arc(x, y, rmark, amark)) continue;
            dirs[depth] = static_cast<std::uint8_t>(dir);
            if (dfs(depth + 1)) return true;
            undo(x, y, rmark, amark);
            if (budget_hit || cancelled) return false;
        }
        return false;
    }
};

Orientation orientation_from_search(const Graph& g, const std::vector<std::pair<int, int>>& order,
                                    const std::vector<std::uint8_t>& dirs) {
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [u, v] = order[i];
        arcs.emplace_back(dirs[i] ? u : v, dirs[i] ? v : u);
    }
    return Orientation::from_arcs(g, arcs);
}

StVerdict verified_semi_transitive(Orientation witness, std::uint64_t spent) {
    if (!is_semi_transitive(witness))
        throw std::logic_error("decision search produced an invalid semi-transitive witness");
    StVerdict v;
    v.status = StStatus::semi_transitive;
    v.witness = std::move(witness);
    v.budget_spent = spent;
    return v;
}

}  // namespace

StVerdict decide_semi_transitive(const Graph& g, std::uint64_t budget) {
    DecideSearch s(g, budget);
    s.dfs(0);
    StVerdict v;
    if (s.found) return verified_semi_transitive(orientation_from_search(g, s.edge_order, *s.found), s.nodes);
    if (!s.budget_hit) {
        v.status = StStatus::not_semi_transitive;
        v.evidence = "exhausted";
    }
    v.budget_spent = s.nodes;
    return v;
}

StVerdict decide_semi_transitive_parallel(const Graph& g, std::uint64_t budget, int threads) {
    std::size_t edge_count = g.edge_count();
    int split = static_cast<int>(std::min<std::size_t>(6, edge_count));
    int parts = 1 << split;
    std::uint64_t part_budget = std::max<std::uint64_t>(1, budget / parts);

    enum class Part { found, exhausted, out_of_budget, skipped };
    std::vector<Part> status(parts, Part::skipped);
    std::vector<std::uint64_t> spent(parts, 0);
    std::vector<std::vector<std::uint8_t>> wins(parts);
    std::atomic<int> best_found{parts};

#ifdef _OPENMP
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
#endif

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
#endif
    for (int idx = 0; idx < parts; ++idx) {
        if (best_found.load(std::memory_order_relaxed) < idx) continue;
        DecideSearch s(g, part_budget);
        s.cancel = &best_found;
        s.my_index = idx;

        // Fix the first `split` edges from the partition index; bit 0 of the
        // prefix is the deepest edge so ascending indices match DFS order.
        bool dead = false;
        for (int i = 0; i < split && !dead; ++i) {
            int dir = 1 - ((idx >> (split - 1 - i)) & 1);
            auto [u, v] = s.edge_order[i];
            int x = dir ? u : v;
            int y = dir ? v : u;
            std::size_t rmark, amark;
            if (!s.try_arc(x, y, rmark, amark)) {
                dead = true;
            } else {
                s.dirs[i] = static_cast<std::uint8_t>(dir);
            }
        }
        if (!dead) s.dfs(static_cast<std::size_t>(split));
        spent[idx] = s.nodes;
        if (s.found) {
            status[idx] = Part::found;
            wins[idx] = *s.found;
            int cur = best_found.load(std::memory_order_relaxed);
            while (idx < cur && !best_found.compare_exchange_weak(cur, idx)) {
            }
        } else if (s.cancelled) {
            status[idx] = Part::skipped;
        } else if (s.budget_hit) {
            status[idx] = Part::out_of_budget;
        } else {
            status[idx] = Part::exhausted;
        }
    }

    int winner = best_found.load();
    if (winner < parts) {
        return verified_semi_transitive(
            orientation_from_search(g, search_edge_order(g), wins[winner]), spent[winner]);
    }
    StVerdict v;
    v.budget_spent = std::accumulate(spent.begin(), spent.end(), std::uint64_t{0});
    bool all_exhausted = std::all_of(status.begin(), status.end(),
                                     [](Part p) { return p == Part::exhausted; });
    if (all_exhausted) {
        v.status = StStatus::not_semi_transitive;
        v.evidence = "exhausted";
    }
    return v;
}

StVerdict decide_semi_transitive_brute(const Graph& g) {
    auto edges = g.edges();
    if (edges.size() > 24)
        throw std::invalid_argument("decide_semi_transitive_brute is capped at 24 edges");
    std::uint64_t total = std::uint64_t{1} << edges.size();
    std::vector<std::uint8_t> forward(edges.size());
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t i = 0; i < edges.size(); ++i) forward[i] = (mask >> i) & 1;
        Orientation o(g, forward);
        if (is_semi_transitive(o)) {
            StVerdict v;
            v.status = StStatus::semi_transitive;
            v.witness = std::move(o);
            v.budget_spent = mask + 1;
            return v;
        }
    }
    StVerdict v;
    v.status = StStatus::not_semi_transitive;
    v.evidence = "exhausted";
    v.budget_spent = total;
    return v;
}

std::optional<W5Witness> find_w5_obstruction(const CirculantSpec& spec) {
    spec.validate();
    int t = spec.steps.front();
    for (std::size_t i = 0; i < spec.steps.size(); ++i)
        if (spec.steps[i] != t + static_cast<int>(i))
            throw std::invalid_argument("find_w5_obstruction requires R = {t, t+1, ..., 2t}");
    if (spec.steps.back() != 2 * t)
        throw std::invalid_argument("find_w5_obstruction requires R = {t, t+1, ..., 2t}");

    std::vector<int> set = {0, t - 1, t, 2 * t - 1, 2 * t + 1, spec.n - t};
    std::uint64_t seen = 0;
    for (int v : set) {
        if (v < 0 || v >= spec.n || (seen & bit(v))) return std::nullopt;
        seen |= bit(v);
    }
    Graph sub = induced_subgraph(build_circulant(spec), set);
    auto iso = is_isomorphic_small(sub, wheel(5));
    if (!iso) return std::nullopt;
    return W5Witness{std::move(set), std::move(*iso)};
}

namespace {

void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(k);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n - (k - depth); ++v) {
            cur[depth] = v;
            self(self, v + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

std::optional<ObstructionScanResult> obstruction_scan(const Graph& g, int max_order,
                                                      std::uint64_t budget, int threads) {
    if (max_order > 8) throw std::invalid_argument("obstruction_scan is capped at max_order 8");
#ifdef _OPENMP
    int nthreads = threads > 0 ? threads : omp_get_max_threads();
#else
    (void)threads;
#endif
    for (int size = 2; size <= std::min(max_order, g.order()); ++size) {
        std::vector<std::vector<int>> subsets;
        subsets_of_size(g.order(), size, subsets);
        constexpr std::size_t kChunk = 64;
        for (std::size_t base = 0; base < subsets.size(); base += kChunk) {
            std::size_t end = std::min(base + kChunk, subsets.size());
            std::vector<std::optional<StVerdict>> verdicts(end - base);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
#endif
            for (std::size_t i = base; i < end; ++i) {
                StVerdict v = decide_semi_transitive(induced_subgraph(g, subsets[i]), budget);
                if (v.status == StStatus::not_semi_transitive) verdicts[i - base] = std::move(v);
            }
            for (std::size_t i = base; i < end; ++i)
                if (verdicts[i - base])
                    return ObstructionScanResult{subsets[i], std::move(*verdicts[i - base])};
        }
    }
    return std::nullopt;
}

}  // namespace wrc
