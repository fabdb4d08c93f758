#include "wrcirc/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace wrc {

namespace {

constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

}  // namespace

Graph::Graph(int order) : order_(order), adj_(order, 0) {
    if (order < 0 || order > kMaxOrder)
        throw std::invalid_argument("graph order must be in [0, 64], got " + std::to_string(order));
}

Graph Graph::from_edges(int order, const std::vector<std::pair<int, int>>& edges) {
    Graph g(order);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= order_)
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range [0, " +
                                    std::to_string(order_) + ")");
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
}

int Graph::degree(int v) const {
    check_vertex(v);
    return std::popcount(adj_[v]);
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (int v = 0; v < order_; ++v) twice += std::popcount(adj_[v]);
    return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int u = 0; u < order_; ++u)
        for (int v = u + 1; v < order_; ++v)
            if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
}

void CirculantSpec::validate() const {
    if (n < 2) throw std::invalid_argument("circulant order must be >= 2, got " + std::to_string(n));
    if (n > kMaxOrder) throw std::invalid_argument("circulant order exceeds the toolkit cap of 64");
    if (steps.empty()) throw std::invalid_argument("connection set must be nonempty");
    int prev = 0;
    for (int a : steps) {
        if (a <= prev)
            throw std::invalid_argument("connection set must be strictly increasing and positive: " +
                                        to_string());
        prev = a;
    }
    // ak < (n+1)/2, i.e. 2*ak <= n. For even n this admits ak = n/2, whose
    // class contributes a single antipodal edge per vertex.
    if (2 * steps.back() > n)
        throw std::invalid_argument("largest connection value must satisfy a_k < (n+1)/2: " + to_string());
}

std::string CirculantSpec::to_string() const {
    std::ostringstream os;
    os << "C(" << n << ';';
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) os << ',';
        os << steps[i];
    }
    os << ')';
    return os.str();
}

CirculantSpec CirculantSpec::parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("malformed circulant spec: '" + std::string(text) + "'"); };
    if (text.size() < 6 || text.substr(0, 2) != "C(" || text.back() != ')') fail();
    std::string_view body = text.substr(2, text.size() - 3);
    auto semi = body.find(';');
    if (semi == std::string_view::npos) fail();

    auto parse_int = [&](std::string_view s) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || ptr != s.data() + s.size()) fail();
        return value;
    };

    CirculantSpec spec;
    spec.n = parse_int(body.substr(0, semi));
    std::string_view rest = body.substr(semi + 1);
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view tok = rest.substr(0, comma);
        if (tok.empty()) fail();
        spec.steps.push_back(parse_int(tok));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
        if (rest.empty()) fail();
    }
    if (spec.steps.empty()) fail();
    spec.validate();
    return spec;
}

Graph build_circulant(const CirculantSpec& spec) {
    spec.validate();
    std::vector<bool> in_set(spec.n, false);
    for (int a : spec.steps) in_set[a] = true;
    Graph g(spec.n);
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j) {
            int d = j - i;
            if (in_set[d] || in_set[spec.n - d]) g.add_edge(i, j);
        }
    return g;
}

bool is_connected_spec(const CirculantSpec& spec) {
    spec.validate();
    int g = spec.n;
    for (int a : spec.steps) g = std::gcd(g, a);
    return g == 1;
}

bool is_connected(const Graph& g) {
    if (g.order() <= 1) return true;
    std::uint64_t seen = bit(0);
    std::uint64_t frontier = bit(0);
    while (frontier) {
        std::uint64_t next = 0;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= g.neighbors(v) & ~seen;
        }
        seen |= next;
        frontier = next;
    }
    return std::popcount(seen) == g.order();
}

std::optional<std::vector<int>> is_bipartite(const Graph& g) {
    std::vector<int> color(g.order(), -1);
    for (int start = 0; start < g.order(); ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            std::uint64_t nb = g.neighbors(u);
            while (nb) {
                int v = std::countr_zero(nb);
                nb &= nb - 1;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vs) {
    std::uint64_t seen = 0;
    for (int v : vs) {
        if (v < 0 || v >= g.order())
            throw std::invalid_argument("induced_subgraph: vertex " + std::to_string(v) + " out of range");
        if (seen & bit(v))
            throw std::invalid_argument("induced_subgraph: duplicate vertex " + std::to_string(v));
        seen |= bit(v);
    }
    Graph sub(static_cast<int>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (g.adjacent(vs[i], vs[j])) sub.add_edge(static_cast<int>(i), static_cast<int>(j));
    return sub;
}

namespace {

bool iso_extend(const Graph& a, const Graph& b, std::vector<int>& map, std::uint64_t& used, int depth) {
    int n = a.order();
    if (depth == n) return true;
    int u = depth;
    for (int v = 0; v < n; ++v) {
        if (used & bit(v)) continue;
        if (a.degree(u) != b.degree(v)) continue;
        bool ok = true;
        for (int w = 0; w < depth; ++w) {
            if (a.adjacent(u, w) != b.adjacent(v, map[w])) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        map[u] = v;
        used |= bit(v);
        if (iso_extend(a, b, map, used, depth + 1)) return true;
        used &= ~bit(v);
        map[u] = -1;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> is_isomorphic_small(const Graph& a, const Graph& b) {
    if (a.order() > 12 || b.order() > 12)
        throw std::invalid_argument("is_isomorphic_small: order exceeds the search limit of 12");
    if (a.order() != b.order() || a.edge_count() != b.edge_count()) return std::nullopt;
    auto deg_seq = [](const Graph& g) {
        std::vector<int> d(g.order());
        for (int v = 0; v < g.order(); ++v) d[v] = g.degree(v);
        std::sort(d.begin(), d.end());
        return d;
    };
    if (deg_seq(a) != deg_seq(b)) return std::nullopt;

    std::vector<int> map(a.order(), -1);
    std::uint64_t used = 0;
    if (!iso_extend(a, b, map, used, 0)) return std::nullopt;

    // The map is checked edge-preserving in both directions before return.
    for (int u = 0; u < a.order(); ++u)
        for (int v = u + 1; v < a.order(); ++v)
            if (a.adjacent(u, v) != b.adjacent(map[u], map[v]))
                throw std::logic_error("is_isomorphic_small produced a non-preserving map");
    return map;
}

Graph wheel(int m) {
    if (m < 3) throw std::invalid_argument("wheel requires m >= 3");
    Graph g(m + 1);
    for (int i = 0; i < m; ++i) {
        g.add_edge(i, (i + 1) % m);
        g.add_edge(i, m);
    }
    return g;
}

Graph prism(int n) {
    if (n < 3) throw std::invalid_argument("prism requires n >= 3");
    Graph g(2 * n);
    for (int i = 0; i < n; ++i) {
        g.add_edge(i, (i + 1) % n);
        g.add_edge(n + i, n + (i + 1) % n);
        g.add_edge(i, n + i);
    }
    return g;
}

Graph mobius(int n) {
    if (n < 3) throw std::invalid_argument("mobius requires n >= 3");
    return build_circulant({2 * n, {1, n}});
}

Graph p2_product(const Graph& g) {
    int n = g.order();
    if (2 * n > kMaxOrder) throw std::invalid_argument("p2_product: result exceeds the order cap");
    Graph p(2 * n);
    for (auto [u, v] : g.edges()) {
        p.add_edge(u, v);
        p.add_edge(n + u, n + v);
    }
    for (int v = 0; v < n; ++v) p.add_edge(v, n + v);
    return p;
}

namespace {

int mod_inverse(int a, int m) {
    int t = 0, new_t = 1;
    int r = m, new_r = a % m;
    while (new_r != 0) {
        int q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return ((t % m) + m) % m;
}

}  // namespace

ProductIsoRecord verify_p2_product_iso(int n, const std::vector<int>& steps, int d) {
    if (n < 1) throw std::invalid_argument("verify_p2_product_iso requires n >= 1");
    int m = 2 * n + 1;
    CirculantSpec lhs_spec{m, steps};
    lhs_spec.validate();
    if (d < 1 || std::gcd(2 * m, d) != 1)
        throw std::invalid_argument("verify_p2_product_iso requires gcd(2(2n+1), d) = 1");

    int N = 2 * m;
    std::vector<int> rhs_steps;
    for (int a : steps) {
        int v = static_cast<int>((2LL * d * a) % N);
        rhs_steps.push_back(std::min(v, N - v));
    }
    rhs_steps.push_back(m);
    std::sort(rhs_steps.begin(), rhs_steps.end());
    CirculantSpec rhs_spec{N, rhs_steps};
    rhs_spec.validate();

    Graph product = p2_product(build_circulant(lhs_spec));
    Graph rhs = build_circulant(rhs_spec);

    ProductIsoRecord rec;
    rec.rhs = rhs_spec;

    // Residue map j -> (j mod 2, c j mod m) with c = (2d)^{-1} mod m sends
    // the 2da-difference class onto the +-a class and the m-class onto the
    // rung class.
    int c = mod_inverse((2 * d) % m, m);
    std::vector<int> mapping(N);
    for (int j = 0; j < N; ++j)
        mapping[j] = (j % 2) * m + static_cast<int>((static_cast<long long>(c) * j) % m);

    bool ok = product.edge_count() == rhs.edge_count();
    std::uint64_t hit = 0;
    for (int j = 0; ok && j < N; ++j) {
        if (hit & bit(mapping[j])) ok = false;
        hit |= bit(mapping[j]);
    }
    if (ok)
        for (auto [u, v] : rhs.edges())
            if (!product.adjacent(mapping[u], mapping[v])) {
                ok = false;
                break;
            }
    if (ok) {
        rec.isomorphic = true;
        rec.method = "residue-map";
        rec.mapping = std::move(mapping);
        return rec;
    }

    if (N <= 12) {
        if (auto found = is_isomorphic_small(rhs, product)) {
            rec.isomorphic = true;
            rec.method = "search";
            rec.mapping = *found;
            return rec;
        }
    }
    rec.isomorphic = false;
    rec.method = "none";
    return rec;
}

std::string to_dot(const Graph& g) {
    std::ostringstream os;
    os << "graph {\n";
    std::uint64_t touched = 0;
    for (auto [u, v] : g.edges()) {
        os << "  " << u << " -- " << v << ";\n";
        touched |= bit(u) | bit(v);
    }
    for (int v = 0; v < g.order(); ++v)
        if (!(touched & bit(v))) os << "  " << v << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace wrc
