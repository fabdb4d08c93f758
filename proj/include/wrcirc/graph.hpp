#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wrc {

// Vertices are dense integers 0..order-1; adjacency is kept as 64-bit masks,
// which caps graph order at 64 (plenty for a toolkit that sweeps n <= 60).
inline constexpr int kMaxOrder = 64;

class Graph {
public:
    Graph() = default;
    explicit Graph(int order);
    static Graph from_edges(int order, const std::vector<std::pair<int, int>>& edges);

    int order() const { return order_; }
    void add_edge(int u, int v);
    bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1; }
    std::uint64_t neighbors(int v) const { return adj_[v]; }
    int degree(int v) const;
    std::size_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const;  // sorted, u < v

    bool operator==(const Graph&) const = default;

private:
    void check_vertex(int v) const;

    int order_ = 0;
    std::vector<std::uint64_t> adj_;
};

// The pair (n, R) defining a circulant graph C(n; a1,...,ak),
// 0 < a1 < a2 < ... < ak with 2*ak <= n (i.e. ak < (n+1)/2).
struct CirculantSpec {
    int n = 0;
    std::vector<int> steps;

    void validate() const;          // throws std::invalid_argument
    std::string to_string() const;  // "C(n;a1,a2,...,ak)", no spaces
    static CirculantSpec parse(std::string_view text);

    bool operator==(const CirculantSpec&) const = default;
};

Graph build_circulant(const CirculantSpec& spec);

// gcd(n, a1, ..., ak) == 1; agrees with traversal connectivity of the built graph.
bool is_connected_spec(const CirculantSpec& spec);
bool is_connected(const Graph& g);

// Proper 2-coloring if one exists. Color 0 is assigned to the least vertex of
// each component, so the coloring is deterministic.
std::optional<std::vector<int>> is_bipartite(const Graph& g);

// Graph on |vs| vertices relabeled 0..|vs|-1 in list order.
Graph induced_subgraph(const Graph& g, const std::vector<int>& vs);

// Edge-preserving bijection a -> b, or nullopt. Backtracking on
// degree-partitioned candidates; both orders must be <= 12.
std::optional<std::vector<int>> is_isomorphic_small(const Graph& a, const Graph& b);

Graph wheel(int m);   // cycle C_m plus universal hub (hub = vertex m)
Graph prism(int n);   // P2 x C_n on 2n vertices
Graph mobius(int n);  // Moebius ladder C(2n; {1, n})

// P2 x g; vertex (p, v) maps to p*order + v.
Graph p2_product(const Graph& g);

struct ProductIsoRecord {
    CirculantSpec rhs;         // C(2(2n+1); normalized 2dR and {2n+1})
    bool isomorphic = false;
    std::string method;        // "residue-map" | "search" | "none"
    std::vector<int> mapping;  // rhs vertex -> product vertex (empty if none)
};

// Checks P2 x C(2n+1; R) against C(2(2n+1); 2dR u {2n+1}). Tries the
// CRT-style residue map first, falls back to is_isomorphic_small when the
// order permits; never asserts beyond what was checked.
ProductIsoRecord verify_p2_product_iso(int n, const std::vector<int>& steps, int d);

std::string to_dot(const Graph& g);

}  // namespace wrc
