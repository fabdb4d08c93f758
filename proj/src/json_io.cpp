#include "wrcirc/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace wrc {

using nlohmann::json;

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return json{{"edges", edges}, {"order", g.order()}};
}

Graph graph_from_json(const json& j) {
    if (!j.contains("order") || !j.contains("edges"))
        throw std::invalid_argument("graph JSON requires 'order' and 'edges'");
    Graph g(j.at("order").get<int>());
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    return g;
}

json orientation_to_json(const Orientation& o) {
    json arcs = json::array();
    for (auto [u, v] : o.arcs()) arcs.push_back({u, v});
    return json{{"arcs", arcs}, {"order", o.order()}};
}

Orientation orientation_from_json(const json& j) {
    if (!j.contains("order") || !j.contains("arcs"))
        throw std::invalid_argument("orientation JSON requires 'order' and 'arcs'");
    Graph base(j.at("order").get<int>());
    std::vector<std::pair<int, int>> arcs;
    for (const auto& a : j.at("arcs")) {
        arcs.emplace_back(a.at(0).get<int>(), a.at(1).get<int>());
        base.add_edge(arcs.back().first, arcs.back().second);
    }
    return Orientation::from_arcs(base, arcs);
}

std::string orientation_to_dot(const Orientation& o) {
    std::ostringstream os;
    os << "digraph {\n";
    std::uint64_t touched = 0;
    for (auto [u, v] : o.arcs()) {
        os << "  " << u << " -> " << v << ";\n";
        touched |= (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
    }
    for (int v = 0; v < o.order(); ++v)
        if (!((touched >> v) & 1)) os << "  " << v << ";\n";
    os << "}\n";
    return os.str();
}

json shortcut_to_json(const ShortcutWitness& w) {
    return json{{"closing_arc", {w.closing_arc.first, w.closing_arc.second}},
                {"missing_pair", {w.missing_pair.first, w.missing_pair.second}},
                {"path", w.path}};
}

json verdict_to_json(const StVerdict& v) {
    json j;
    switch (v.status) {
        case StStatus::semi_transitive: j["verdict"] = "semi-transitive"; break;
        case StStatus::not_semi_transitive: j["verdict"] = "not-semi-transitive"; break;
        case StStatus::unknown: j["verdict"] = "unknown"; break;
    }
    j["budget_spent"] = v.budget_spent;
    j["evidence"] = v.evidence.empty() ? json() : json(v.evidence);
    j["witness"] = v.witness ? orientation_to_json(*v.witness) : json();
    if (v.obstruction) {
        j["obstruction"] = json{{"vertices", v.obstruction->vertices},
                                {"nodes_expanded", v.obstruction->nodes_expanded}};
    } else {
        j["obstruction"] = json();
    }
    return j;
}

json w5_witness_to_json(const W5Witness& w) {
    return json{{"iso_to_w5", w.iso_to_w5}, {"vertices", w.vertices}};
}

json product_iso_to_json(const ProductIsoRecord& r) {
    return json{{"isomorphic", r.isomorphic},
                {"mapping", r.mapping},
                {"method", r.method},
                {"rhs", r.rhs.to_string()}};
}

json certificate_to_json(const RefuteCertificate& c) {
    return json{{"k", c.k},
                {"nodes_explored", c.nodes_explored},
                {"pruning", c.pruning_rules},
                {"status", c.status},
                {"witness", c.witness ? json(word_to_string(*c.witness)) : json()}};
}

json bracket_to_json(const RepnBracket& b) {
    json attempts = json::array();
    for (const auto& a : b.attempts)
        attempts.push_back({{"k", a.k}, {"nodes", a.nodes}, {"status", a.status}});
    return json{{"attempts", attempts},
                {"lower", b.lower},
                {"lower_certified", b.lower_certified},
                {"nodes_explored", b.nodes_explored},
                {"upper", b.upper ? json(*b.upper) : json()},
                {"witness", b.witness ? json(word_to_string(*b.witness)) : json()}};
}

json search_outcome_to_json(const WordSearchOutcome& o) {
    return json{{"exhausted", o.exhausted},
                {"nodes", o.nodes},
                {"pruning", o.pruning_rules},
                {"word", o.word ? json(word_to_string(*o.word)) : json()}};
}

}  // namespace wrc
