#pragma once

#include <json.hpp>

#include "wrcirc/graph.hpp"
#include "wrcirc/orient.hpp"
#include "wrcirc/words.hpp"

namespace wrc {

// Canonical JSON forms. nlohmann::json keeps object keys sorted, so dump()
// output is deterministic.

nlohmann::json graph_to_json(const Graph& g);           // {"edges":[[i,j],...],"order":n}
Graph graph_from_json(const nlohmann::json& j);

nlohmann::json orientation_to_json(const Orientation& o);  // {"arcs":[[u,v],...],"order":n}
Orientation orientation_from_json(const nlohmann::json& j);
std::string orientation_to_dot(const Orientation& o);

nlohmann::json shortcut_to_json(const ShortcutWitness& w);
nlohmann::json verdict_to_json(const StVerdict& v);

nlohmann::json w5_witness_to_json(const W5Witness& w);
nlohmann::json product_iso_to_json(const ProductIsoRecord& r);

nlohmann::json certificate_to_json(const RefuteCertificate& c);
nlohmann::json bracket_to_json(const RepnBracket& b);
nlohmann::json search_outcome_to_json(const WordSearchOutcome& o);

}  // namespace wrc
