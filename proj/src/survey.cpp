#include "wrcirc/survey.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "wrcirc/json_io.hpp"
#include "wrcirc/orient.hpp"
#include "wrcirc/words.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wrc {

using nlohmann::json;

std::string family_name(Family f) {
    switch (f) {
        case Family::a1_quarter: return "a1-quarter";
        case Family::consecutive_to_half: return "consecutive-to-half";
        case Family::t_to_2t: return "t-to-2t";
        case Family::consecutive_1_to_k: return "consecutive-1-to-k";
        case Family::three_regular: return "three-regular";
        case Family::bipartite_odd: return "bipartite-odd";
        case Family::product_iso: return "product-iso";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : {Family::a1_quarter, Family::consecutive_to_half, Family::t_to_2t,
                     Family::consecutive_1_to_k, Family::three_regular, Family::bipartite_odd,
                     Family::product_iso})
        if (family_name(f) == name) return f;
    return std::nullopt;
}

void SweepSpec::validate() const {
    if (n_lo < 2 || n_hi < n_lo) throw std::invalid_argument("sweep range must satisfy 2 <= n_lo <= n_hi");
    if (n_hi > kMaxOrder) throw std::invalid_argument("sweep range exceeds the order cap of 64");
    if (budget == 0) throw std::invalid_argument("sweep budget must be positive");
}

namespace {

struct Instance {
    std::string key;
    std::function<json()> run;  // produces the canonical record body (no key/family/schema)
};

json pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

// Subsets of `values` in ascending bitmask order (deterministic).
void for_each_subset(const std::vector<int>& values, const std::function<void(std::vector<int>)>& fn) {
    for (std::uint32_t mask = 1; mask < (1u << values.size()); ++mask) {
        std::vector<int> subset;
        for (std::size_t i = 0; i < values.size(); ++i)
            if ((mask >> i) & 1) subset.push_back(values[i]);
        fn(std::move(subset));
    }
}

json check_natural_semi_transitive(const CirculantSpec& spec) {
    Graph g = build_circulant(spec);
    Orientation o = natural_orientation(g);
    auto shortcut = find_shortcut(o);
    json rec;
    rec["spec"] = spec.to_string();
    rec["check"] = "natural-orientation-semi-transitive";
    rec["verdict"] = pass_fail(!shortcut);
    rec["nodes"] = 0;
    rec["witness"] = shortcut ? json{{"shortcut", shortcut_to_json(*shortcut)}}
                              : json{{"orientation", "natural"}};
    return rec;
}

std::vector<Instance> gen_a1_quarter(const SweepSpec& s) {
    std::vector<Instance> out;
    for (int n = s.n_lo; n <= s.n_hi; ++n) {
        int amin = (n + 4) / 4;  // ceil((n+1)/4)
        std::vector<int> window;
        for (int a = amin; 2 * a <= n; ++a) window.push_back(a);
        for_each_subset(window, [&](std::vector<int> steps) {
            CirculantSpec spec{n, std::move(steps)};
            out.push_back({family_name(Family::a1_quarter) + "|" + spec.to_string(),
                           [spec] { return check_natural_semi_transitive(spec); }});
        });
    }
    return out;
}

std::vector<Instance> gen_consecutive_to_half(const SweepSpec& s) {
    std::vector<Instance> out;
    for (int n = s.n_lo; n <= s.n_hi; ++n) {
        for (int t = 1; t <= n / 2; ++t) {
            std::vector<int> steps;
            for (int a = t; a <= n / 2; ++a) steps.push_back(a);
            CirculantSpec spec{n, std::move(steps)};
            out.push_back({family_name(Family::consecutive_to_half) + "|" + spec.to_string(),
                           [spec] { return check_natural_semi_transitive(spec); }});
        }
    }
    return out;
}

std::vector<Instance> gen_t_to_2t(const SweepSpec& s) {
    std::vector<Instance> out;
    for (int n = s.n_lo; n <= s.n_hi; ++n) {
        for (int t = 3; 4 * t <= n - 1; ++t) {
            if (5 * t < n + 1) continue;  // below the range the witness set targets
            std::vector<int> steps;
            for (int a = t; a <= 2 * t; ++a) steps.push_back(a);
            CirculantSpec spec{n, std::move(steps)};
            out.push_back({family_name(Family::t_to_2t) + "|" + spec.to_string(), [spec, t] {
                               json rec;
                               rec["spec"] = spec.to_string();
                               rec["check"] = "w5-witness-certified";
                               Graph g = build_circulant(spec);
                               auto witness = find_w5_obstruction(spec);
                               if (witness) {
                                   Graph sub = induced_subgraph(g, witness->vertices);
                                   StVerdict cert = decide_semi_transitive_brute(sub);
                                   json wj = w5_witness_to_json(*witness);
                                   wj["w5_orientations_checked"] = cert.budget_spent;
                                   rec["nodes"] = cert.budget_spent;
                                   rec["verdict"] =
                                       pass_fail(cert.status == StStatus::not_semi_transitive);
                                   rec["witness"] = wj;
                               } else {
                                   // Counterexample row: the fixed set does not induce W5.
                                   // Record what a verifier can recompute.
                                   std::vector<int> set = {0, t - 1, t, 2 * t - 1, 2 * t + 1,
                                                           spec.n - t};
                                   rec["nodes"] = 0;
                                   rec["verdict"] = "FAIL";
                                   rec["witness"] =
                                       json{{"witness_set", set},
                                            {"witness_set_edges",
                                             induced_subgraph(g, set).edge_count()},
                                            {"natural_orientation_semi_transitive",
                                             is_semi_transitive(natural_orientation(g))}};
                               }
                               return rec;
                           }});
        }
    }
    return out;
}

std::vector<Instance> gen_consecutive_1_to_k(const SweepSpec& s) {
    std::vector<Instance> out;
    for (int n = std::max(s.n_lo, 3); n <= s.n_hi; ++n) {
        for (int k = 1; 2 * k < n; ++k) {
            std::vector<int> steps;
            for (int a = 1; a <= k; ++a) steps.push_back(a);
            CirculantSpec spec{n, std::move(steps)};
            out.push_back({family_name(Family::consecutive_1_to_k) + "|" + spec.to_string(), [spec] {
                               json rec;
                               rec["spec"] = spec.to_string();
                               rec["check"] = "h-word-2-uniform-represents";
                               Word w = construct_word_consecutive(spec);
                               bool ok = is_k_uniform(w) == 2 && represents(w, build_circulant(spec));
                               rec["verdict"] = pass_fail(ok);
                               rec["nodes"] = 0;
                               rec["witness"] = json{{"word", word_to_string(w)}};
                               return rec;
                           }});
        }
    }
    return out;
}

std::vector<Instance> gen_three_regular(const SweepSpec& s) {
    std::vector<Instance> out;
    for (int N = s.n_lo + (s.n_lo % 2); N <= s.n_hi; N += 2) {
        if (N < 4) continue;
        int half = N / 2;
        for (int a = 1; a < half; ++a) {
            if (std::gcd(a, N) != 1) continue;
            CirculantSpec spec{N, {a, half}};
            out.push_back({family_name(Family::three_regular) + "|" + spec.to_string(), [spec] {
                               json rec;
                               rec["spec"] = spec.to_string();
                               rec["check"] = "h-word-3-uniform-represents";
                               Word w = construct_word_3reg(spec);
                               bool ok = is_k_uniform(w) == 3 && represents(w, build_circulant(spec));
                               rec["verdict"] = pass_fail(ok);
                               rec["nodes"] = 0;
                               rec["witness"] = json{{"word", word_to_string(w)}};
                               return rec;
                           }});
        }
    }
    return out;
}

std::vector<Instance> gen_bipartite_odd(const SweepSpec& s) {
    std::vector<Instance> out;
    for (int n = s.n_lo + (s.n_lo % 2); n <= s.n_hi; n += 2) {
        std::vector<int> odds;
        for (int a = 1; 2 * a <= n; a += 2) odds.push_back(a);
        for_each_subset(odds, [&](std::vector<int> steps) {
            CirculantSpec spec{n, std::move(steps)};
            out.push_back({family_name(Family::bipartite_odd) + "|" + spec.to_string(), [spec] {
                               json rec;
                               rec["spec"] = spec.to_string();
                               rec["check"] = "bipartite-orientation-transitive";
                               Graph g = build_circulant(spec);
                               Orientation o = bipartite_transitive_orientation(g);
                               bool ok = is_transitive(o) && is_semi_transitive(o);
                               rec["verdict"] = pass_fail(ok);
                               rec["nodes"] = 0;
                               rec["witness"] = json{{"orientation", "bipartition"}};
                               return rec;
                           }});
        });
    }
    return out;
}

std::vector<Instance> gen_product_iso(const SweepSpec& s) {
    std::vector<Instance> out;
    for (int m = s.n_lo + (s.n_lo % 2 == 0 ? 1 : 0); m <= s.n_hi; m += 2) {
        if (m < 3 || 2 * m > kMaxOrder) continue;
        std::vector<int> window;
        for (int a = 1; 2 * a < m; ++a) window.push_back(a);
        for_each_subset(window, [&](std::vector<int> steps) {
            for (int d : {1, 3}) {
                if (std::gcd(2 * m, d) != 1) continue;
                CirculantSpec spec{m, steps};
                std::string key = family_name(Family::product_iso) + "|" + spec.to_string() +
                                  "|d=" + std::to_string(d);
                out.push_back({key, [spec, d, m] {
                                   json rec;
                                   rec["spec"] = spec.to_string();
                                   rec["check"] = "p2-product-isomorphism";
                                   rec["params"] = json{{"d", d}};
                                   ProductIsoRecord r =
                                       verify_p2_product_iso((m - 1) / 2, spec.steps, d);
                                   rec["verdict"] = pass_fail(r.isomorphic);
                                   rec["nodes"] = 0;
                                   rec["witness"] = product_iso_to_json(r);
                                   return rec;
                               }});
            }
        });
    }
    return out;
}

std::vector<Instance> generate_instances(const SweepSpec& s) {
    switch (s.family) {
        case Family::a1_quarter: return gen_a1_quarter(s);
        case Family::consecutive_to_half: return gen_consecutive_to_half(s);
        case Family::t_to_2t: return gen_t_to_2t(s);
        case Family::consecutive_1_to_k: return gen_consecutive_1_to_k(s);
        case Family::three_regular: return gen_three_regular(s);
        case Family::bipartite_odd: return gen_bipartite_odd(s);
        case Family::product_iso: return gen_product_iso(s);
    }
    throw std::logic_error("unknown sweep family");
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec, const std::string& out_path, bool resume) {
    spec.validate();
    std::vector<Instance> instances = generate_instances(spec);

    std::set<std::string> done;
    std::vector<json> existing;
    bool already_complete = false;
    if (resume && !out_path.empty()) {
        std::ifstream in(out_path, std::ios::binary);
        std::string content;
        if (in) content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        in.close();
        // Only newline-terminated lines count; an interruption mid-write
        // leaves a partial trailing line, which is dropped and truncated away
        // so its instance gets recomputed.
        std::size_t keep = content.find_last_of('\n');
        keep = keep == std::string::npos ? 0 : keep + 1;
        bool saw_summary = false;
        std::size_t pos = 0;
        while (pos < keep) {
            std::size_t next = content.find('\n', pos);
            std::string line = content.substr(pos, next - pos);
            pos = next + 1;
            if (line.empty()) continue;
            json j = json::parse(line);  // a malformed complete line is unrecoverable
            if (j.contains("summary")) {
                saw_summary = true;
                continue;
            }
            done.insert(j.at("key").get<std::string>());
            existing.push_back(std::move(j));
        }
        if (keep < content.size()) std::filesystem::resize_file(out_path, keep);
        if (saw_summary && done.size() < instances.size())
            throw std::runtime_error("resume: report already has a summary but misses instances");
        already_complete = saw_summary && done.size() == instances.size();
    }

    std::ofstream file;
    std::ofstream timings;
    if (!out_path.empty() && !already_complete) {
        file.open(out_path, resume ? std::ios::app : std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open report file: " + out_path);
        timings.open(out_path + ".timings", resume ? std::ios::app : std::ios::trunc);
    }

    SweepReport report;
    report.records = std::move(existing);

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < instances.size(); ++i)
        if (!done.count(instances[i].key)) todo.push_back(i);

#ifdef _OPENMP
    int nthreads = spec.threads > 0 ? spec.threads : omp_get_max_threads();
#endif
    constexpr std::size_t kChunk = 16;
    for (std::size_t base = 0; base < todo.size(); base += kChunk) {
        std::size_t end = std::min(base + kChunk, todo.size());
        std::vector<json> results(end - base);
        std::vector<double> ms(end - base, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
#endif
        for (std::size_t i = base; i < end; ++i) {
            auto t0 = std::chrono::steady_clock::now();
            json rec = instances[todo[i]].run();
            auto t1 = std::chrono::steady_clock::now();
            rec["key"] = instances[todo[i]].key;
            rec["family"] = family_name(spec.family);
            rec["schema"] = 1;
            results[i - base] = std::move(rec);
            ms[i - base] = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
        for (std::size_t i = base; i < end; ++i) {
            if (file) {
                file << results[i - base].dump() << '\n';
                file.flush();
            }
            if (timings)
                timings << json{{"key", instances[todo[i]].key}, {"ms", ms[i - base]}}.dump() << '\n';
            report.records.push_back(std::move(results[i - base]));
        }
    }

    int pass = 0, fail = 0, inconclusive = 0;
    for (const auto& r : report.records) {
        std::string v = r.at("verdict").get<std::string>();
        if (v == "PASS")
            ++pass;
        else if (v == "FAIL")
            ++fail;
        else
            ++inconclusive;
    }
    report.summary = json{{"summary",
                           json{{"deterministic", true},
                                {"fail", fail},
                                {"family", family_name(spec.family)},
                                {"inconclusive", inconclusive},
                                {"pass", pass},
                                {"schema", 1},
                                {"total", static_cast<int>(report.records.size())},
                                {"version", std::string(kToolkitVersion)}}}};
    if (file) {
        file << report.summary.dump() << '\n';
        file.flush();
    }
    return report;
}

namespace {

bool reverify_record(const json& rec, std::string& why) {
    CirculantSpec spec = CirculantSpec::parse(rec.at("spec").get<std::string>());
    std::string family = rec.at("family").get<std::string>();
    std::string verdict = rec.at("verdict").get<std::string>();
    const json& witness = rec.at("witness");

    if (family == "a1-quarter" || family == "consecutive-to-half") {
        bool actual = is_semi_transitive(natural_orientation(build_circulant(spec)));
        if (pass_fail(actual) != verdict) {
            why = "recorded verdict disagrees with the natural-orientation check";
            return false;
        }
        return true;
    }
    if (family == "t-to-2t") {
        if (verdict == "FAIL") {
            // The counterexample must reproduce: the fixed set does not induce W5.
            if (find_w5_obstruction(spec).has_value()) {
                why = "recorded FAIL but the witness set does induce W5";
                return false;
            }
            Graph g = build_circulant(spec);
            std::vector<int> set = witness.at("witness_set").get<std::vector<int>>();
            if (induced_subgraph(g, set).edge_count() !=
                witness.at("witness_set_edges").get<std::size_t>()) {
                why = "recorded induced edge count disagrees";
                return false;
            }
            bool nat = is_semi_transitive(natural_orientation(g));
            if (nat != witness.at("natural_orientation_semi_transitive").get<bool>()) {
                why = "recorded natural-orientation status disagrees";
                return false;
            }
            return true;
        }
        std::vector<int> vertices = witness.at("vertices").get<std::vector<int>>();
        std::vector<int> iso = witness.at("iso_to_w5").get<std::vector<int>>();
        Graph sub = induced_subgraph(build_circulant(spec), vertices);
        Graph w5 = wheel(5);
        if (static_cast<int>(iso.size()) != sub.order()) {
            why = "isomorphism map has the wrong size";
            return false;
        }
        for (int u = 0; u < sub.order(); ++u)
            for (int v = u + 1; v < sub.order(); ++v)
                if (sub.adjacent(u, v) != w5.adjacent(iso[u], iso[v])) {
                    why = "recorded map is not edge-preserving onto W5";
                    return false;
                }
        if (decide_semi_transitive_brute(sub).status != StStatus::not_semi_transitive) {
            why = "witness subgraph is not certifiably non-semi-transitive";
            return false;
        }
        return true;
    }
    if (family == "consecutive-1-to-k" || family == "three-regular") {
        int expect_k = family == "three-regular" ? 3 : 2;
        Word w = word_from_string(witness.at("word").get<std::string>());
        bool actual = is_k_uniform(w) == expect_k && represents(w, build_circulant(spec));
        if (pass_fail(actual) != verdict) {
            why = "recorded word does not represent the graph as claimed";
            return false;
        }
        return true;
    }
    if (family == "bipartite-odd") {
        Orientation o = bipartite_transitive_orientation(build_circulant(spec));
        bool actual = is_transitive(o) && is_semi_transitive(o);
        if (pass_fail(actual) != verdict) {
            why = "recorded verdict disagrees with the bipartition orientation check";
            return false;
        }
        return true;
    }
    if (family == "product-iso") {
        if (verdict != "PASS") return true;
        CirculantSpec rhs = CirculantSpec::parse(witness.at("rhs").get<std::string>());
        std::vector<int> mapping = witness.at("mapping").get<std::vector<int>>();
        Graph product = p2_product(build_circulant(spec));
        Graph rhs_g = build_circulant(rhs);
        if (static_cast<int>(mapping.size()) != rhs_g.order() ||
            product.edge_count() != rhs_g.edge_count()) {
            why = "mapping size or edge count mismatch";
            return false;
        }
        std::uint64_t hit = 0;
        for (int v : mapping) {
            if (v < 0 || v >= product.order() || ((hit >> v) & 1)) {
                why = "mapping is not a bijection";
                return false;
            }
            hit |= std::uint64_t{1} << v;
        }
        for (auto [u, v] : rhs_g.edges())
            if (!product.adjacent(mapping[u], mapping[v])) {
                why = "mapping is not edge-preserving";
                return false;
            }
        return true;
    }
    why = "unknown family";
    return false;
}

}  // namespace

bool verify_report(const std::string& path, std::string* first_bad_key) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report file: " + path);
    std::string line;
    int pass = 0, fail = 0, inconclusive = 0;
    std::optional<json> summary;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.contains("summary")) {
            summary = j.at("summary");
            continue;
        }
        if (j.value("schema", 0) != 1) throw std::runtime_error("unsupported record schema");
        std::string why;
        if (!reverify_record(j, why)) {
            if (first_bad_key) *first_bad_key = j.at("key").get<std::string>() + ": " + why;
            return false;
        }
        std::string v = j.at("verdict").get<std::string>();
        if (v == "PASS")
            ++pass;
        else if (v == "FAIL")
            ++fail;
        else
            ++inconclusive;
    }
    if (summary) {
        if (summary->at("pass").get<int>() != pass || summary->at("fail").get<int>() != fail ||
            summary->at("inconclusive").get<int>() != inconclusive) {
            if (first_bad_key) *first_bad_key = "summary: counts disagree with the records";
            return false;
        }
    }
    return true;
}

}  // namespace wrc
