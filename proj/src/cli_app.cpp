#include "wrcirc/cli_app.hpp"

#include <fstream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "wrcirc/json_io.hpp"
#include "wrcirc/orient.hpp"
#include "wrcirc/survey.hpp"
#include "wrcirc/words.hpp"

namespace wrc {

using nlohmann::json;

int exit_for(const json& result) {
    std::string v;
    if (result.contains("verdict"))
        v = result.at("verdict").get<std::string>();
    else if (result.contains("status"))
        v = result.at("status").get<std::string>();
    if (v == "produced" || v == "holds" || v == "semi-transitive" || v == "found" || v == "PASS")
        return kExitHolds;
    if (v == "false" || v == "not-semi-transitive" || v == "refuted" || v == "FAIL")
        return kExitFalse;
    if (v == "unknown" || v == "inconclusive") return kExitInconclusive;
    return kExitHolds;
}

namespace {

struct GraphInput {
    Graph graph;
    std::optional<CirculantSpec> spec;
};

GraphInput load_graph(const std::string& spec_str, const std::string& graph_path) {
    if (spec_str.empty() == graph_path.empty())
        throw std::invalid_argument("provide exactly one of --spec and --graph");
    if (!spec_str.empty()) {
        CirculantSpec spec = CirculantSpec::parse(spec_str);
        return {build_circulant(spec), spec};
    }
    std::ifstream in(graph_path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + graph_path);
    json j = json::parse(in);
    return {graph_from_json(j), std::nullopt};
}

void emit_text(std::ostream& out, const std::string& out_path, const std::string& text) {
    out << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
        f << text;
    }
}

int emit_json(std::ostream& out, const std::string& out_path, const json& j) {
    emit_text(out, out_path, j.dump() + "\n");
    return exit_for(j);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"semi-transitive orientations and word-representants of circulant graphs"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0 = all cores)");

    std::string spec_str, graph_path, out_path, format = "json", word_str, arcs_path, family_str,
                report_path;
    std::uint64_t budget = 100'000'000ULL;
    int k = 0, k_max = 4, max_order = 7, n_lo = 0, n_hi = 0;
    bool compact = false, negation = false, resume = false;

    auto add_graph_opts = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_str, "circulant spec, e.g. C(13;1,5)");
        sub->add_option("--graph", graph_path, "graph JSON file");
    };

    auto* gen = app.add_subcommand("gen", "build a circulant graph");
    gen->add_option("--spec", spec_str)->required();
    gen->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
    gen->add_option("--out", out_path);

    auto* orient_nat = app.add_subcommand("orient-natural", "orient every edge low -> high");
    orient_nat->add_option("--spec", spec_str)->required();
    orient_nat->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
    orient_nat->add_option("--out", out_path);

    auto* check_st = app.add_subcommand("check-st", "check one orientation for semi-transitivity");
    check_st->add_option("--spec", spec_str, "use the natural orientation of this circulant");
    check_st->add_option("--arcs", arcs_path, "orientation JSON file");
    check_st->add_option("--out", out_path);

    auto* decide_st = app.add_subcommand("decide-st", "search all orientations for semi-transitivity");
    add_graph_opts(decide_st);
    decide_st->add_option("--budget", budget, "node-expansion budget");
    decide_st->add_option("--out", out_path);

    auto* find_w5 = app.add_subcommand("find-w5", "check the W5 witness set of C(n;t..2t)");
    find_w5->add_option("--spec", spec_str)->required();
    find_w5->add_option("--out", out_path);

    auto* scan = app.add_subcommand("scan-obstruction", "search induced subgraphs for an obstruction");
    add_graph_opts(scan);
    scan->add_option("--max-order", max_order)->check(CLI::Range(2, 8));
    scan->add_option("--budget", budget);
    scan->add_option("--out", out_path);

    auto* word_cons = app.add_subcommand("word-consecutive", "2-uniform word for C(n;1..k)");
    word_cons->add_option("--spec", spec_str)->required();
    word_cons->add_option("--out", out_path);

    auto* word_3reg = app.add_subcommand("word-3reg", "3-uniform word for C(2n;a,n), gcd(a,2n)=1");
    word_3reg->add_option("--spec", spec_str)->required();
    word_3reg->add_option("--out", out_path);

    auto* verify_word = app.add_subcommand("verify-word", "does a word represent the graph?");
    add_graph_opts(verify_word);
    verify_word->add_option("--word", word_str)->required();
    verify_word->add_flag("--compact", compact, "word is in base-36 compact form");
    verify_word->add_option("--out", out_path);

    auto* search_word = app.add_subcommand("search-word", "search for a k-uniform representant");
    add_graph_opts(search_word);
    search_word->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    search_word->add_option("--budget", budget);
    search_word->add_flag("--negation-symmetry", negation,
                          "restrict w[1] by the circulant negation automorphism");
    search_word->add_option("--out", out_path);

    auto* refute = app.add_subcommand("refute-uniform", "exhaust the k-uniform canonical space");
    add_graph_opts(refute);
    refute->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    refute->add_option("--budget", budget)->default_val(kDefaultRefuteLimit);
    refute->add_option("--out", out_path);

    auto* repnum = app.add_subcommand("repnum", "bracket the representation number");
    add_graph_opts(repnum);
    repnum->add_option("--k-max", k_max)->check(CLI::PositiveNumber);
    repnum->add_option("--budget", budget)->default_val(std::uint64_t{1'000'000'000});
    repnum->add_option("--out", out_path);

    auto* sweep = app.add_subcommand("sweep", "run a theorem-verification campaign");
    sweep->add_option("--family", family_str)->required();
    sweep->add_option("--n-lo", n_lo)->required();
    sweep->add_option("--n-hi", n_hi)->required();
    sweep->add_option("--budget", budget);
    sweep->add_option("--out", out_path);
    sweep->add_flag("--resume", resume);

    auto* verify_rep = app.add_subcommand("verify-report", "re-check every witness in a report");
    verify_rep->add_option("--in", report_path)->required();

    // lets the global --threads appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("wrc");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitHolds;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*gen) {
            CirculantSpec spec = CirculantSpec::parse(spec_str);
            Graph g = build_circulant(spec);
            if (format == "dot") {
                emit_text(out, out_path, to_dot(g));
                return kExitHolds;
            }
            return emit_json(out, out_path,
                             json{{"graph", graph_to_json(g)}, {"spec", spec.to_string()},
                                  {"verdict", "produced"}});
        }
        if (*orient_nat) {
            CirculantSpec spec = CirculantSpec::parse(spec_str);
            Orientation o = natural_orientation(build_circulant(spec));
            if (format == "dot") {
                emit_text(out, out_path, orientation_to_dot(o));
                return kExitHolds;
            }
            return emit_json(out, out_path,
                             json{{"orientation", orientation_to_json(o)}, {"spec", spec.to_string()},
                                  {"verdict", "produced"}});
        }
        if (*check_st) {
            if (spec_str.empty() == arcs_path.empty())
                throw std::invalid_argument("provide exactly one of --spec and --arcs");
            Orientation o;
            if (!spec_str.empty()) {
                o = natural_orientation(build_circulant(CirculantSpec::parse(spec_str)));
            } else {
                std::ifstream in(arcs_path);
                if (!in) throw std::invalid_argument("cannot open orientation file: " + arcs_path);
                o = orientation_from_json(json::parse(in));
            }
            if (!is_acyclic(o))
                return emit_json(out, out_path,
                                 json{{"reason", "cyclic"}, {"shortcut", json()},
                                      {"verdict", "not-semi-transitive"}});
            auto shortcut = find_shortcut(o);
            if (shortcut)
                return emit_json(out, out_path,
                                 json{{"reason", "shortcut"}, {"shortcut", shortcut_to_json(*shortcut)},
                                      {"verdict", "not-semi-transitive"}});
            return emit_json(out, out_path,
                             json{{"reason", json()}, {"shortcut", json()}, {"verdict", "semi-transitive"}});
        }
        if (*decide_st) {
            GraphInput in = load_graph(spec_str, graph_path);
            StVerdict v = decide_semi_transitive_parallel(in.graph, budget, threads);
            return emit_json(out, out_path, verdict_to_json(v));
        }
        if (*find_w5) {
            CirculantSpec spec = CirculantSpec::parse(spec_str);
            auto witness = find_w5_obstruction(spec);
            if (witness)
                return emit_json(out, out_path,
                                 json{{"verdict", "holds"}, {"witness", w5_witness_to_json(*witness)}});
            return emit_json(out, out_path, json{{"verdict", "false"}, {"witness", json()}});
        }
        if (*scan) {
            GraphInput in = load_graph(spec_str, graph_path);
            auto result = obstruction_scan(in.graph, max_order, budget, threads);
            if (result) {
                StVerdict host;
                host.status = StStatus::not_semi_transitive;
                host.evidence = "obstruction";
                host.obstruction = ObstructionCert{result->vertices, result->verdict.budget_spent};
                host.budget_spent = result->verdict.budget_spent;
                return emit_json(out, out_path, verdict_to_json(host));
            }
            return emit_json(out, out_path, json{{"obstruction", json()}, {"verdict", "unknown"}});
        }
        if (*word_cons || *word_3reg) {
            CirculantSpec spec = CirculantSpec::parse(spec_str);
            Word w = *word_cons ? construct_word_consecutive(spec) : construct_word_3reg(spec);
            bool ok = represents(w, build_circulant(spec));
            return emit_json(out, out_path,
                             json{{"k", *word_cons ? 2 : 3}, {"spec", spec.to_string()},
                                  {"verdict", ok ? "produced" : "false"}, {"verified", ok},
                                  {"word", word_to_string(w)}});
        }
        if (*verify_word) {
            GraphInput in = load_graph(spec_str, graph_path);
            Word w = compact ? word_from_compact(word_str) : word_from_string(word_str);
            auto failing = represents_failing_pair(w, in.graph);
            if (failing)
                return emit_json(out, out_path,
                                 json{{"failing_pair", {failing->first, failing->second}},
                                      {"verdict", "false"}});
            return emit_json(out, out_path, json{{"failing_pair", json()}, {"verdict", "holds"}});
        }
        if (*search_word) {
            GraphInput in = load_graph(spec_str, graph_path);
            WordSearchOptions opts;
            opts.budget = budget;
            opts.circulant_negation_symmetry = negation;
            opts.threads = threads;
            WordSearchOutcome o = search_representant(in.graph, k, opts);
            json j = search_outcome_to_json(o);
            j["verdict"] = o.word ? "found" : (o.exhausted ? "refuted" : "inconclusive");
            return emit_json(out, out_path, j);
        }
        if (*refute) {
            GraphInput in = load_graph(spec_str, graph_path);
            RefuteCertificate cert = refute_k_uniform(in.graph, k, budget, threads);
            return emit_json(out, out_path, certificate_to_json(cert));
        }
        if (*repnum) {
            GraphInput in = load_graph(spec_str, graph_path);
            RepnBracket b = representation_number(in.graph, k_max, budget,
                                                  in.spec ? &*in.spec : nullptr, threads);
            json j = bracket_to_json(b);
            j["verdict"] = "produced";
            return emit_json(out, out_path, j);
        }
        if (*sweep) {
            auto family = family_from_name(family_str);
            if (!family) throw std::invalid_argument("unknown sweep family: " + family_str);
            SweepSpec s{*family, n_lo, n_hi, budget, threads};
            SweepReport report = run_sweep(s, out_path, resume);
            json summary = report.summary.at("summary");
            std::string verdict = summary.at("fail").get<int>() > 0 ? "FAIL"
                                  : summary.at("inconclusive").get<int>() > 0 ? "inconclusive"
                                                                              : "PASS";
            json j{{"summary", summary}, {"verdict", verdict}};
            out << j.dump() << "\n";
            return exit_for(j);
        }
        if (*verify_rep) {
            std::string bad;
            bool ok = verify_report(report_path, &bad);
            return emit_json(out, "",
                             json{{"record", ok ? json() : json(bad)},
                                  {"verdict", ok ? "holds" : "false"}});
        }
    } catch (const std::exception& e) {  // bad specs, unreadable files, malformed JSON
        err << e.what() << "\n";
        return kExitUsage;
    }
    err << "no subcommand selected\n";
    return kExitUsage;
}

}  // namespace wrc
