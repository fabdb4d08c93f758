#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "wrcirc/json_io.hpp"
#include "wrcirc/words.hpp"

using namespace wrc;

namespace {

const Word kSample{{3, 5, 4, 2, 3, 2, 1, 4}};  // 35423214

void check_witness_invariances(const Word& w, const Graph& g) {
    REQUIRE(represents(w, g));
    // reverse
    REQUIRE(represents(reverse_word(w), g));
    // every rotation of a uniform representant still represents
    if (is_k_uniform(w))
        for (std::size_t cut = 0; cut <= w.size(); ++cut) REQUIRE(represents(rotate(w, cut), g));
    // prepending the initial permutation preserves representation
    REQUIRE(represents(extend_by_initial_perm(w), g));
    // every gap around a repeated letter covers its neighborhood
    for (int x = 0; x < g.order(); ++x) {
        int occurrences = 0;
        for (int v : w.letters) occurrences += v == x;
        if (occurrences < 2) continue;
        for (const auto& gap : occurrence_neighbor_filter(w, x)) {
            std::uint64_t gap_mask = 0;
            for (int y : gap) gap_mask |= std::uint64_t{1} << y;
            REQUIRE((g.neighbors(x) & ~gap_mask) == 0);
        }
    }
}

}  // namespace

TEST_CASE("restrict_to: worked example") {
    CHECK(restrict_to(kSample, {1, 2}).letters == std::vector<int>{2, 2, 1});
    CHECK(restrict_to(kSample, {3, 5}).letters == std::vector<int>{3, 5, 3});
    CHECK(restrict_to(kSample, {}).letters.empty());
}

TEST_CASE("alternates: basic cases and the single-occurrence rule") {
    CHECK(alternates(Word{{2, 1, 2, 1}}, 1, 2));
    CHECK_FALSE(alternates(kSample, 1, 2));  // restriction is 221
    CHECK(alternates(Word{{1, 3}}, 1, 3));
    CHECK_THROWS_AS(alternates(Word{{1, 3}}, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(alternates(Word{{1, 3}}, 1, 1), std::invalid_argument);
}

TEST_CASE("initial and final permutations of the worked example") {
    CHECK(initial_permutation(kSample).letters == std::vector<int>{3, 5, 4, 2, 1});
    CHECK(final_permutation(kSample).letters == std::vector<int>{5, 3, 2, 1, 4});
    CHECK(letters_present(kSample) == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("reverse, rotate, uniformity") {
    CHECK(reverse_word(Word{{1, 2, 3}}).letters == std::vector<int>{3, 2, 1});
    CHECK(rotate(Word{{1, 2, 3, 4}}, 1).letters == std::vector<int>{2, 3, 4, 1});
    CHECK(rotate(Word{{1, 2}}, 0).letters == std::vector<int>{1, 2});
    CHECK_THROWS_AS(rotate(Word{{1}}, 2), std::invalid_argument);
    CHECK(is_k_uniform(Word{{0, 1, 0, 1}}) == 2);
    CHECK_FALSE(is_k_uniform(Word{{0, 1, 0}}).has_value());
    CHECK_FALSE(is_k_uniform(Word{}).has_value());
}

TEST_CASE("represents: K2 and one-shot complete graphs") {
    Graph k2 = build_circulant({2, {1}});
    CHECK(represents(Word{{0, 1, 0, 1}}, k2));
    Graph k4 = build_circulant({4, {1, 2}});
    CHECK(represents(Word{{0, 1, 2, 3}}, k4));

    Graph empty2(2);
    auto failing = represents_failing_pair(Word{{0, 1, 0, 1}}, empty2);
    REQUIRE(failing.has_value());
    CHECK(*failing == std::make_pair(0, 1));

    CHECK_THROWS_AS(represents(Word{{0, 0}}, k2), std::invalid_argument);       // misses vertex 1
    CHECK_THROWS_AS(represents(Word{{0, 1, 5}}, k2), std::invalid_argument);    // letter off alphabet
}

TEST_CASE("extend_by_initial_perm bumps uniformity and preserves representation") {
    Word w{{0, 1, 0, 1}};
    Word ext = extend_by_initial_perm(w);
    CHECK(ext.letters == std::vector<int>{0, 1, 0, 1, 0, 1});
    CHECK(represents(ext, build_circulant({2, {1}})));
    CHECK(is_k_uniform(ext) == 3);
}

TEST_CASE("occurrence_neighbor_filter: letters appearing exactly once per gap") {
    // x a b a x with x=0, a=1, b=2
    auto gaps = occurrence_neighbor_filter(Word{{0, 1, 2, 1, 0}}, 0);
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0] == std::vector<int>{2});

    auto empty_gap = occurrence_neighbor_filter(Word{{0, 0}}, 0);
    REQUIRE(empty_gap.size() == 1);
    CHECK(empty_gap[0].empty());

    CHECK_THROWS_AS(occurrence_neighbor_filter(Word{{0, 1}}, 0), std::invalid_argument);
}

TEST_CASE("construct_word_consecutive: fixed instances") {
    CHECK(word_to_string(construct_word_consecutive({6, {1, 2}})) == "0 4 1 5 2 0 3 1 4 2 5 3");
    Word c5 = construct_word_consecutive({5, {1}});
    CHECK(word_to_string(c5) == "0 4 1 0 2 1 3 2 4 3");
    CHECK(represents(c5, build_circulant({5, {1}})));

    Word c7 = construct_word_consecutive({7, {1, 2, 3}});
    CHECK(c7.size() == 14);
    CHECK(is_k_uniform(c7) == 2);
    CHECK(represents(c7, build_circulant({7, {1, 2, 3}})));

    // The first gap of letter 0 in the C(6;1,2) word lists its neighborhood.
    auto gaps = occurrence_neighbor_filter(construct_word_consecutive({6, {1, 2}}), 0);
    CHECK(gaps.front() == std::vector<int>{1, 2, 4, 5});
}

TEST_CASE("construct_word_consecutive: domain checks") {
    CHECK_THROWS_AS(construct_word_consecutive({10, {2, 3}}), std::invalid_argument);
    // the morphism degenerates at 2k = n
    CHECK_THROWS_AS(construct_word_consecutive({6, {1, 2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(construct_word_consecutive({4, {1, 2}}), std::invalid_argument);
}

TEST_CASE("construct_word_consecutive represents its circulant for all n <= 30") {
    for (int n = 3; n <= 30; ++n)
        for (int k = 1; 2 * k < n; ++k) {
            std::vector<int> steps;
            for (int a = 1; a <= k; ++a) steps.push_back(a);
            Word w = construct_word_consecutive({n, steps});
            REQUIRE(is_k_uniform(w) == 2);
            REQUIRE(represents(w, build_circulant({n, steps})));
        }
}

TEST_CASE("construct_word_3reg: fixed instances") {
    CHECK(word_to_string(construct_word_3reg({6, {1, 3}})) == "0 5 3 1 0 4 2 1 5 3 2 0 4 3 1 5 4 2");
    CHECK(represents(construct_word_3reg({6, {1, 3}}), build_circulant({6, {1, 3}})));

    Word m5 = construct_word_3reg({10, {3, 5}});
    CHECK(m5.size() == 30);
    CHECK(is_k_uniform(m5) == 3);
    CHECK(represents(m5, build_circulant({10, {3, 5}})));

    // C(4;1,2) is K4
    Word k4 = construct_word_3reg({4, {1, 2}});
    CHECK(is_k_uniform(k4) == 3);
    CHECK(represents(k4, build_circulant({4, {1, 2}})));
}

TEST_CASE("construct_word_3reg: domain checks") {
    CHECK_THROWS_AS(construct_word_3reg({10, {2, 5}}), std::invalid_argument);  // gcd(2,10) != 1
    CHECK_THROWS_AS(construct_word_3reg({8, {1, 2}}), std::invalid_argument);   // not {a, n}
    CHECK_THROWS_AS(construct_word_3reg({7, {1, 3}}), std::invalid_argument);   // odd order
}

TEST_CASE("construct_word_3reg represents its circulant for all 2n <= 40") {
    for (int N = 4; N <= 40; N += 2)
        for (int a = 1; a < N / 2; ++a) {
            if (std::gcd(a, N) != 1) continue;
            Word w = construct_word_3reg({N, {a, N / 2}});
            REQUIRE(is_k_uniform(w) == 3);
            REQUIRE(represents(w, build_circulant({N, {a, N / 2}})));
        }
}

TEST_CASE("found witnesses satisfy the reversal, rotation, pi(w)w and gap laws") {
    check_witness_invariances(construct_word_consecutive({8, {1, 2}}), build_circulant({8, {1, 2}}));
    check_witness_invariances(construct_word_3reg({10, {1, 5}}), build_circulant({10, {1, 5}}));
    auto c5 = search_representant(build_circulant({5, {1}}), 2);
    REQUIRE(c5.word.has_value());
    check_witness_invariances(*c5.word, build_circulant({5, {1}}));
}

TEST_CASE("search_representant: canonical first finds") {
    auto k3 = search_representant(build_circulant({3, {1}}), 1);
    REQUIRE(k3.word.has_value());
    CHECK(word_to_string(*k3.word) == "0 1 2");

    auto k1 = search_representant(Graph(1), 2);
    REQUIRE(k1.word.has_value());
    CHECK(word_to_string(*k1.word) == "0 0");

    CHECK_THROWS_AS(search_representant(Graph(2), 0), std::invalid_argument);
}

TEST_CASE("search_representant: W5 has no 2-uniform representant") {
    auto outcome = search_representant(wheel(5), 2);
    CHECK_FALSE(outcome.word.has_value());
    CHECK(outcome.exhausted);
    CHECK(outcome.nodes > 0);
}

TEST_CASE("search matches naive enumeration of every k-uniform word (alphabets <= 5)") {
    for (const auto& g : oracle::all_graphs_up_to(4)) {
        for (int k = 1; k <= 2; ++k) {
            auto smart = search_representant(g, k);
            auto naive = oracle::naive_k_uniform_search(g, k);
            REQUIRE(smart.word.has_value() == naive.has_value());
            REQUIRE(smart.exhausted == !smart.word.has_value());
            if (smart.word) REQUIRE(represents(*smart.word, g));
        }
    }
    for (const Graph& g : {build_circulant({5, {1}}), wheel(4)}) {
        auto smart = search_representant(g, 2);
        auto naive = oracle::naive_k_uniform_search(g, 2);
        REQUIRE(smart.word.has_value() == naive.has_value());
    }
    for (const auto& g : oracle::all_graphs_up_to(3)) {
        auto smart = search_representant(g, 3);
        auto naive = oracle::naive_k_uniform_search(g, 3);
        REQUIRE(smart.word.has_value() == naive.has_value());
    }
}

TEST_CASE("represents agrees with pairwise alternation checks") {
    struct Case {
        Word w;
        CirculantSpec spec;
    };
    for (const Case& c : {Case{construct_word_consecutive({9, {1, 2, 3}}), {9, {1, 2, 3}}},
                          Case{construct_word_3reg({12, {5, 6}}), {12, {5, 6}}},
                          Case{Word{{0, 1, 3, 5, 0, 2, 4, 5, 3, 1, 4, 2}}, {6, {1, 3}}}}) {
        Graph g = build_circulant(c.spec);
        bool by_pairs = true;
        for (int x = 0; x < g.order(); ++x)
            for (int y = x + 1; y < g.order(); ++y)
                by_pairs &= alternates(c.w, x, y) == g.adjacent(x, y);
        REQUIRE(by_pairs == represents(c.w, g));
        REQUIRE(by_pairs);
    }
}

TEST_CASE("a 1-uniform representant exists exactly for complete graphs") {
    for (const auto& g : oracle::all_graphs_up_to(5)) {
        bool complete = g.edge_count() == static_cast<std::size_t>(g.order()) *
                                              (g.order() - 1) / 2;
        auto outcome = search_representant(g, 1);
        REQUIRE(outcome.word.has_value() == complete);
    }
}

TEST_CASE("negation symmetry reduction keeps verdicts and shrinks work") {
    Graph pr3 = build_circulant({6, {2, 3}});
    WordSearchOptions plain;
    WordSearchOptions reduced;
    reduced.circulant_negation_symmetry = true;
    auto a = search_representant(pr3, 2, plain);
    auto b = search_representant(pr3, 2, reduced);
    CHECK(a.exhausted);
    CHECK(b.exhausted);
    CHECK(b.nodes <= a.nodes);
    CHECK(b.pruning_rules.back() == "negation-w1-representative");
}

TEST_CASE("refute_k_uniform: sanity directions") {
    RefuteCertificate k2 = refute_k_uniform(build_circulant({2, {1}}), 1);
    CHECK(k2.status == "found");
    REQUIRE(k2.witness.has_value());
    CHECK(word_to_string(*k2.witness) == "0 1");

    RefuteCertificate p3 = refute_k_uniform(Graph::from_edges(3, {{0, 1}, {1, 2}}), 1);
    CHECK(p3.status == "refuted");

    RefuteCertificate tight = refute_k_uniform(build_circulant({8, {1, 4}}), 2, 100);
    CHECK(tight.status == "inconclusive");
    CHECK(tight.nodes_explored <= 100);
}

TEST_CASE("refute_k_uniform: prism C(6;2,3) really has no 2-uniform representant") {
    RefuteCertificate cert = refute_k_uniform(build_circulant({6, {2, 3}}), 2);
    CHECK(cert.status == "refuted");
    CHECK(cert.nodes_explored > 0);
}

TEST_CASE("C(6;1,3) is K33 and the search finds its 2-uniform representant") {
    // A permutation graph: two shuffled copies of 0..5 represent it.
    Graph k33 = build_circulant({6, {1, 3}});
    CHECK(represents(Word{{0, 2, 4, 1, 3, 5, 4, 2, 0, 5, 3, 1}}, k33));
    RefuteCertificate cert = refute_k_uniform(k33, 2);
    CHECK(cert.status == "found");
    REQUIRE(cert.witness.has_value());
    CHECK(is_k_uniform(*cert.witness) == 2);
    CHECK(represents(*cert.witness, k33));
}

TEST_CASE("representation_number: complete graph and cycle brackets") {
    RepnBracket k5 = representation_number(build_circulant({5, {1, 2}}), 3, 1u << 22);
    CHECK(k5.lower == 1);
    CHECK(k5.upper == 1);
    CHECK(k5.lower_certified);

    RepnBracket c5 = representation_number(build_circulant({5, {1}}), 3, 1u << 22);
    CHECK(c5.lower == 2);
    CHECK(c5.upper == 2);
    REQUIRE(c5.witness.has_value());
    CHECK(represents(*c5.witness, build_circulant({5, {1}})));
}

TEST_CASE("representation_number: prism C(6;2,3) lands on 3/3 by pure search") {
    RepnBracket b = representation_number(build_circulant({6, {2, 3}}), 3, 1u << 30);
    CHECK(b.lower == 3);
    CHECK(b.upper == 3);
    REQUIRE(b.witness.has_value());
    CHECK(is_k_uniform(*b.witness) == 3);
    REQUIRE(b.attempts.size() == 3);
    CHECK(b.attempts[0].status == "refuted");
    CHECK(b.attempts[1].status == "refuted");
    CHECK(b.attempts[2].status == "found");
}

TEST_CASE("representation_number: W5 yields an empty bracket with certified lower bounds") {
    RepnBracket b = representation_number(wheel(5), 3, 4'000'000'000ULL);
    CHECK(b.lower == 4);
    CHECK(b.lower_certified);
    CHECK_FALSE(b.upper.has_value());
    CHECK_FALSE(b.witness.has_value());
    for (const auto& a : b.attempts) CHECK(a.status == "refuted");
}

TEST_CASE("representation_number: C(8;1,4) certifies lower 3 and seeds the h-word upper bound") {
    CirculantSpec spec{8, {1, 4}};
    RepnBracket b = representation_number(build_circulant(spec), 3, 1u << 30, &spec);
    CHECK(b.lower == 3);
    CHECK(b.upper == 3);
    REQUIRE(b.attempts.size() == 3);
    CHECK(b.attempts[1].status == "refuted");
    CHECK(b.attempts[2].status == "constructed");
    REQUIRE(b.witness.has_value());
    CHECK(represents(*b.witness, build_circulant(spec)));
}

TEST_CASE("word serialization round-trips bit-exactly") {
    for (const Word& w : {construct_word_consecutive({9, {1, 2}}), Word{{0}}, Word{}}) {
        CHECK(word_from_string(word_to_string(w)) == w);
    }
    Word w = construct_word_3reg({10, {1, 5}});
    CHECK(word_from_compact(word_to_compact(w)) == w);
    CHECK(word_to_compact(Word{{0, 10, 35}}) == "0az");
    CHECK(word_from_compact("0az") == Word{{0, 10, 35}});
    CHECK_THROWS_AS(word_to_compact(Word{{36}}), std::invalid_argument);
    CHECK_THROWS_AS(word_from_string("1  2"), std::invalid_argument);
    CHECK_THROWS_AS(word_from_string("1 x"), std::invalid_argument);
}

TEST_CASE("certificate and bracket JSON shapes") {
    RefuteCertificate cert = refute_k_uniform(build_circulant({6, {2, 3}}), 2);
    auto cj = certificate_to_json(cert);
    CHECK(cj.at("status") == "refuted");
    CHECK(cj.at("k") == 2);
    CHECK(cj.at("nodes_explored").get<std::uint64_t>() > 0);
    CHECK(cj.at("witness").is_null());

    RepnBracket b = representation_number(build_circulant({5, {1}}), 2, 1u << 22);
    auto bj = bracket_to_json(b);
    CHECK(bj.at("lower") == 2);
    CHECK(bj.at("upper") == 2);
    CHECK(bj.at("lower_certified") == true);
    CHECK(bj.at("witness").is_string());
}
