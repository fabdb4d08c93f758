#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wrcirc/graph.hpp"

namespace wrc {

struct Word {
    std::vector<int> letters;

    bool operator==(const Word&) const = default;
    std::size_t size() const { return letters.size(); }
};

// Serialization. The decimal form is space-separated labels; the compact form
// is base-36 digits, valid for alphabets <= 36. Both round-trip bit-exactly.
std::string word_to_string(const Word& w);
Word word_from_string(std::string_view text);
std::string word_to_compact(const Word& w);  // throws if a letter exceeds 35
Word word_from_compact(std::string_view text);

Word restrict_to(const Word& w, const std::vector<int>& letters);

// Strict alternation of w restricted to {x, y}; single occurrences of both
// alternate by definition. Throws if either letter is absent from w.
bool alternates(const Word& w, int x, int y);

// True iff adjacency in g equals alternation in w for every vertex pair.
// Throws if w does not cover exactly the alphabet 0..order-1.
bool represents(const Word& w, const Graph& g);
// Same check, reporting the first failing pair (lexicographic) when false.
std::optional<std::pair<int, int>> represents_failing_pair(const Word& w, const Graph& g);

Word initial_permutation(const Word& w);  // leftmost occurrences
Word final_permutation(const Word& w);    // rightmost occurrences
Word reverse_word(const Word& w);
Word rotate(const Word& w, std::size_t cut);  // uv -> vu, cut in [0, |w|]
std::optional<int> is_k_uniform(const Word& w);
std::vector<int> letters_present(const Word& w);  // sorted

Word extend_by_initial_perm(const Word& w);  // pi(w) w

// For each consecutive pair of x's, the letters occurring exactly once in the
// gap. N(x) is a subset of every such set in any representant (used as a
// search bound). Throws if x occurs fewer than twice.
std::vector<std::vector<int>> occurrence_neighbor_filter(const Word& w, int x);

// h(i) = i (i-k)_n over u = 0 1 ... n-1; 2-uniform representant of C(n;1..k).
// Requires R = {1,...,k} with 2k < n (the morphism fails at 2k = n).
Word construct_word_consecutive(const CirculantSpec& spec);

// h(i) = i (i-a)_2n (i+n)_2n over u = 0, a, 2a, ...; 3-uniform representant
// of C(2n; a, n) with gcd(a, 2n) = 1.
Word construct_word_3reg(const CirculantSpec& spec);

struct WordSearchOptions {
    std::uint64_t budget = UINT64_MAX;    // node expansions (letter placements)
    bool circulant_negation_symmetry = false;  // sound extra reduction for circulants
    int threads = 1;                      // >1 or 0 enables the OpenMP top split
};

struct WordSearchOutcome {
    std::optional<Word> word;     // verified representant when found
    bool exhausted = false;       // full canonical space covered
    std::uint64_t nodes = 0;
    std::vector<std::string> pruning_rules;
};

// Backtracking construction of a k-uniform word, position by position, with
// w[0] fixed to letter 0 (lossless by rotation). Found words are re-verified
// by represents before return. Absent with exhausted == true certifies that
// no k-uniform representant exists.
WordSearchOutcome search_representant(const Graph& g, int k, const WordSearchOptions& opts = {});

struct RefuteCertificate {
    std::string status;  // "refuted" | "found" | "inconclusive"
    int k = 0;
    std::uint64_t nodes_explored = 0;
    std::optional<Word> witness;  // when status == "found"
    std::vector<std::string> pruning_rules;
};

inline constexpr std::uint64_t kDefaultRefuteLimit = 4'000'000'000ULL;

RefuteCertificate refute_k_uniform(const Graph& g, int k,
                                   std::uint64_t node_limit = kDefaultRefuteLimit,
                                   int threads = 1);

struct RepnAttempt {
    int k = 0;
    std::string status;  // "found" | "refuted" | "inconclusive" | "constructed"
    std::uint64_t nodes = 0;
};

struct RepnBracket {
    int lower = 1;                 // no (lower-1)-uniform representant exists
    bool lower_certified = true;   // every k < lower carries an exhaustion certificate
    std::optional<int> upper;
    std::optional<Word> witness;
    std::uint64_t nodes_explored = 0;
    std::vector<RepnAttempt> attempts;
};

// Ascending k = 1..k_max. Lower bounds come only from exhaustion
// certificates. When a circulant spec hint matches a construction shape
// ({1..k} or {a,n}), the constructed word is used as a verified upper-bound
// witness at its k.
RepnBracket representation_number(const Graph& g, int k_max, std::uint64_t budget,
                                  const CirculantSpec* hint = nullptr, int threads = 1);

}  // namespace wrc
