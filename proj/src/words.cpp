#include "wrcirc/words.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wrc {

namespace {

constexpr std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

}  // namespace

std::string word_to_string(const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) os << ' ';
        os << w.letters[i];
    }
    return os.str();
}

Word word_from_string(std::string_view text) {
    Word w;
    if (text.empty()) return w;
    std::size_t pos = 0;
    while (true) {
        auto next = text.find(' ', pos);
        std::string_view tok = text.substr(pos, next == std::string_view::npos ? next : next - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0)
            throw std::invalid_argument("malformed word: '" + std::string(text) + "'");
        w.letters.push_back(value);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return w;
}

namespace {

constexpr std::string_view kBase36 = "0123456789abcdefghijklmnopqrstuvwxyz";

}  // namespace

std::string word_to_compact(const Word& w) {
    std::string s;
    s.reserve(w.letters.size());
    for (int x : w.letters) {
        if (x < 0 || x > 35)
            throw std::invalid_argument("compact form requires letters <= 35, got " + std::to_string(x));
        s.push_back(kBase36[static_cast<std::size_t>(x)]);
    }
    return s;
}

Word word_from_compact(std::string_view text) {
    Word w;
    w.letters.reserve(text.size());
    for (char ch : text) {
        auto pos = kBase36.find(ch);
        if (pos == std::string_view::npos)
            throw std::invalid_argument(std::string("invalid compact word digit '") + ch + "'");
        w.letters.push_back(static_cast<int>(pos));
    }
    return w;
}

Word restrict_to(const Word& w, const std::vector<int>& letters) {
    Word out;
    for (int x : w.letters)
        if (std::find(letters.begin(), letters.end(), x) != letters.end()) out.letters.push_back(x);
    return out;
}

bool alternates(const Word& w, int x, int y) {
    if (x == y) throw std::invalid_argument("alternates requires two distinct letters");
    bool seen_x = false, seen_y = false;
    int last = -1;
    for (int v : w.letters) {
        if (v != x && v != y) continue;
        if (v == x) seen_x = true;
        if (v == y) seen_y = true;
        if (v == last) return false;
        last = v;
    }
    if (!seen_x || !seen_y)
        throw std::invalid_argument("alternates: letter absent from the word");
    return true;
}

namespace {

void check_alphabet(const Word& w, const Graph& g) {
    std::vector<int> count(g.order(), 0);
    for (int x : w.letters) {
        if (x < 0 || x >= g.order())
            throw std::invalid_argument("word letter " + std::to_string(x) +
                                        " outside the graph alphabet");
        ++count[x];
    }
    for (int v = 0; v < g.order(); ++v)
        if (count[v] == 0)
            throw std::invalid_argument("word misses vertex " + std::to_string(v));
}

// doubled[x][y] == true when the restriction to {x,y} has two consecutive
// equal letters, i.e. x and y do not alternate.
std::vector<std::uint8_t> doubled_pairs(const Word& w, int n) {
    std::vector<int> last(static_cast<std::size_t>(n) * n, -1);
    std::vector<std::uint8_t> doubled(static_cast<std::size_t>(n) * n, 0);
    for (int x : w.letters) {
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            int lo = std::min(x, y), hi = std::max(x, y);
            auto idx = static_cast<std::size_t>(lo) * n + hi;
            if (last[idx] == x) doubled[idx] = 1;
            last[idx] = x;
        }
    }
    return doubled;
}

}  // namespace

std::optional<std::pair<int, int>> represents_failing_pair(const Word& w, const Graph& g) {
    check_alphabet(w, g);
    int n = g.order();
    auto doubled = doubled_pairs(w, n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (g.adjacent(x, y) == static_cast<bool>(doubled[static_cast<std::size_t>(x) * n + y]))
                return std::make_pair(x, y);
    return std::nullopt;
}

bool represents(const Word& w, const Graph& g) { return !represents_failing_pair(w, g); }

Word initial_permutation(const Word& w) {
    Word out;
    std::vector<int> seen;
    for (int x : w.letters) {
        if (std::find(seen.begin(), seen.end(), x) == seen.end()) {
            seen.push_back(x);
            out.letters.push_back(x);
        }
    }
    return out;
}

Word final_permutation(const Word& w) {
    Word rev = initial_permutation(reverse_word(w));
    return reverse_word(rev);
}

Word reverse_word(const Word& w) {
    Word out = w;
    std::reverse(out.letters.begin(), out.letters.end());
    return out;
}

Word rotate(const Word& w, std::size_t cut) {
    if (cut > w.letters.size()) throw std::invalid_argument("rotate: cut beyond the word length");
    Word out;
    out.letters.insert(out.letters.end(), w.letters.begin() + cut, w.letters.end());
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.begin() + cut);
    return out;
}

std::optional<int> is_k_uniform(const Word& w) {
    if (w.letters.empty()) return std::nullopt;
    std::vector<std::pair<int, int>> counts;  // letter -> count
    for (int x : w.letters) {
        auto it = std::find_if(counts.begin(), counts.end(), [&](auto& p) { return p.first == x; });
        if (it == counts.end())
            counts.emplace_back(x, 1);
        else
            ++it->second;
    }
    int k = counts.front().second;
    for (auto& [_, c] : counts)
        if (c != k) return std::nullopt;
    return k;
}

std::vector<int> letters_present(const Word& w) {
    std::vector<int> out = w.letters;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Word extend_by_initial_perm(const Word& w) {
    Word out = initial_permutation(w);
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    return out;
}

std::vector<std::vector<int>> occurrence_neighbor_filter(const Word& w, int x) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < w.letters.size(); ++i)
        if (w.letters[i] == x) positions.push_back(i);
    if (positions.size() < 2)
        throw std::invalid_argument("occurrence_neighbor_filter requires >= 2 occurrences of the letter");
    std::vector<std::vector<int>> gaps;
    for (std::size_t gi = 0; gi + 1 < positions.size(); ++gi) {
        std::vector<std::pair<int, int>> counts;
        for (std::size_t i = positions[gi] + 1; i < positions[gi + 1]; ++i) {
            int y = w.letters[i];
            auto it = std::find_if(counts.begin(), counts.end(), [&](auto& p) { return p.first == y; });
            if (it == counts.end())
                counts.emplace_back(y, 1);
            else
                ++it->second;
        }
        std::vector<int> once;
        for (auto& [letter, c] : counts)
            if (c == 1) once.push_back(letter);
        std::sort(once.begin(), once.end());
        gaps.push_back(std::move(once));
    }
    return gaps;
}

Word construct_word_consecutive(const CirculantSpec& spec) {
    spec.validate();
    int k = static_cast<int>(spec.steps.size());
    for (int i = 0; i < k; ++i)
        if (spec.steps[i] != i + 1)
            throw std::invalid_argument("construct_word_consecutive requires R = {1, 2, ..., k}");
    // The morphism only represents the graph when the graph is 2k-regular.
    if (2 * k >= spec.n)
        throw std::invalid_argument("construct_word_consecutive requires 2k < n");
    Word w;
    w.letters.reserve(2 * static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) {
        w.letters.push_back(i);
        w.letters.push_back((i - k + spec.n) % spec.n);
    }
    return w;
}

Word construct_word_3reg(const CirculantSpec& spec) {
    spec.validate();
    int N = spec.n;
    if (N % 2 != 0 || spec.steps.size() != 2 || spec.steps[1] != N / 2)
        throw std::invalid_argument("construct_word_3reg requires a connection set {a, n} on 2n vertices");
    int a = spec.steps[0];
    int half = N / 2;
    if (std::gcd(a, N) != 1)
        throw std::invalid_argument("construct_word_3reg requires gcd(a, 2n) = 1");
    Word w;
    w.letters.reserve(3 * static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        int i = static_cast<int>((static_cast<long long>(j) * a) % N);
        w.letters.push_back(i);
        w.letters.push_back((i - a + N) % N);
        w.letters.push_back((i + half) % N);
    }
    return w;
}

// ---------------------------------------------------------------------------
// k-uniform representant search.

namespace {

struct WordSearch {
    const Graph& g;
    int n, k;
    std::size_t len;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    bool negation_symmetry;

    const std::atomic<int>* cancel = nullptr;
    int my_index = 0;
    bool cancelled = false;

    std::vector<int> word;
    std::vector<int> count;
    std::vector<int> last;             // per ordered pair slot (lo*n+hi): last letter seen
    std::vector<std::uint8_t> broken;  // restriction already has a double

    // Undo data per depth: previous `last` entries for the placed letter's row
    // and the pair slots newly marked broken.
    std::vector<std::vector<int>> prev_last;
    std::vector<std::vector<std::size_t>> newly_broken;

    std::optional<std::vector<int>> found;

    WordSearch(const Graph& graph, int uniform, std::uint64_t b, bool neg)
        : g(graph), n(graph.order()), k(uniform), len(static_cast<std::size_t>(n) * uniform),
          budget(b), negation_symmetry(neg), count(n, 0),
          last(static_cast<std::size_t>(n) * n, -1), broken(static_cast<std::size_t>(n) * n, 0),
          prev_last(len, std::vector<int>(n, -1)), newly_broken(len) {
        word.reserve(len);
    }

    std::size_t slot(int x, int y) const {
        return static_cast<std::size_t>(std::min(x, y)) * n + std::max(x, y);
    }

    bool stop() {
        if (nodes >= budget) {
            budget_hit = true;
            return true;
        }
        if (cancel && (nodes & 2047) == 0 &&
            cancel->load(std::memory_order_relaxed) < my_index) {
            cancelled = true;
            return true;
        }
        return false;
    }

    // One node expansion per attempt. Rejects placements that break an
    // adjacent pair's alternation or complete a non-adjacent pair alternating.
    bool try_place(int x) {
        ++nodes;
        std::uint64_t nb = g.neighbors(x);
        std::uint64_t m = nb;
        while (m) {
            int y = std::countr_zero(m);
            m &= m - 1;
            if (last[slot(x, y)] == x) return false;  // double in an adjacent pair
        }
        if (count[x] + 1 == k) {
            for (int y = 0; y < n; ++y) {
                if (y == x || ((nb >> y) & 1)) continue;
                if (count[y] != k) continue;
                std::size_t s = slot(x, y);
                bool will_break = broken[s] || last[s] == x;
                if (!will_break) return false;  // completed non-adjacent pair alternates
            }
        }
        std::size_t depth = word.size();
        auto& prev = prev_last[depth];
        auto& marked = newly_broken[depth];
        marked.clear();
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            std::size_t s = slot(x, y);
            prev[y] = last[s];
            if (last[s] == x && !broken[s]) {
                broken[s] = 1;
                marked.push_back(s);
            }
            last[s] = x;
        }
        ++count[x];
        word.push_back(x);
        return true;
    }

    void unplace() {
        int x = word.back();
        word.pop_back();
        --count[x];
        std::size_t depth = word.size();
        for (std::size_t s : newly_broken[depth]) broken[s] = 0;
        auto& prev = prev_last[depth];
        for (int y = 0; y < n; ++y)
            if (y != x) last[slot(x, y)] = prev[y];
    }

    bool candidate_ok(std::size_t depth, int x) const {
        if (count[x] >= k) return false;
        if (depth == 0) return x == 0;
        if (depth == 1 && negation_symmetry && x > n - x) return false;  // negation automorphism
        return true;
    }

    bool dfs() {
        std::size_t depth = word.size();
        if (depth == len) {
            found = word;
            return true;
        }
        for (int x = 0; x < n; ++x) {
            if (!candidate_ok(depth, x)) continue;
            if (stop()) return false;
            if (!try_place(x)) continue;
            if (dfs()) return true;
            unplace();
            if (budget_hit || cancelled) return false;
        }
        return false;
    }
};

std::vector<std::string> active_rules(bool negation) {
    std::vector<std::string> rules = {"first-position-letter-0", "adjacent-pair-no-double",
                                      "completed-pair-must-break"};
    if (negation) rules.push_back("negation-w1-representative");
    return rules;
}

WordSearchOutcome verify_found(const Graph& g, int k, std::vector<int> letters,
                               std::uint64_t nodes, std::vector<std::string> rules) {
    Word w{std::move(letters)};
    if (!represents(w, g) || is_k_uniform(w) != k)
        throw std::logic_error("word search produced an invalid representant");
    WordSearchOutcome out;
    out.word = std::move(w);
    out.nodes = nodes;
    out.pruning_rules = std::move(rules);
    return out;
}

WordSearchOutcome search_serial(const Graph& g, int k, const WordSearchOptions& opts) {
    WordSearch s(g, k, opts.budget, opts.circulant_negation_symmetry);
    s.dfs();
    if (s.found)
        return verify_found(g, k, *s.found, s.nodes, active_rules(opts.circulant_negation_symmetry));
    WordSearchOutcome out;
    out.exhausted = !s.budget_hit;
    out.nodes = s.nodes;
    out.pruning_rules = active_rules(opts.circulant_negation_symmetry);
    return out;
}

WordSearchOutcome search_parallel(const Graph& g, int k, const WordSearchOptions& opts) {
    int n = g.order();
    // Partitions: the letter placed at position 1 (position 0 is pinned to 0).
    std::vector<int> firsts;
    for (int x = 0; x < n; ++x) {
        if (x == 0 && k < 2) continue;
        if (opts.circulant_negation_symmetry && x > n - x) continue;
        firsts.push_back(x);
    }
    if (firsts.empty()) return search_serial(g, k, opts);
    int parts = static_cast<int>(firsts.size());
    std::uint64_t part_budget = std::max<std::uint64_t>(1, opts.budget / parts);

    enum class Part { found, exhausted, out_of_budget, skipped };
    std::vector<Part> status(parts, Part::skipped);
    std::vector<std::uint64_t> spent(parts, 0);
    std::vector<std::vector<int>> words(parts);
    std::atomic<int> best_found{parts};

#ifdef _OPENMP
    int nthreads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
#endif
    for (int idx = 0; idx < parts; ++idx) {
        if (best_found.load(std::memory_order_relaxed) < idx) continue;
        WordSearch s(g, k, part_budget, opts.circulant_negation_symmetry);
        s.cancel = &best_found;
        s.my_index = idx;
        bool dead = !s.try_place(0) || !s.try_place(firsts[idx]);
        if (!dead) s.dfs();
        spent[idx] = s.nodes;
        if (s.found) {
            status[idx] = Part::found;
            words[idx] = *s.found;
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
    auto rules = active_rules(opts.circulant_negation_symmetry);
    if (winner < parts) return verify_found(g, k, words[winner], spent[winner], std::move(rules));
    WordSearchOutcome out;
    out.nodes = std::accumulate(spent.begin(), spent.end(), std::uint64_t{0});
    out.exhausted = std::all_of(status.begin(), status.end(),
                                [](Part p) { return p == Part::exhausted; });
    out.pruning_rules = std::move(rules);
    return out;
}

}  // namespace

WordSearchOutcome search_representant(const Graph& g, int k, const WordSearchOptions& opts) {
    if (k < 1) throw std::invalid_argument("search_representant requires k >= 1");
    if (g.order() == 0) {
        WordSearchOutcome out;
        out.word = Word{};
        return out;
    }
    // A word of length n*k with n*k >= 2 always starts somewhere; the empty
    // graph on one vertex and other tiny cases all flow through the search.
    if (opts.threads == 1) return search_serial(g, k, opts);
    return search_parallel(g, k, opts);
}

RefuteCertificate refute_k_uniform(const Graph& g, int k, std::uint64_t node_limit, int threads) {
    WordSearchOptions opts;
    opts.budget = node_limit;
    opts.threads = threads;
    WordSearchOutcome outcome = search_representant(g, k, opts);
    RefuteCertificate cert;
    cert.k = k;
    cert.nodes_explored = outcome.nodes;
    cert.pruning_rules = outcome.pruning_rules;
    if (outcome.word) {
        cert.status = "found";
        cert.witness = outcome.word;
    } else if (outcome.exhausted) {
        cert.status = "refuted";
    } else {
        cert.status = "inconclusive";
    }
    return cert;
}

namespace {

// Construction shapes usable as upper-bound witnesses for a circulant hint.
std::optional<Word> construction_witness(const Graph& g, int k, const CirculantSpec& hint) {
    if (build_circulant(hint) != g) return std::nullopt;
    if (k == 2) {
        bool consecutive = true;
        for (std::size_t i = 0; i < hint.steps.size(); ++i)
            if (hint.steps[i] != static_cast<int>(i) + 1) consecutive = false;
        if (consecutive && 2 * static_cast<int>(hint.steps.size()) < hint.n)
            return construct_word_consecutive(hint);
    }
    if (k == 3 && hint.steps.size() == 2 && hint.n % 2 == 0 && hint.steps[1] == hint.n / 2 &&
        std::gcd(hint.steps[0], hint.n) == 1)
        return construct_word_3reg(hint);
    return std::nullopt;
}

}  // namespace

RepnBracket representation_number(const Graph& g, int k_max, std::uint64_t budget,
                                  const CirculantSpec* hint, int threads) {
    if (k_max < 1) throw std::invalid_argument("representation_number requires k_max >= 1");
    RepnBracket b;
    for (int k = 1; k <= k_max; ++k) {
        if (hint) {
            if (auto w = construction_witness(g, k, *hint)) {
                if (!represents(*w, g) || is_k_uniform(*w) != k)
                    throw std::logic_error("construction witness failed verification");
                b.attempts.push_back({k, "constructed", 0});
                b.upper = k;
                b.witness = std::move(w);
                break;
            }
        }
        WordSearchOptions opts;
        opts.budget = budget;
        opts.threads = threads;
        WordSearchOutcome outcome = search_representant(g, k, opts);
        b.nodes_explored += outcome.nodes;
        if (outcome.word) {
            b.attempts.push_back({k, "found", outcome.nodes});
            b.upper = k;
            b.witness = outcome.word;
            break;
        }
        if (outcome.exhausted) {
            b.attempts.push_back({k, "refuted", outcome.nodes});
            // No k-uniform representant implies none below k either (pi(w)w
            // lifts any j-uniform representant to j+1).
            b.lower = k + 1;
        } else {
            b.attempts.push_back({k, "inconclusive", outcome.nodes});
        }
    }
    b.lower_certified = true;
    return b;
}

}  // namespace wrc
