#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wrcirc/graph.hpp"

namespace wrc {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

enum class Family {
    a1_quarter,          // natural orientation semi-transitive for a1 >= ceil((n+1)/4)
    consecutive_to_half, // natural orientation semi-transitive for R = {t..floor(n/2)}
    t_to_2t,             // W5 witness set for R = {t..2t} in the obstruction range
    consecutive_1_to_k,  // 2-uniform h-word represents C(n;1..k)
    three_regular,       // 3-uniform h-word represents C(2n;a,n), gcd(a,2n)=1
    bipartite_odd,       // X->Y orientation transitive for even n, all-odd R
    product_iso,         // P2 x C(2n+1;R) vs C(2(2n+1); 2dR u {2n+1})
};

std::string family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct SweepSpec {
    Family family = Family::a1_quarter;
    int n_lo = 0;
    int n_hi = 0;
    std::uint64_t budget = 100'000'000ULL;
    int threads = 0;  // 0 = OpenMP default

    void validate() const;  // throws std::invalid_argument
};

struct SweepReport {
    std::vector<nlohmann::json> records;
    nlohmann::json summary;
};

// Runs every instance of the family over [n_lo, n_hi], appending one JSON
// record per line to out_path (when non-empty) followed by a summary line.
// Records are canonical: sorted keys, no timestamps, deterministic order, so
// re-runs produce byte-identical files. With resume, instances whose keys are
// already present in the file are skipped. Wall-clock timings go to
// out_path + ".timings" (non-canonical sidecar).
SweepReport run_sweep(const SweepSpec& spec, const std::string& out_path = "", bool resume = false);

// Re-checks every witness in a report file (orientations re-run through
// is_semi_transitive, words through represents, isomorphisms re-validated)
// without re-running searches. On failure, first_bad_key names the record.
// Throws on malformed files.
bool verify_report(const std::string& path, std::string* first_bad_key = nullptr);

}  // namespace wrc
