// Compares the OpenMP-partitioned kernels against their serial references on
// a few fixed instances and prints a timing table.

#include <chrono>
#include <cstdio>
#include <string>

#include "wrcirc/orient.hpp"
#include "wrcirc/words.hpp"

using namespace wrc;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool agree) {
    std::printf("%-44s %10.1f ms %10.1f ms   x%.2f   %s\n", name.c_str(), serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, agree ? "agree" : "DISAGREE");
}

const char* status_name(StStatus s) {
    switch (s) {
        case StStatus::semi_transitive: return "semi-transitive";
        case StStatus::not_semi_transitive: return "not-semi-transitive";
        case StStatus::unknown: return "unknown";
    }
    return "?";
}

void bench_decide(const std::string& name, const Graph& g, std::uint64_t budget) {
    auto t0 = clock_type::now();
    StVerdict serial = decide_semi_transitive(g, budget);
    double serial_ms = ms_since(t0);
    t0 = clock_type::now();
    StVerdict parallel = decide_semi_transitive_parallel(g, budget);
    double parallel_ms = ms_since(t0);
    row("decide " + name, serial_ms, parallel_ms, serial.status == parallel.status);
    std::printf("    verdict: %s (serial %llu nodes, parallel %llu nodes)\n",
                status_name(serial.status),
                static_cast<unsigned long long>(serial.budget_spent),
                static_cast<unsigned long long>(parallel.budget_spent));
}

void bench_search(const std::string& name, const Graph& g, int k, std::uint64_t budget) {
    WordSearchOptions serial_opts{budget, false, 1};
    auto t0 = clock_type::now();
    WordSearchOutcome serial = search_representant(g, k, serial_opts);
    double serial_ms = ms_since(t0);
    WordSearchOptions parallel_opts{budget, false, 0};
    t0 = clock_type::now();
    WordSearchOutcome parallel = search_representant(g, k, parallel_opts);
    double parallel_ms = ms_since(t0);
    bool agree = serial.word.has_value() == parallel.word.has_value() &&
                 serial.exhausted == parallel.exhausted;
    row("search k=" + std::to_string(k) + " " + name, serial_ms, parallel_ms, agree);
}

void bench_shortcut(const std::string& name, const Orientation& o) {
    auto t0 = clock_type::now();
    auto reference = find_shortcut_by_paths(o);
    double ref_ms = ms_since(t0);
    t0 = clock_type::now();
    auto fast = find_shortcut(o);
    double fast_ms = ms_since(t0);
    row("shortcut " + name + " (paths vs closure)", ref_ms, fast_ms,
        reference.has_value() == fast.has_value());
}

}  // namespace

int main() {
    std::printf("%-44s %13s %13s\n", "kernel", "serial", "openmp");

    bench_shortcut("natural C(16;4,5,6,7,8)", natural_orientation(build_circulant({16, {4, 5, 6, 7, 8}})));
    bench_shortcut("natural C(12;1,2)", natural_orientation(build_circulant({12, {1, 2}})));

    bench_decide("W5", wheel(5), 1u << 20);
    bench_decide("C(13;1,5)", build_circulant({13, {1, 5}}), 400'000'000ULL);
    bench_decide("C(10;2,3,4)", build_circulant({10, {2, 3, 4}}), 400'000'000ULL);

    bench_search("C(6;1,3) refute", build_circulant({6, {1, 3}}), 2, 4'000'000'000ULL);
    bench_search("C(6;2,3) find", build_circulant({6, {2, 3}}), 3, 4'000'000'000ULL);
    bench_search("C(8;1,4) refute", build_circulant({8, {1, 4}}), 2, 4'000'000'000ULL);
    bench_search("C(10;1,5) refute", build_circulant({10, {1, 5}}), 2, 4'000'000'000ULL);
    bench_decide("C(14;1,3,4,5)", build_circulant({14, {1, 3, 4, 5}}), 1'000'000'000ULL);
    return 0;
}
