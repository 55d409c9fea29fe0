// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "cycloset/cycloset.hpp"
#include "oracle.hpp"
#include "properties.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace cycloset;

namespace {

// Pinned thresholds.
constexpr double ac1_limit_ms = 1.0;
constexpr double ac2_limit_ms = 1.0;
constexpr double ac4_limit_ms = 50.0;
constexpr double ac5_limit_s = 60.0;
constexpr double ac7_min_speedup = 10.0;
constexpr std::size_t timing_repeats = 21;
constexpr u64 preimage_limit = 100'000;
constexpr u64 preimage_q = 5;

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start)
{
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

/// Median wall time of `repeats` calls, in milliseconds.
double median_ms(const std::function<void()>& f, std::size_t repeats = timing_repeats)
{
    std::vector<double> samples;
    for (std::size_t i = 0; i < repeats; ++i) {
        const auto t0 = clock_type::now();
        f();
        samples.push_back(seconds_since(t0) * 1e3);
    }
    std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
    return samples[samples.size() / 2];
}

int failures = 0;

void report(const char* id, bool pass, const std::string& detail)
{
    std::cout << (pass ? "PASS " : "FAIL ") << id << ": " << detail << std::endl;
    failures += pass ? 0 : 1;
}

void note(const std::string& text) { std::cout << "    note: " << text << std::endl; }

template <typename T>
std::string join(const std::vector<T>& v)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? "," : "") << v[i];
    return out.str();
}

// ---------------------------------------------------------------------------

void ac1()
{
    const auto p = enumerate_cosets(5, 16);
    std::vector<u64> reps, sizes;
    for (const auto& c : p.cosets) {
        reps.push_back(c.rep);
        sizes.push_back(c.size);
    }
    const bool exact = reps == std::vector<u64>{0, 1, 2, 3, 4, 6, 8, 12} &&
                       sizes == std::vector<u64>{1, 4, 2, 4, 1, 2, 1, 1};
    const double ms = median_ms([] { enumerate_cosets(5, 16); });
    report("AC1 mod-16 golden", exact && ms < ac1_limit_ms,
           "reps {" + join(reps) + "} sizes (" + join(sizes) + "), median " + std::to_string(ms) + " ms < " +
               std::to_string(ac1_limit_ms) + " ms");
}

void ac2()
{
    std::vector<u64> reps, sizes;
    for (const auto& d : enumerate_branch(3, 5, 16, 0, 5)) {
        reps.push_back(d.components.back().representative);
        sizes.push_back(d.components.back().size);
    }
    const bool exact = reps == std::vector<u64>{0, 16, 48, 144, 432, 1296} &&
                       sizes == std::vector<u64>{1, 162, 54, 18, 6, 2};
    const double ms = median_ms([] { enumerate_branch(3, 5, 16, 0, 5); });
    report("AC2 example item (1) golden", exact && ms < ac2_limit_ms,
           "reps {" + join(reps) + "} sizes {" + join(sizes) + "}, median " + std::to_string(ms) + " ms < " +
               std::to_string(ac2_limit_ms) + " ms");
}

struct PrintedItem {
    u64 gamma;
    std::vector<u64> printed_reps;
    std::vector<u64> printed_sizes;
    std::vector<u64> reps;  // oracle-confirmed
    std::vector<u64> sizes; // oracle-confirmed
};

void ac3()
{
    const std::vector<u64> doubled{1, 324, 324, 108, 108, 36, 36, 12, 12, 4, 4};
    const std::vector<u64> tau4{4, 324, 324, 108, 108, 36, 36, 12, 12, 4, 4};
    const std::vector<u64> tau2{2, 162, 162, 54, 54, 18, 18, 6, 6, 2, 2};
    const std::vector<u64> chain{1, 162, 54, 18, 6, 2};
    const std::vector<PrintedItem> items{
        {1, {2673, 1, 17, 33, 129, 225, 369, 513, 945, 81, 1377}, doubled,
         {2673, 1, 17, 33, 129, 225, 369, 513, 945, 81, 1377}, tau4},
        {2, {1458, 2, 34, 66, 114, 18, 306, 594, 1026, 162, 2754}, doubled,
         {1458, 2, 34, 66, 114, 18, 306, 594, 1026, 162, 2754}, tau2},
        {3, {243, 19, 35, 3, 51, 99, 387, 675, 1107, 1539, 2835}, doubled,
         {243, 19, 35, 3, 51, 99, 387, 675, 1107, 1539, 2835}, tau4},
        {4, {2916, 4, 84, 36, 756, 324}, chain, {2916, 4, 84, 36, 756, 324}, chain},
        {6, {486, 22, 38, 6, 102, 198, 342, 54, 918, 1782, 3078}, doubled,
         {486, 22, 38, 6, 102, 198, 342, 54, 918, 1782, 3078}, tau2},
        {8, {1344, 40, 120, 360, 1080, 3240}, chain, {1944, 40, 120, 360, 1080, 3240}, chain},
        {12, {972, 28, 12, 252, 108, 2268}, chain, {972, 28, 12, 252, 108, 2268}, chain},
    };
    bool pass = true;
    std::vector<std::string> notes;
    for (const auto& item : items) {
        std::vector<u64> reps, sizes;
        for (const auto& d : enumerate_branch(3, 5, 16, item.gamma, 5)) {
            reps.push_back(d.components.back().representative);
            sizes.push_back(d.components.back().size);
        }
        bool oracle_ok = true;
        for (std::size_t i = 0; i < item.reps.size(); ++i)
            oracle_ok = oracle_ok && oracle::orbit_size(5, 3888, item.reps[i]) == item.sizes[i];
        pass = pass && oracle_ok && reps == item.reps && sizes == item.sizes;
        for (std::size_t i = 0; i < item.reps.size(); ++i) {
            if (item.printed_reps[i] != item.reps[i])
                notes.push_back("gamma=" + std::to_string(item.gamma) + ": printed representative " +
                                std::to_string(item.printed_reps[i]) + ", construction and oracle give " +
                                std::to_string(item.reps[i]));
            if (item.printed_sizes[i] != item.sizes[i])
                notes.push_back("gamma=" + std::to_string(item.gamma) + ": printed |c(" + std::to_string(item.reps[i]) +
                                ")|=" + std::to_string(item.printed_sizes[i]) + ", oracle gives " +
                                std::to_string(item.sizes[i]));
        }
    }
    report("AC3 representative reconstruction", pass,
           "7 base cosets c_{16/5}(gamma), gamma in {1,2,3,4,6,8,12}; " + std::to_string(notes.size()) +
               " printed values differ from the oracle");
    for (const auto& n : notes)
        note(n);
}

void ac4()
{
    const auto t0 = clock_type::now();
    const auto algorithm = enumerate_cosets(5, 3888);
    const double algorithm_ms = seconds_since(t0) * 1e3;
    const auto t1 = clock_type::now();
    const auto naive = enumerate_naive(5, 3888);
    const double naive_ms = seconds_since(t1) * 1e3;

    std::map<std::pair<u64, u64>, int> keys;
    for (const auto& c : algorithm.cosets)
        ++keys[{leader(c), c.size}];
    for (const auto& c : naive.cosets)
        --keys[{c.rep, c.size}];
    const bool same = std::all_of(keys.begin(), keys.end(), [](const auto& kv) { return kv.second == 0; });
    const bool independent = props::partition_matches(5, 3888);
    std::size_t singletons = 0;
    for (const auto& c : algorithm.cosets)
        singletons += c.size == 1 ? 1 : 0;
    const double total_ms = algorithm_ms + naive_ms;
    report("AC4 full example oracle equality",
           same && independent && algorithm.cosets.size() == 68 && algorithm.total_size() == 3888 &&
               total_ms < ac4_limit_ms,
           std::to_string(algorithm.cosets.size()) + " cosets, sum " + std::to_string(algorithm.total_size()) +
               ", structured " + std::to_string(algorithm_ms) + " ms + naive " + std::to_string(naive_ms) +
               " ms < " + std::to_string(ac4_limit_ms) + " ms");
    note("size-1 cosets: " + std::to_string(singletons) + " (0, 972, 1944, 2916); the oracle agrees");
}

void ac5()
{
    const auto t0 = clock_type::now();
    const props::Result r = props::sweep(props::field_sizes(), 2000);
    const double s = seconds_since(t0);
    report("AC5 sweep oracle equality", r.ok() && s < ac5_limit_s,
           "q in {2,3,4,5,7,8,9,11,13,16,25,27}, n <= 2000: " + r.summary() + ", " + std::to_string(s) + " s < " +
               std::to_string(ac5_limit_s) + " s");
}

void ac6()
{
    struct Suite {
        const char* name;
        std::function<props::Result()> run;
    };
    const std::vector<Suite> suites{
        {"phi-prefix divisibility (10^4 random tuples)", [] { return props::phi_divisibility(10'000); }},
        {"LTE vs direct valuations (m <= 10^4, d <= 12)", [] { return props::lte_agreement(); }},
        {"preimage arity / exact cover / divisible child (q=5, all l*m <= 10^5)",
         [] { return props::preimage_laws(preimage_q, preimage_limit); }},
        {"degree law (200 random towers, depth 8)", [] { return props::degree_law(200, 8); }},
        {"leader stability (10^3 stable extensions)", [] { return props::leader_stability(1000); }},
    };
    bool pass = true;
    std::vector<std::string> lines;
    for (const auto& suite : suites) {
        const auto t0 = clock_type::now();
        const props::Result r = suite.run();
        pass = pass && r.ok();
        lines.push_back(std::string(r.ok() ? "ok   " : "bad  ") + suite.name + ": " + r.summary() + " (" +
                        std::to_string(seconds_since(t0)) + " s)");
    }
    report("AC6 property suites", pass, std::to_string(suites.size()) + " suites, exact");
    for (const auto& l : lines)
        note(l);
}

void ac7()
{
    const u64 n = 16ull * 243 * 343 * 121; // 161,363,664
    const u64 q = 5;
    const auto t0 = clock_type::now();
    const auto algorithm = enumerate_cosets(q, n);
    const double algorithm_s = seconds_since(t0);
    const auto t1 = clock_type::now();
    const auto naive = enumerate_naive(q, n, n);
    const double naive_s = seconds_since(t1);

    std::map<u64, std::size_t> a_sizes, n_sizes;
    for (const auto& c : algorithm.cosets)
        ++a_sizes[c.size];
    for (const auto& c : naive.cosets)
        ++n_sizes[c.size];
    const double speedup = naive_s / std::max(algorithm_s, 1e-9);
    report("AC7 performance", a_sizes == n_sizes && algorithm.cosets.size() == naive.cosets.size() &&
                                  speedup >= ac7_min_speedup,
           "n=" + std::to_string(n) + " q=5: " + std::to_string(algorithm.cosets.size()) + " cosets, structured " +
               std::to_string(algorithm_s * 1e3) + " ms, naive " + std::to_string(naive_s * 1e3) + " ms, speedup " +
               std::to_string(speedup) + "x >= " + std::to_string(ac7_min_speedup) + "x");
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, void (*)()>> criteria{
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}};
    for (const auto& [id, run] : criteria) {
        try {
            run();
        } catch (const std::exception& e) {
            report(id, false, std::string("exception: ") + e.what());
        }
    }
    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
