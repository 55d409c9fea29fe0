#pragma once

// End-to-end enumeration: lift a partition of Z/nZ through an l-power tower,
// then chain towers over the prime factorization of n starting from the single
// coset {0} modulo 1.

#include "cycloset/arith.hpp"
#include "cycloset/cosets.hpp"
#include "cycloset/system.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace cycloset {

/// n = prod l_j^{f_j}, primes ascending.
struct FactorizationPlan {
    std::vector<PrimePower> factors;

    u64 product() const
    {
        u64 n = 1;
        for (const auto& f : factors)
            n = checked_mul(n, checked_pow(f.prime, f.exponent));
        return n;
    }

    bool operator==(const FactorizationPlan&) const = default;
};

inline FactorizationPlan factorize(u64 n)
{
    require(n >= 1, errc::precondition, "factorize: n must be >= 1");
    require_capacity(n, "factorize");
    return {factor(n)};
}

/// Worker count: hardware concurrency, capped by CYCLOSET_THREADS when set.
inline unsigned default_threads()
{
    unsigned count = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CYCLOSET_THREADS")) {
        char* end = nullptr;
        const unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && cap >= 1)
            count = std::min<unsigned long>(count, cap);
    }
    return count;
}

namespace detail {

inline void lift_range(u64 ell, u64 q, u64 n, unsigned depth, u64 ord_q, const std::vector<CyclotomicCoset>& base,
                       std::size_t begin, std::size_t end, std::vector<CyclotomicCoset>& out)
{
    TransversalCache cache(ell);
    for (std::size_t i = begin; i < end; ++i) {
        const CyclotomicCoset& c = base[i];
        const BranchRegime regime = make_regime(ell, q, n, c.rep, c.size, ord_q, &cache);
        const LadicPrefix phi = phi_prefix(ell, n, static_cast<i64>(regime.gamma), depth == 0 ? 0 : depth - 1);
        append_depth_cosets(regime, phi, depth, out);
    }
}

inline void sort_cosets(std::vector<CyclotomicCoset>& cosets)
{
    std::sort(cosets.begin(), cosets.end(),
              [](const CyclotomicCoset& a, const CyclotomicCoset& b) { return a.rep < b.rep; });
}

} // namespace detail

/// C_{l^f n / q} from C_{n/q}: every base coset contributes the depth-f
/// components of its l-adic system. Base sizes are trusted as given.
inline CosetPartition lift_partition(u64 ell, u64 q, u64 n, unsigned depth, const CosetPartition& base,
                                     unsigned threads = 1)
{
    detail::check_tower(ell, q, n);
    require(base.n == n && base.q == q, errc::precondition, "lift_partition: base partition is for another ring");
    const u64 modulus = checked_mul(checked_pow(ell, depth), n);
    if (depth == 0)
        return base;

    const u64 ord_q = detail::order_mod_prime(q, ell);
    const std::vector<CyclotomicCoset>& cosets = base.cosets;
    CosetPartition result{q, modulus, {}};

    constexpr std::size_t min_chunk = 512;
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, cosets.size() / min_chunk));
    if (workers == 1) {
        detail::lift_range(ell, q, n, depth, ord_q, cosets, 0, cosets.size(), result.cosets);
    } else {
        std::vector<std::vector<CyclotomicCoset>> parts(workers);
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        const std::size_t begin = cosets.size() * w / workers;
                        const std::size_t end = cosets.size() * (w + 1) / workers;
                        detail::lift_range(ell, q, n, depth, ord_q, cosets, begin, end, parts[w]);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e)
                std::rethrow_exception(e);
        }
        std::size_t total = 0;
        for (const auto& p : parts)
            total += p.size();
        result.cosets.reserve(total);
        for (auto& p : parts)
            result.cosets.insert(result.cosets.end(), p.begin(), p.end());
    }
    detail::sort_cosets(result.cosets);
    return result;
}

enum class PrimeOrder { ascending, descending };

struct EnumerateOptions {
    unsigned threads = 1;
    PrimeOrder order = PrimeOrder::ascending;
};

/// C_{n/q} by successive lifting over the prime factors of n.
inline CosetPartition enumerate_cosets(u64 q, u64 n, const EnumerateOptions& options = {})
{
    PrimePowerQ::from_value(q);
    detail::check_ring(q, n);
    FactorizationPlan plan = factorize(n);
    if (options.order == PrimeOrder::descending)
        std::reverse(plan.factors.begin(), plan.factors.end());

    CosetPartition part{q, 1, {{q, 1, 0, 1, std::nullopt}}};
    for (const auto& [ell, exponent] : plan.factors)
        part = lift_partition(ell, q, part.n, exponent, part, options.threads);
    return part;
}

struct CosetMismatch {
    u64 oracle_leader;    ///< leader of the oracle coset involved, or n if none
    u64 algorithm_leader; ///< leader of the algorithm coset involved, or n if none
    u64 oracle_size;
    u64 algorithm_size;
};

struct VerificationReport {
    u64 q = 0;
    u64 n = 1;
    bool match = false;
    std::size_t algorithm_count = 0;
    std::size_t oracle_count = 0;
    std::vector<CosetMismatch> mismatches;
    double algorithm_seconds = 0;
    double oracle_seconds = 0;
};

/// Compares enumerate_cosets against the orbit sweep as partitions of Z/nZ.
inline VerificationReport verify(u64 q, u64 n, u64 cap = default_oracle_cap, const EnumerateOptions& options = {})
{
    using clock = std::chrono::steady_clock;
    require(n <= cap, errc::capacity, "verify: n exceeds the oracle cap");

    VerificationReport report{q, n};
    const auto t0 = clock::now();
    const CosetPartition algorithm = enumerate_cosets(q, n, options);
    const auto t1 = clock::now();
    const OrbitLabels oracle = label_orbits(q, n, cap);
    const auto t2 = clock::now();
    report.algorithm_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.oracle_seconds = std::chrono::duration<double>(t2 - t1).count();
    report.algorithm_count = algorithm.cosets.size();
    report.oracle_count = oracle.partition.cosets.size();

    constexpr std::size_t max_reported = 16;
    std::vector<bool> claimed(oracle.partition.cosets.size(), false);
    for (const auto& c : algorithm.cosets) {
        const std::uint32_t label = c.rep < n ? oracle.label[c.rep] : ~std::uint32_t{0};
        const bool valid = label != ~std::uint32_t{0};
        const CyclotomicCoset* truth = valid ? &oracle.partition.cosets[label] : nullptr;
        if (valid && !claimed[label] && truth->size == c.size) {
            claimed[label] = true;
            continue;
        }
        if (report.mismatches.size() < max_reported)
            report.mismatches.push_back({truth ? truth->rep : n, c.rep < n ? leader(c) : n, truth ? truth->size : 0,
                                         c.size});
        else
            break;
    }
    for (std::size_t i = 0; i < claimed.size() && report.mismatches.size() < max_reported; ++i) {
        if (!claimed[i]) {
            const auto& truth = oracle.partition.cosets[i];
            report.mismatches.push_back({truth.rep, n, truth.size, 0});
        }
    }
    report.match = report.mismatches.empty();
    return report;
}

} // namespace cycloset
