#pragma once

// q-cyclotomic cosets: orbits of multiplication by q on Z/nZ.
//
// Everything here walks orbits or sweeps the whole ring; it is the ground
// truth the structured enumeration is checked against.

#include "cycloset/arith.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace cycloset {

/// One orbit c_{n/q}(rep). `elements`, when present, lists rep * q^i for i < size.
struct CyclotomicCoset {
    u64 q = 0;
    u64 n = 1;
    u64 rep = 0;
    u64 size = 1;
    std::optional<std::vector<u64>> elements;

    /// Equality ignores materialization.
    friend bool operator==(const CyclotomicCoset& a, const CyclotomicCoset& b)
    {
        return a.q == b.q && a.n == b.n && a.rep == b.rep && a.size == b.size;
    }
};

/// The full set C_{n/q}, ordered by canonical representative.
struct CosetPartition {
    u64 q = 0;
    u64 n = 1;
    std::vector<CyclotomicCoset> cosets;

    u64 total_size() const
    {
        u64 total = 0;
        for (const auto& c : cosets)
            total += c.size;
        return total;
    }

    void sort_by_representative()
    {
        std::sort(cosets.begin(), cosets.end(),
                  [](const CyclotomicCoset& a, const CyclotomicCoset& b) { return a.rep < b.rep; });
    }
};

/// Default element budget for whole-ring sweeps.
inline constexpr u64 default_oracle_cap = 10'000'000;

namespace detail {

inline void check_ring(u64 q, u64 n)
{
    require(n >= 1, errc::precondition, "modulus must be >= 1");
    require_capacity(n, "modulus");
    require(q >= 2, errc::precondition, "q must be >= 2");
    if (std::gcd(q, n) != 1)
        fail(errc::not_invertible, "gcd(q, n) != 1 for q=" + std::to_string(q) + ", n=" + std::to_string(n));
}

// x -> x * q mod n, using a single 64-bit product when it cannot overflow.
class Multiplier {
public:
    Multiplier(u64 q, u64 n) : q_(q % n), n_(n), narrow_(n == 0 || q_ <= ~u64{0} / n) {}

    u64 operator()(u64 x) const
    {
        return narrow_ ? x * q_ % n_ : static_cast<u64>(static_cast<u128>(x) * q_ % n_);
    }

private:
    u64 q_;
    u64 n_;
    bool narrow_;
};

} // namespace detail

/// The orbit of gamma mod n, materialized; the canonical representative is gamma mod n.
inline CyclotomicCoset coset_of(u64 q, u64 n, u64 gamma)
{
    detail::check_ring(q, n);
    detail::Multiplier times_q(q, n);
    const u64 rep = gamma % n;
    std::vector<u64> elements{rep};
    for (u64 y = times_q(rep); y != rep; y = times_q(y))
        elements.push_back(y);
    u64 size = elements.size();
    return {q, n, rep, size, std::move(elements)};
}

/// tau = ord(q) modulo n / gcd(n, gamma), with gcd(n, 0) = n. No orbit walk.
inline u64 size_of(u64 q, u64 n, u64 gamma)
{
    detail::check_ring(q, n);
    const u64 g = std::gcd(n, gamma % n);
    const u64 reduced = n / g;
    return mul_order(q % reduced, reduced);
}

/// Smallest element of the coset as an integer in [0, n).
inline u64 leader(const CyclotomicCoset& coset)
{
    if (coset.elements)
        return *std::min_element(coset.elements->begin(), coset.elements->end());
    detail::Multiplier times_q(coset.q, coset.n);
    u64 best = coset.rep;
    for (u64 y = times_q(coset.rep); y != coset.rep; y = times_q(y))
        best = std::min(best, y);
    return best;
}

/// Canonical projection pi_{n/n'}: the coset of rep mod n' at modulus n'.
inline CyclotomicCoset project(const CyclotomicCoset& coset, u64 n_prime)
{
    require(n_prime >= 1 && coset.n % n_prime == 0, errc::precondition, "project: n' must divide n");
    const u64 rep = coset.rep % n_prime;
    return {coset.q, n_prime, rep, size_of(coset.q, n_prime, rep), std::nullopt};
}

/// Orbit labelling of Z/nZ: label[x] is the index of the coset containing x.
struct OrbitLabels {
    CosetPartition partition;     ///< representative of each coset is its leader
    std::vector<std::uint32_t> label;
};

/// One ascending sweep with a visited mask. Representatives are leaders.
inline CosetPartition enumerate_naive(u64 q, u64 n, u64 cap = default_oracle_cap)
{
    detail::check_ring(q, n);
    if (n > cap)
        fail(errc::capacity, "oracle sweep of " + std::to_string(n) + " elements exceeds cap " + std::to_string(cap));
    detail::Multiplier times_q(q, n);
    std::vector<bool> visited(n, false);
    CosetPartition result{q, n, {}};
    for (u64 x = 0; x < n; ++x) {
        if (visited[x])
            continue;
        u64 size = 0;
        u64 y = x;
        do {
            visited[y] = true;
            y = times_q(y);
            ++size;
        } while (y != x);
        result.cosets.push_back({q, n, x, size, std::nullopt});
    }
    return result;
}

/// Sweep that also records, for every residue, which coset holds it.
inline OrbitLabels label_orbits(u64 q, u64 n, u64 cap = default_oracle_cap)
{
    detail::check_ring(q, n);
    if (n > cap)
        fail(errc::capacity, "oracle sweep of " + std::to_string(n) + " elements exceeds cap " + std::to_string(cap));
    constexpr std::uint32_t unset = ~std::uint32_t{0};
    detail::Multiplier times_q(q, n);
    OrbitLabels out{{q, n, {}}, std::vector<std::uint32_t>(n, unset)};
    for (u64 x = 0; x < n; ++x) {
        if (out.label[x] != unset)
            continue;
        const auto index = static_cast<std::uint32_t>(out.partition.cosets.size());
        u64 size = 0;
        u64 y = x;
        do {
            out.label[y] = index;
            y = times_q(y);
            ++size;
        } while (y != x);
        out.partition.cosets.push_back({q, n, x, size, std::nullopt});
    }
    return out;
}

} // namespace cycloset
