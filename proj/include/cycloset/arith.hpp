#pragma once

// Exact integer utilities: modular products without overflow, valuations,
// factorization, multiplicative orders, lift-the-exponent formulas and
// l-adic digit prefixes of -gamma/n.
//
// Every modulus handled here is below 2^63; products are reduced through a
// 128-bit intermediate.

#include "cycloset/error.hpp"

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace cycloset {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Exclusive upper bound for every modulus and intermediate value.
inline constexpr u64 capacity_bound = u64{1} << 63;

inline void require_capacity(u128 value, const char* what)
{
    if (value >= capacity_bound)
        fail(errc::capacity, what);
}

/// a * b, or a capacity error if the product reaches 2^63.
inline u64 checked_mul(u64 a, u64 b)
{
    u128 product = static_cast<u128>(a) * b;
    require_capacity(product, "product exceeds 2^63");
    return static_cast<u64>(product);
}

/// base^exp as an exact integer, or a capacity error.
inline u64 checked_pow(u64 base, unsigned exp)
{
    u64 result = 1;
    for (unsigned i = 0; i < exp; ++i)
        result = checked_mul(result, base);
    return result;
}

inline u64 mulmod(u64 a, u64 b, u64 modulus)
{
    require(modulus != 0, errc::precondition, "mulmod: modulus must be >= 1");
    return static_cast<u64>(static_cast<u128>(a) * b % modulus);
}

inline u64 powmod(u64 base, u64 exp, u64 modulus)
{
    require(modulus != 0, errc::precondition, "powmod: modulus must be >= 1");
    u64 result = 1 % modulus;
    base %= modulus;
    while (exp != 0) {
        if (exp & 1)
            result = static_cast<u64>(static_cast<u128>(result) * base % modulus);
        base = static_cast<u64>(static_cast<u128>(base) * base % modulus);
        exp >>= 1;
    }
    return result;
}

/// Nonnegative residue of a signed value.
inline u64 reduce(i128 value, u64 modulus)
{
    i128 r = value % static_cast<i128>(modulus);
    if (r < 0)
        r += modulus;
    return static_cast<u64>(r);
}

/// Inverse of a modulo m; not_invertible when gcd(a, m) != 1.
inline u64 inverse_mod(u64 a, u64 m)
{
    require(m != 0, errc::precondition, "inverse_mod: modulus must be >= 1");
    i128 r0 = m, r1 = a % m;
    i128 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i128 quot = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - quot * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - quot * s1};
    }
    if (r0 != 1)
        fail(errc::not_invertible, "inverse_mod: " + std::to_string(a) + " mod " + std::to_string(m));
    return reduce(s0, m);
}

template <typename T>
concept wide_integral = std::integral<T> || std::same_as<T, i128> || std::same_as<T, u128>;

/// l-adic valuation: the largest k with ell^k | x.
template <wide_integral T>
unsigned valuation(u64 ell, T x)
{
    require(ell >= 2, errc::precondition, "valuation: ell must be >= 2");
    if (x == 0)
        fail(errc::undefined_valuation, "valuation of 0");
    u128 magnitude;
    if constexpr (std::is_signed_v<T> || std::same_as<T, i128>)
        magnitude = x < 0 ? static_cast<u128>(-static_cast<i128>(x)) : static_cast<u128>(x);
    else
        magnitude = static_cast<u128>(x);
    unsigned k = 0;
    while (magnitude % ell == 0) {
        magnitude /= ell;
        ++k;
    }
    return k;
}

/// Largest k with ell^k < 2^63.
inline unsigned max_exponent(u64 ell)
{
    unsigned k = 0;
    u128 power = 1;
    while (power * ell < capacity_bound) {
        power *= ell;
        ++k;
    }
    return k;
}

// ---------------------------------------------------------------------------
// Primality and factorization

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n % p == 0)
            return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

struct PrimePower {
    u64 prime;
    unsigned exponent;

    bool operator==(const PrimePower&) const = default;
};

using Factorization = std::vector<PrimePower>;

namespace detail {

// Brent's variant of Pollard rho; n is odd, composite and has no factor below 10^6.
inline u64 pollard_brent(u64 n)
{
    for (u64 c = 1;; ++c) {
        auto step = [&](u64 x) { return static_cast<u64>((static_cast<u128>(x) * x + c) % n); };
        u64 y = 2, x = 2, ys = 2, g = 1, acc = 1;
        u64 run = 1;
        constexpr u64 batch = 128;
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < run; ++i)
                y = step(y);
            for (u64 k = 0; k < run && g == 1; k += batch) {
                ys = y;
                for (u64 i = 0; i < std::min(batch, run - k); ++i) {
                    y = step(y);
                    acc = mulmod(acc, x > y ? x - y : y - x, n);
                }
                g = std::gcd(acc, n);
            }
            run *= 2;
        }
        if (g == n) {
            do {
                ys = step(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

inline void split_large(u64 n, std::vector<u64>& primes)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    u64 d = pollard_brent(n);
    split_large(d, primes);
    split_large(n / d, primes);
}

} // namespace detail

/// Prime factorization, primes ascending: trial division to 10^6, then Pollard rho.
inline Factorization factor(u64 n)
{
    require(n >= 1, errc::precondition, "factor: n must be >= 1");
    std::vector<u64> primes;
    auto strip = [&](u64 p) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    };
    strip(2);
    strip(3);
    constexpr u64 trial_limit = 1'000'000;
    for (u64 p = 5; p <= trial_limit && p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    detail::split_large(n, primes);
    std::sort(primes.begin(), primes.end());

    Factorization result;
    for (u64 p : primes) {
        if (!result.empty() && result.back().prime == p)
            ++result.back().exponent;
        else
            result.push_back({p, 1});
    }
    return result;
}

/// Carmichael function of the integer whose factorization is given.
inline u64 carmichael(const Factorization& fac)
{
    u64 lambda = 1;
    for (auto [p, e] : fac) {
        u64 term;
        if (p == 2)
            term = e == 1 ? 1 : e == 2 ? 2 : checked_pow(2, e - 2);
        else
            term = checked_mul(checked_pow(p, e - 1), p - 1);
        lambda = checked_mul(lambda / std::gcd(lambda, term), term);
    }
    return lambda;
}

/// Order of m in (Z/nZ)^*, given the factorization of n.
inline u64 mul_order(u64 m, u64 n, const Factorization& n_factors)
{
    require(n >= 1, errc::precondition, "mul_order: modulus must be >= 1");
    if (n == 1)
        return 1;
    m %= n;
    if (std::gcd(m, n) != 1)
        fail(errc::not_invertible, "mul_order: gcd(" + std::to_string(m) + ", " + std::to_string(n) + ") != 1");
    u64 order = carmichael(n_factors);
    for (auto [r, e] : factor(order)) {
        for (unsigned i = 0; i < e && powmod(m, order / r, n) == 1; ++i)
            order /= r;
    }
    return order;
}

/// Smallest t >= 1 with m^t = 1 (mod n). Descends from lambda(n), no linear scan.
inline u64 mul_order(u64 m, u64 n) { return mul_order(m, n, n >= 1 ? factor(n) : Factorization{}); }

// ---------------------------------------------------------------------------
// Lift-the-exponent

/// v_ell(m^d - 1) for an odd prime ell dividing m - 1.
inline unsigned lte_odd(u64 ell, i64 m, u64 d)
{
    require(ell % 2 == 1 && is_prime(ell), errc::precondition, "lte_odd: ell must be an odd prime");
    require(d >= 1, errc::precondition, "lte_odd: d must be >= 1");
    i128 shifted = static_cast<i128>(m) - 1;
    require(reduce(shifted, ell) == 0, errc::precondition, "lte_odd: ell must divide m - 1");
    return valuation(ell, shifted) + valuation(ell, d);
}

struct TwoAdicValuations {
    unsigned minus; ///< v_2(m^d - 1)
    unsigned plus;  ///< v_2(m^d + 1)

    bool operator==(const TwoAdicValuations&) const = default;
};

/// (v_2(m^d - 1), v_2(m^d + 1)) for odd m by the three-case rule.
inline TwoAdicValuations lte_two(i64 m, u64 d)
{
    require(reduce(m, 2) == 1, errc::precondition, "lte_two: m must be odd");
    require(d >= 1, errc::precondition, "lte_two: d must be >= 1");
    i128 below = static_cast<i128>(m) - 1;
    i128 above = static_cast<i128>(m) + 1;
    if (reduce(m, 4) == 1)
        return {valuation(2, below) + valuation(2, d), 1};
    if (d % 2 == 1)
        return {1, valuation(2, above)};
    return {valuation(2, above) + valuation(2, d), 1};
}

/// v_ell(base^exp - 1) for an odd prime ell with base^exp = 1 (mod ell).
///
/// Reduces to exponent ord_ell(base) by the odd lift-the-exponent rule. The
/// remaining valuation of base^ord - 1 is read modulo ell^max_exponent(ell)
/// and saturates there; callers only compare it against depths that fit in
/// that bound.
inline unsigned valuation_of_power_minus_one(u64 ell, u64 base, u64 exp, u64 base_order_mod_ell)
{
    require(exp % base_order_mod_ell == 0, errc::precondition, "exponent is not a multiple of the order");
    unsigned cap = max_exponent(ell);
    u64 modulus = checked_pow(ell, cap);
    u64 reduced = powmod(base, base_order_mod_ell, modulus);
    unsigned head = reduced == 1 ? cap : valuation(ell, reduced - 1);
    return head + valuation(ell, exp / base_order_mod_ell);
}

// ---------------------------------------------------------------------------
// l-adic expansion of -gamma/n

/// Digits d_0..d_N of -gamma/n in Z_ell.
struct LadicPrefix {
    u64 ell;
    u64 n;
    i64 gamma;
    std::vector<u64> digits;

    /// Sum of the first `count` digits weighted by powers of ell.
    u64 value(std::size_t count) const
    {
        u64 total = 0;
        u64 power = 1;
        for (std::size_t k = 0; k < count && k < digits.size(); ++k) {
            total += checked_mul(digits[k], power);
            require_capacity(total, "LadicPrefix::value");
            if (k + 1 < count && k + 1 < digits.size())
                power = checked_mul(power, ell);
        }
        return total;
    }

    u64 value() const { return value(digits.size()); }
};

/// First N+1 digits of phi_{ell,n}(gamma) = -gamma/n, one digit at a time:
/// with c_k = (gamma + n * prefix_k) / ell^k, the next digit solves
/// c_k + n * d_k = 0 (mod ell), and c_{k+1} = (c_k + n * d_k) / ell.
inline LadicPrefix phi_prefix(u64 ell, u64 n, i64 gamma, unsigned last_index)
{
    require(ell >= 2 && is_prime(ell), errc::precondition, "phi_prefix: ell must be prime");
    require(n >= 1, errc::precondition, "phi_prefix: n must be >= 1");
    require(n % ell != 0, errc::precondition, "phi_prefix: ell must not divide n");
    const u64 n_inv = inverse_mod(n % ell, ell);

    LadicPrefix prefix{ell, n, gamma, {}};
    prefix.digits.reserve(last_index + 1);
    i128 carry = gamma;
    for (unsigned k = 0; k <= last_index; ++k) {
        u64 digit = mulmod(reduce(-carry, ell), n_inv, ell);
        prefix.digits.push_back(digit);
        carry = (carry + static_cast<i128>(n) * digit) / static_cast<i128>(ell);
    }
    return prefix;
}

// ---------------------------------------------------------------------------

/// A prime power q = p^e >= 2.
struct PrimePowerQ {
    u64 p;
    unsigned e;
    u64 q;

    static PrimePowerQ from_parts(u64 p, unsigned e)
    {
        require(is_prime(p), errc::not_prime_power, "p must be prime");
        require(e >= 1, errc::not_prime_power, "e must be >= 1");
        return {p, e, checked_pow(p, e)};
    }

    static PrimePowerQ from_value(u64 q)
    {
        require(q >= 2, errc::not_prime_power, "q must be >= 2");
        require_capacity(q, "q");
        Factorization fac = factor(q);
        if (fac.size() != 1)
            fail(errc::not_prime_power, std::to_string(q));
        return {fac[0].prime, fac[0].exponent, q};
    }

    bool operator==(const PrimePowerQ&) const = default;
};

} // namespace cycloset
