#pragma once

// The l-adic q-cyclotomic system over a base coset c_{n/q}(gamma).
//
// Every compatible sequence of cosets modulo l^N n (N = 0, 1, ...) lying over
// c_{n/q}(gamma) is either the principal sequence, whose representatives are
// gamma + n * (-gamma/n truncated to N l-adic digits), or a stable sequence
// that follows the principal digits below some degree m, takes a different
// digit at m, and afterwards branches over a bounded number of free digits.
// The functions here enumerate those sequences truncated at a finite depth and
// give every component size in closed form.

#include "cycloset/arith.hpp"
#include "cycloset/cosets.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cycloset {

/// Behaviour of a coset c_{m/q}(gamma) under Z/lmZ -> Z/mZ.
enum class SplitKind {
    semi_splitting, ///< odd l with l not dividing q^tau - 1: 1 + |R(tau)| children
    splitting,      ///< l children of size tau
    stable,         ///< one child of size l * tau
};

inline const char* to_string(SplitKind kind)
{
    switch (kind) {
    case SplitKind::semi_splitting: return "semi-splitting";
    case SplitKind::splitting: return "splitting";
    case SplitKind::stable: return "stable";
    }
    return "?";
}

/// Quasi-stable or stable degree; the principal sequence has both infinite.
class Degree {
public:
    static constexpr Degree infinity() { return Degree{}; }
    static constexpr Degree at(unsigned value) { return Degree{value}; }

    constexpr bool is_infinite() const { return !value_.has_value(); }
    constexpr unsigned value() const { return *value_; }

    friend constexpr bool operator==(const Degree&, const Degree&) = default;

    std::string str() const { return is_infinite() ? "inf" : std::to_string(*value_); }

private:
    constexpr Degree() = default;
    constexpr explicit Degree(unsigned value) : value_(value) {}

    std::optional<unsigned> value_;
};

/// Which family of structure theorems governs the system over one base coset.
enum class Regime {
    odd_semi_splitting, ///< l odd, l does not divide q^tau - 1
    odd_splitting,      ///< l odd, l divides q^tau - 1
    two_adic_one,       ///< l = 2, q^tau = 1 (mod 4)
    two_adic_three,     ///< l = 2, q^tau = 3 (mod 4)
};

/// Invariants of the system over c_{n/q}(gamma) that the enumeration needs.
struct BranchRegime {
    u64 ell = 0;
    u64 q = 0;
    u64 n = 1;
    u64 gamma = 0;
    u64 tau = 1;
    Regime regime = Regime::odd_splitting;
    /// ord_l(q^tau) when semi-splitting, otherwise 1.
    u64 order = 1;
    /// v_l(q^{tau*order} - 1) for odd l; v_2(q^tau - 1) or v_2(q^tau + 1) for l = 2.
    unsigned v = 1;
    /// R(tau): smallest positive class representatives of (Z/lZ)^* / <q^tau>, ascending.
    std::vector<u64> transversal;

    /// Free digits of a stable family sit at positions m + j + shift, j = 1..v-1.
    unsigned shift() const { return regime == Regime::two_adic_three ? 1 : 0; }

    /// Number of generating series at each degree.
    u64 family_count() const
    {
        switch (regime) {
        case Regime::odd_semi_splitting: return transversal.size();
        case Regime::odd_splitting: return ell - 1;
        default: return 1;
        }
    }

    /// Digit at position m of the generating series with 1-based index i.
    u64 perturbed_digit(u64 principal_digit, u64 index) const
    {
        switch (regime) {
        case Regime::odd_semi_splitting: return (principal_digit + transversal[index - 1]) % ell;
        case Regime::odd_splitting: return index - 1 < principal_digit ? index - 1 : index;
        default: return 1 - principal_digit;
        }
    }

    /// Number of free digits a family born at degree m contributes at depth f.
    unsigned free_digits(unsigned m, unsigned depth) const
    {
        const long room = static_cast<long>(depth) - static_cast<long>(m) - 1 - static_cast<long>(shift());
        if (room <= 0)
            return 0;
        return std::min<unsigned>(v - 1, static_cast<unsigned>(room));
    }

    /// Size at depth N of a stable sequence born at degree m.
    u64 stable_size(unsigned m, unsigned depth) const
    {
        if (depth <= m)
            return tau;
        const u64 plateau = regime == Regime::odd_semi_splitting ? order * tau
                            : regime == Regime::two_adic_three  ? 2 * tau
                                                                : tau;
        if (regime == Regime::two_adic_three) {
            if (depth == m + 1)
                return tau;
            if (depth <= m + v + 1)
                return plateau;
            return checked_mul(checked_pow(2, depth - m - v), tau);
        }
        if (depth <= m + v)
            return plateau;
        return checked_mul(checked_pow(ell, depth - m - v), plateau);
    }

    Degree stable_degree(unsigned m) const
    {
        return Degree::at(m + 1 + v - (regime == Regime::two_adic_three ? 0 : 1));
    }
};

namespace detail {

inline void check_prime_ell(u64 ell)
{
    require(ell >= 2 && is_prime(ell), errc::precondition, "ell must be prime");
}

inline void check_tower(u64 ell, u64 q, u64 n)
{
    check_prime_ell(ell);
    require(q % ell != 0, errc::precondition, "ell must differ from the characteristic of q");
    require(n >= 1 && n % ell != 0, errc::precondition, "ell must not divide the base modulus");
    detail::check_ring(q, n);
}

/// R for a subgroup of (Z/lZ)^* of the given order: d, d' share a class iff d^o = d'^o.
inline std::vector<u64> transversal(u64 ell, u64 subgroup_order)
{
    const u64 classes = (ell - 1) / subgroup_order;
    std::vector<u64> reps;
    std::unordered_set<u64> seen;
    for (u64 d = 1; reps.size() < classes; ++d) {
        if (seen.insert(powmod(d, subgroup_order, ell)).second)
            reps.push_back(d);
    }
    return reps;
}

/// Transversals keyed by subgroup order, reused across one tower.
class TransversalCache {
public:
    explicit TransversalCache(u64 ell) : ell_(ell) {}

    const std::vector<u64>& get(u64 subgroup_order)
    {
        auto it = cache_.find(subgroup_order);
        if (it == cache_.end())
            it = cache_.emplace(subgroup_order, transversal(ell_, subgroup_order)).first;
        return it->second;
    }

private:
    u64 ell_;
    std::map<u64, std::vector<u64>> cache_;
};

/// v_l(q^exp - 1) where q^exp = 1 (mod l); ord_q is ord_l(q).
inline unsigned unit_valuation(u64 ell, u64 q, u64 exp, u64 ord_q)
{
    if (ell == 2)
        return lte_two(static_cast<i64>(q), exp).minus;
    return valuation_of_power_minus_one(ell, q, exp, ord_q);
}

inline SplitKind classify_known(u64 ell, u64 q, u64 m, u64 gamma, u64 tau, u64 ord_q)
{
    if (ell != 2 && powmod(q, tau, ell) != 1)
        return SplitKind::semi_splitting;
    gamma %= m;
    if (gamma == 0)
        return SplitKind::splitting;
    const long need = static_cast<long>(valuation(ell, m)) + 1 - static_cast<long>(valuation(ell, gamma));
    if (need <= 1)
        return SplitKind::splitting;
    return static_cast<long>(unit_valuation(ell, q, tau, ord_q)) >= need ? SplitKind::splitting
                                                                         : SplitKind::stable;
}

inline BranchRegime make_regime(u64 ell, u64 q, u64 n, u64 gamma, u64 tau, u64 ord_q,
                                TransversalCache* cache = nullptr)
{
    BranchRegime r;
    r.ell = ell;
    r.q = q;
    r.n = n;
    r.gamma = gamma % n;
    r.tau = tau;
    if (ell == 2) {
        const TwoAdicValuations vals = lte_two(static_cast<i64>(q), tau);
        if (powmod(q, tau, 4) == 1) {
            r.regime = Regime::two_adic_one;
            r.v = vals.minus;
        } else {
            r.regime = Regime::two_adic_three;
            r.v = vals.plus;
        }
        return r;
    }
    const u64 order = ord_q / std::gcd(ord_q, tau);
    if (order > 1) {
        r.regime = Regime::odd_semi_splitting;
        r.order = order;
        r.v = valuation_of_power_minus_one(ell, q, tau * order, ord_q);
        r.transversal = cache ? cache->get(order) : transversal(ell, order);
    } else {
        r.regime = Regime::odd_splitting;
        r.v = valuation_of_power_minus_one(ell, q, tau, ord_q);
    }
    return r;
}

inline u64 order_mod_prime(u64 q, u64 ell) { return ell == 2 ? 1 : mul_order(q % ell, ell); }

} // namespace detail

/// Regime data for c_{n/q}(gamma) in the l-adic tower over n.
inline BranchRegime analyze_branch(u64 ell, u64 q, u64 n, u64 gamma)
{
    detail::check_tower(ell, q, n);
    return detail::make_regime(ell, q, n, gamma, size_of(q, n, gamma), detail::order_mod_prime(q, ell));
}

/// Splitting behaviour of c_{m/q}(gamma) with respect to Z/lmZ : Z/mZ.
inline SplitKind classify(u64 ell, u64 q, u64 m, u64 gamma)
{
    detail::check_prime_ell(ell);
    require(q % ell != 0, errc::precondition, "classify: ell divides q");
    const u64 tau = size_of(q, m, gamma);
    return detail::classify_known(ell, q, m, gamma, tau, detail::order_mod_prime(q, ell));
}

/// The representative gamma_0 = gamma (mod m) in [0, lm) with v_l(gamma_0) >= v_l(m) + 1.
inline u64 lift_representative(u64 ell, u64 m, u64 gamma)
{
    detail::check_prime_ell(ell);
    require(m >= 1, errc::precondition, "lift_representative: m must be >= 1");
    require_capacity(static_cast<u128>(ell) * m, "lift_representative: l * m");
    const u64 g = gamma % m;
    if (g == 0)
        return 0;
    const unsigned vm = valuation(ell, m);
    const u64 unit = checked_pow(ell, vm);
    if (g % unit != 0)
        fail(errc::precondition, "lift_representative: no representative of " + std::to_string(g) +
                                     " is divisible by l^(v_l(m)+1)");
    const u64 m_unit = (m / unit) % ell;
    const u64 d = mulmod(reduce(-static_cast<i128>((g / unit) % ell), ell), inverse_mod(m_unit, ell), ell);
    return g + d * m;
}

/// R(tau), ascending; requires l not dividing q^tau - 1.
inline std::vector<u64> transversal_R(u64 ell, u64 q, u64 tau)
{
    detail::check_prime_ell(ell);
    require(q % ell != 0, errc::precondition, "transversal_R: ell divides q");
    const u64 image = powmod(q, tau, ell);
    require(image != 1, errc::precondition, "transversal_R: ell divides q^tau - 1");
    return detail::transversal(ell, mul_order(image, ell));
}

/// S = {0..l-1} minus the principal digit, ascending.
inline std::vector<u64> digit_complement_S(u64 ell, u64 phi_digit)
{
    require(phi_digit < ell, errc::out_of_range, "digit_complement_S: digit outside [0, l)");
    std::vector<u64> out;
    out.reserve(ell - 1);
    for (u64 d = 0; d < ell; ++d) {
        if (d != phi_digit)
            out.push_back(d);
    }
    return out;
}

namespace detail {

inline std::vector<CyclotomicCoset> decompose_known(u64 ell, u64 q, u64 m, u64 gamma, u64 tau, u64 ord_q,
                                                    SplitKind kind)
{
    const u64 lm = checked_mul(ell, m);
    gamma %= m;
    std::vector<CyclotomicCoset> children;
    switch (kind) {
    case SplitKind::semi_splitting: {
        const u64 base = lift_representative(ell, m, gamma);
        const u64 order = ord_q / std::gcd(ord_q, tau);
        children.push_back({q, lm, base, tau, std::nullopt});
        for (u64 d : transversal(ell, order))
            children.push_back({q, lm, static_cast<u64>((static_cast<u128>(d) * m + base) % lm), order * tau,
                                std::nullopt});
        break;
    }
    case SplitKind::splitting:
        for (u64 d = 0; d < ell; ++d)
            children.push_back({q, lm, gamma + d * m, tau, std::nullopt});
        break;
    case SplitKind::stable:
        children.push_back({q, lm, gamma, checked_mul(ell, tau), std::nullopt});
        break;
    }
    return children;
}

} // namespace detail

/// The cosets modulo l*m lying over c_{m/q}(gamma). Sizes come from the
/// splitting lemmas, not from orbit walks.
inline std::vector<CyclotomicCoset> preimage_decompose(u64 ell, u64 q, u64 m, u64 gamma)
{
    detail::check_prime_ell(ell);
    require(q % ell != 0, errc::precondition, "preimage_decompose: ell divides q");
    detail::check_ring(q, checked_mul(ell, m));
    const u64 tau = size_of(q, m, gamma);
    const u64 ord_q = detail::order_mod_prime(q, ell);
    return detail::decompose_known(ell, q, m, gamma, tau, ord_q,
                                   detail::classify_known(ell, q, m, gamma, tau, ord_q));
}

/// A finite generating series U_{m,i}: agrees with phi below m, differs at m, zero above.
struct GeneratingSeries {
    unsigned m = 0;
    u64 index = 1; ///< 1-based position in R(tau), in S_m, or 1 for l = 2
    std::vector<u64> digits;

    u64 value(u64 ell) const
    {
        return LadicPrefix{ell, 1, 0, digits}.value();
    }
};

/// All generating series at degree m of the system over c_{n/q}(gamma).
inline std::vector<GeneratingSeries> generating_series(u64 ell, u64 q, u64 n, u64 gamma, unsigned m)
{
    const BranchRegime regime = analyze_branch(ell, q, n, gamma);
    const LadicPrefix phi = phi_prefix(ell, n, static_cast<i64>(regime.gamma), m);
    std::vector<GeneratingSeries> out;
    for (u64 i = 1; i <= regime.family_count(); ++i) {
        GeneratingSeries s{m, i, phi.digits};
        s.digits[m] = regime.perturbed_digit(phi.digits[m], i);
        out.push_back(std::move(s));
    }
    return out;
}

enum class BranchKind { principal, stable };

struct BranchComponent {
    unsigned depth;
    u64 modulus;        ///< l^depth * n
    u64 representative; ///< in [0, modulus)
    u64 size;

    bool operator==(const BranchComponent&) const = default;
};

/// One element of PC(l, q, n)|_gamma truncated at a finite depth.
struct BranchDescriptor {
    BranchRegime regime;
    BranchKind kind = BranchKind::principal;
    unsigned m = 0;       ///< degree of the first departure from phi (stable only)
    u64 index = 0;        ///< generating-series index (stable only)
    std::vector<u64> t;   ///< free digits that are visible at this depth
    Degree qs = Degree::infinity();
    Degree s = Degree::infinity();
    /// Digits steering the representatives: rep at depth N is gamma + n * (first N digits).
    std::vector<u64> series;
    std::vector<BranchComponent> components;

    unsigned depth() const { return static_cast<unsigned>(components.size()) - 1; }
};

/// (qs, s): infinite for the principal sequence; m+1 and m+v(-1) otherwise.
inline std::pair<Degree, Degree> degrees(const BranchDescriptor& d)
{
    if (d.kind == BranchKind::principal)
        return {Degree::infinity(), Degree::infinity()};
    return {Degree::at(d.m + 1), d.regime.stable_degree(d.m)};
}

/// Closed-form size of the component at depth N.
inline u64 component_size(const BranchDescriptor& d, unsigned depth)
{
    require(depth <= d.depth(), errc::out_of_range, "component_size: depth beyond descriptor");
    if (d.kind == BranchKind::principal)
        return d.regime.tau;
    return d.regime.stable_size(d.m, depth);
}

namespace detail {

inline void fill_components(BranchDescriptor& d, unsigned depth)
{
    const u64 ell = d.regime.ell;
    u64 modulus = d.regime.n;
    u64 prefix = 0;
    u64 power = 1;
    d.components.clear();
    for (unsigned N = 0; N <= depth; ++N) {
        const u64 rep = d.regime.gamma + d.regime.n * prefix;
        d.components.push_back({N, modulus, rep, 0});
        d.components.back().size = component_size(d, N);
        if (N == depth)
            break;
        if (N < d.series.size())
            prefix += d.series[N] * power;
        power *= ell;
        modulus *= ell;
    }
}

inline void check_depth_capacity(u64 ell, u64 n, unsigned depth)
{
    checked_mul(checked_pow(ell, depth), n);
}

} // namespace detail

/// Every element of PC(l, q, n)|_gamma whose depth-f components are distinct:
/// the principal sequence first, then stable families by degree m, series
/// index and free-digit tuple in lexicographic order.
inline std::vector<BranchDescriptor> enumerate_branch(u64 ell, u64 q, u64 n, u64 gamma, unsigned depth)
{
    detail::check_tower(ell, q, n);
    detail::check_depth_capacity(ell, n, depth);
    const BranchRegime regime = analyze_branch(ell, q, n, gamma);
    const LadicPrefix phi = phi_prefix(ell, n, static_cast<i64>(regime.gamma), depth);

    std::vector<BranchDescriptor> out;
    BranchDescriptor principal{regime};
    principal.series.assign(phi.digits.begin(), phi.digits.begin() + depth);
    detail::fill_components(principal, depth);
    out.push_back(std::move(principal));

    for (unsigned m = 0; m < depth; ++m) {
        const unsigned k = regime.free_digits(m, depth);
        for (u64 i = 1; i <= regime.family_count(); ++i) {
            std::vector<u64> t(k, 0);
            while (true) {
                BranchDescriptor d{regime, BranchKind::stable, m, i, t};
                std::tie(d.qs, d.s) = degrees(d);
                d.series.assign(phi.digits.begin(), phi.digits.begin() + m);
                d.series.push_back(regime.perturbed_digit(phi.digits[m], i));
                d.series.resize(m + 1 + regime.shift(), 0);
                d.series.insert(d.series.end(), t.begin(), t.end());
                detail::fill_components(d, depth);
                out.push_back(std::move(d));

                // lexicographic successor, last digit fastest
                std::size_t pos = k;
                while (pos > 0 && t[pos - 1] == ell - 1)
                    t[--pos] = 0;
                if (pos == 0)
                    break;
                ++t[pos - 1];
            }
        }
    }
    return out;
}

/// Depth-f cosets of every element of PC(l, q, n)|_gamma, sizes in closed
/// form. `phi` must hold at least `depth` digits of -gamma/n.
inline void append_depth_cosets(const BranchRegime& regime, const LadicPrefix& phi, unsigned depth,
                                std::vector<CyclotomicCoset>& out)
{
    const u64 ell = regime.ell;
    const u64 modulus = regime.n * checked_pow(ell, depth);
    u64 prefix = 0; // phi digits below m
    u64 power = 1;  // ell^m
    for (unsigned m = 0; m < depth; ++m) {
        const unsigned k = regime.free_digits(m, depth);
        const u64 tuples = checked_pow(ell, k);
        const u64 stride = power * checked_pow(ell, 1 + regime.shift());
        const u64 size = regime.stable_size(m, depth);
        for (u64 i = 1; i <= regime.family_count(); ++i) {
            const u64 head = prefix + regime.perturbed_digit(phi.digits[m], i) * power;
            for (u64 tail = 0; tail < tuples; ++tail)
                out.push_back({regime.q, modulus, regime.gamma + regime.n * (head + tail * stride), size,
                               std::nullopt});
        }
        prefix += phi.digits[m] * power;
        power *= ell;
    }
    out.push_back({regime.q, modulus, regime.gamma + regime.n * prefix, regime.tau, std::nullopt});
}

} // namespace cycloset
