#pragma once

#include <stdexcept>
#include <string>

namespace cycloset {

/// Failure categories reported by every public operation.
enum class errc {
    undefined_valuation, ///< valuation of zero requested
    not_invertible,      ///< gcd(m, n) != 1 where a unit is required
    precondition,        ///< a documented precondition does not hold
    capacity,            ///< a modulus or product would exceed 2^63
    out_of_range,        ///< index or depth outside the valid range
    not_prime_power,     ///< q is not of the form p^e
};

inline const char* to_string(errc code) noexcept
{
    switch (code) {
    case errc::undefined_valuation: return "undefined valuation";
    case errc::not_invertible: return "not invertible";
    case errc::precondition: return "precondition violated";
    case errc::capacity: return "capacity exceeded";
    case errc::out_of_range: return "out of range";
    case errc::not_prime_power: return "not a prime power";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool condition, errc code, const char* what)
{
    if (!condition)
        fail(code, what);
}

} // namespace cycloset
