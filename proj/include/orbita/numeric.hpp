// Shared integer utilities: arbitrary-precision alias, primality by trial
// division, exact logarithm floors, divisor enumeration.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbita {

using Int = boost::multiprecision::cpp_int;

/// Domain error: bad input, violated precondition, exhausted budget.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A proof-backed internal check failed. Never expected to fire; if it does,
/// it is a falsification signal, not a recoverable condition.
struct InternalCheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::size_t bit_length(const Int& x) {
    if (x == 0) return 0;
    return static_cast<std::size_t>(boost::multiprecision::msb(boost::multiprecision::abs(x))) + 1;
}

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
}

inline std::int64_t next_prime(std::int64_t p) {
    std::int64_t q = p + 1;
    while (!is_prime(q)) ++q;
    return q;
}

/// Largest prime strictly below `x`, if any.
inline std::int64_t largest_prime_below(std::int64_t x) {
    for (std::int64_t q = x - 1; q >= 2; --q)
        if (is_prime(q)) return q;
    return 0;
}

inline Int int_pow(Int base, std::uint64_t e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// max{t >= 0 : base^t <= x} by exact power comparison. Floating-point floors
/// near integers are a correctness hazard, so none are used.
inline std::uint64_t floor_log(const Int& base, const Int& x) {
    if (base < 2) throw DomainError("floor_log: base must be >= 2");
    if (x < 1) throw DomainError("floor_log: argument must be >= 1");
    std::uint64_t t = 0;
    Int pw = base;
    while (pw <= x) {
        ++t;
        pw *= base;
    }
    return t;
}

/// Sorted divisors of n (n >= 1).
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline std::uint64_t to_u64(const Int& x, const char* what) {
    if (x < 0 || x > Int(UINT64_MAX)) throw DomainError(std::string(what) + ": value out of range");
    return static_cast<std::uint64_t>(x);
}

}  // namespace orbita
