// Period bounds for integral periodic orbits in affine N-space: the divisor
// bound (every orbit size divides it), an elementary multiplicative bound,
// and the sharp plane bound.
#pragma once

#include "numeric.hpp"

#include <cstdint>
#include <optional>

namespace orbita {

inline std::uint64_t valuation(const Int& x, std::int64_t p) {
    require_prime(p);
    if (x == 0) throw DomainError("valuation of zero is undefined");
    Int y = boost::multiprecision::abs(x);
    std::uint64_t e = 0;
    while (y % p == 0) {
        y /= p;
        ++e;
    }
    return e;
}

// Prime enumeration below 2^N stays cheap only for small N; all bounds grow
// so fast that larger dimensions are out of enumeration reach anyway.
inline constexpr std::size_t MAX_BOUND_DIM = 16;

inline void check_bound_dim(std::size_t N) {
    if (N == 0) throw DomainError("dimension must be positive");
    if (N > MAX_BOUND_DIM)
        throw DomainError("dimension too large for bound evaluation (max " +
                          std::to_string(MAX_BOUND_DIM) + ")");
}

/// Largest prime below 2^N; absent for N = 1 (no prime below 2).
inline std::optional<std::int64_t> p_of(std::size_t N) {
    check_bound_dim(N);
    const std::int64_t q = largest_prime_below(std::int64_t(1) << N);
    if (q < 2) return std::nullopt;
    return q;
}

/// B(N) = 2^{2N} * prod over odd primes p < 2^N of p^{2*floor(log_p 2^N)}.
/// Every integral periodic orbit size in A^N divides B(N).
inline Int bound_divisor(std::size_t N) {
    check_bound_dim(N);
    Int b = int_pow(Int(2), 2 * N);
    const Int two_N = int_pow(Int(2), N);
    for (std::int64_t q = 3; q < two_N; q = next_prime(q))
        b *= int_pow(Int(q), 2 * floor_log(Int(q), two_N));
    return b;
}

/// C(N) = 2^{E2} * prod over odd primes q <= 2^N of q^{Eq} with
///   Eq = floor(log_q 2^N) + floor(log_q (2^N - 1))   (the mod-2
///        decomposition n = m*d*2^e controls every odd prime exponent),
///   E2 = floor(log_2 3^N) + floor(log_2 (3^N - 1))   (the mod-3
///        decomposition controls the prime 2).
/// Coarser than bound_divisor but derived from the decomposition alone.
inline Int bound_elementary(std::size_t N) {
    check_bound_dim(N);
    const Int three_N = int_pow(Int(3), N);
    Int c = int_pow(Int(2), floor_log(Int(2), three_N) + floor_log(Int(2), three_N - 1));
    const Int two_N = int_pow(Int(2), N);
    for (std::int64_t q = 3; q <= two_N; q = next_prime(q)) {
        const std::uint64_t eq = floor_log(Int(q), two_N) + floor_log(Int(q), two_N - 1);
        c *= int_pow(Int(q), eq);
    }
    return c;
}

/// Sharp bound for integral periodic orbits of the affine plane.
inline constexpr std::uint64_t bound_plane() { return 24; }

struct BoundsReport {
    std::size_t dim = 1;
    std::optional<std::int64_t> p_of_n;
    Int elementary = 0;
    Int divisor = 0;
    std::optional<std::uint64_t> plane;
};

inline BoundsReport bounds_report(std::size_t N) {
    BoundsReport r;
    r.dim = N;
    r.p_of_n = p_of(N);
    r.elementary = bound_elementary(N);
    r.divisor = bound_divisor(N);
    if (N == 2) r.plane = bound_plane();
    return r;
}

}  // namespace orbita
