// Decomposition certificates: for a periodic integer point with primitive
// period n and local period m mod p, the factorization n = m * d0 * p^e is
// computed and every arithmetic consequence is checked explicitly:
//   - gcd(d0, p) = 1 and d0 <= p^N - 1,
//   - d0 divides g, the idempotent-power invariant of the reduced Jacobian
//     of f^m along the orbit of P,
//   - the residue identity (I + D + ... + D^{n/m-1}) v = 0 mod p, where v
//     is the direction of the first-return offset f^m(P) - P scaled down
//     by its minimal p-adic valuation r.
#pragma once

#include "dynamics.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>

namespace orbita {

struct CertChecks {
    bool m_divides_n = false;
    bool period_product = false;
    bool d0_coprime_p = false;
    bool d0_leq_bound = false;
    bool d0_divides_g = false;
    bool v_nonzero = false;
    bool residue_identity = false;
    bool all_pass = false;
};

struct DecompositionCertificate {
    std::int64_t p = 2;
    std::uint64_t n = 1;
    std::uint64_t m = 1;
    std::uint64_t e = 0;
    std::uint64_t d0 = 1;
    std::uint64_t g = 1;
    std::optional<std::uint64_t> r;  // absent in the degenerate case n == m
    std::optional<ModPoint> v;       // likewise
    ModMatrix D_tilde{2, 1};
    CertChecks checks;
};

/// (I + A + ... + A^{t-1}, A^t) by doubling.
inline std::pair<ModMatrix, ModMatrix> geometric_matrix_sum(const ModMatrix& a, std::uint64_t t) {
    if (t == 0) return {ModMatrix(a.p, a.n), ModMatrix::identity(a.p, a.n)};
    if (t == 1) return {ModMatrix::identity(a.p, a.n), a};
    auto [sh, ah] = geometric_matrix_sum(a, t / 2);
    ModMatrix s = mat_add(sh, mat_mul(ah, sh));  // S_2h = S_h + A^h S_h
    ModMatrix at = mat_mul(ah, ah);
    if (t & 1) {
        s = mat_add(s, at);  // S_{2h+1} = S_2h + A^2h
        at = mat_mul(at, a);
    }
    return {std::move(s), std::move(at)};
}

/// Decomposition for a point already known to have primitive period n.
inline DecompositionCertificate decompose_known(const PolyMap& f, const Point& P, std::int64_t p,
                                                std::uint64_t n) {
    require_prime(p);
    if (n == 0) throw DomainError("period must be positive");
    DecompositionCertificate cert;
    cert.p = p;
    cert.n = n;

    const LocalOrbitReport local = orbit_mod_p(f, P, p);
    if (!local.on_cycle)
        throw InternalCheckError("reduction of a periodic point is not on a cycle");
    cert.m = *local.local_period;
    cert.checks.m_divides_n = n % cert.m == 0;
    if (!cert.checks.m_divides_n) {
        cert.checks.all_pass = false;
        return cert;  // nothing downstream is meaningful
    }

    const std::uint64_t q = n / cert.m;
    cert.e = valuation(Int(q), p);
    std::uint64_t pe = 1;
    for (std::uint64_t i = 0; i < cert.e; ++i) pe *= static_cast<std::uint64_t>(p);
    cert.d0 = q / pe;
    cert.checks.period_product = n == cert.m * cert.d0 * pe;
    cert.checks.d0_coprime_p = cert.d0 % static_cast<std::uint64_t>(p) != 0;

    cert.D_tilde = reduce_mod(jacobian_along_orbit(f, P, cert.m), p);
    cert.g = g_of(cert.D_tilde);
    cert.checks.d0_leq_bound = Int(cert.d0) <= int_pow(Int(p), f.dim) - 1;
    cert.checks.d0_divides_g = cert.g % cert.d0 == 0;

    if (n > cert.m) {
        Point q_pt = P;
        for (std::uint64_t s = 0; s < cert.m; ++s) q_pt = eval_map(f, q_pt);
        std::vector<Int> offset;
        offset.reserve(f.dim);
        bool any_nonzero = false;
        for (std::size_t i = 0; i < f.dim; ++i) {
            offset.push_back(q_pt.coords[i] - P.coords[i]);
            if (offset.back() != 0) any_nonzero = true;
        }
        if (!any_nonzero)
            throw InternalCheckError("first-return offset vanished although n > m");
        std::uint64_t r = std::numeric_limits<std::uint64_t>::max();
        for (const auto& c : offset)
            if (c != 0) r = std::min(r, valuation(c, p));
        cert.r = r;
        Int pr = int_pow(Int(p), r);
        std::vector<std::int64_t> vcoords;
        vcoords.reserve(f.dim);
        for (const auto& c : offset) vcoords.push_back(mod_reduce(Int(c / pr), p));
        cert.v = ModPoint(p, std::move(vcoords));
        cert.checks.v_nonzero = !cert.v->is_zero();
        const ModMatrix s = geometric_matrix_sum(cert.D_tilde, q).first;
        cert.checks.residue_identity = cert.checks.v_nonzero && mat_vec(s, *cert.v).is_zero();
    } else {
        cert.checks.v_nonzero = true;       // vacuous: no offset to scale
        cert.checks.residue_identity = true;
    }

    cert.checks.all_pass = cert.checks.m_divides_n && cert.checks.period_product &&
                           cert.checks.d0_coprime_p && cert.checks.d0_leq_bound &&
                           cert.checks.d0_divides_g && cert.checks.v_nonzero &&
                           cert.checks.residue_identity;
    return cert;
}

/// Decides periodicity first; the point must be verifiably periodic.
inline DecompositionCertificate decompose(const PolyMap& f, const Point& P, std::int64_t p,
                                          const DecideConfig& cfg = {}) {
    const Decision dec = decide_periodic(f, P, cfg);
    if (dec.verdict == Verdict::Unresolved)
        throw DomainError("periodicity of the point could not be resolved: " +
                          dec.unresolved_reason);
    if (dec.verdict == Verdict::NotPeriodic)
        throw DomainError("point is not periodic; decomposition requires a periodic point");
    return decompose_known(f, P, p, *dec.n);
}

}  // namespace orbita
