// Dense linear algebra over the prime field F_p (p < 2^31): matrix and
// vector arithmetic, idempotent-power invariants, and exhaustive sweeps
// over all n-by-n matrices.
#pragma once

#include "numeric.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

namespace orbita {

inline std::int64_t mod_reduce(const Int& x, std::int64_t p) {
    Int r = x % p;
    if (r < 0) r += p;
    return static_cast<std::int64_t>(r);
}

inline std::int64_t mod_reduce(std::int64_t x, std::int64_t p) {
    std::int64_t r = x % p;
    if (r < 0) r += p;
    return r;
}

struct ModMatrix {
    std::int64_t p = 2;
    std::size_t n = 1;
    std::vector<std::int64_t> e;  // row-major, residues in [0,p)

    ModMatrix(std::int64_t p_, std::size_t n_) : p(p_), n(n_), e(n_ * n_, 0) {
        require_prime(p_);
        if (n_ == 0) throw DomainError("matrix dimension must be positive");
    }

    std::int64_t& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
    std::int64_t at(std::size_t i, std::size_t j) const { return e[i * n + j]; }

    static ModMatrix identity(std::int64_t p, std::size_t n) {
        ModMatrix m(p, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    bool is_zero() const {
        for (auto x : e)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const ModMatrix&) const = default;
};

struct ModPoint {
    std::int64_t p = 2;
    std::vector<std::int64_t> coords;

    ModPoint(std::int64_t p_, std::vector<std::int64_t> c) : p(p_), coords(std::move(c)) {
        require_prime(p_);
        for (auto& x : coords) x = mod_reduce(x, p);
    }

    bool is_zero() const {
        for (auto x : coords)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const ModPoint&) const = default;
};

inline ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b) {
    if (a.p != b.p || a.n != b.n) throw DomainError("matrix shape/modulus mismatch");
    ModMatrix c(a.p, a.n);
    const std::size_t n = a.n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            unsigned __int128 acc = 0;
            for (std::size_t k = 0; k < n; ++k)
                acc += static_cast<unsigned __int128>(a.at(i, k)) * static_cast<std::uint64_t>(b.at(k, j));
            c.at(i, j) = static_cast<std::int64_t>(acc % static_cast<std::uint64_t>(a.p));
        }
    return c;
}

inline ModMatrix mat_add(const ModMatrix& a, const ModMatrix& b) {
    if (a.p != b.p || a.n != b.n) throw DomainError("matrix shape/modulus mismatch");
    ModMatrix c(a.p, a.n);
    for (std::size_t i = 0; i < a.e.size(); ++i) c.e[i] = mod_reduce(a.e[i] + b.e[i], a.p);
    return c;
}

inline ModPoint mat_vec(const ModMatrix& a, const ModPoint& v) {
    if (a.p != v.p || a.n != v.coords.size()) throw DomainError("matrix/vector shape mismatch");
    std::vector<std::int64_t> out(a.n, 0);
    for (std::size_t i = 0; i < a.n; ++i) {
        unsigned __int128 acc = 0;
        for (std::size_t k = 0; k < a.n; ++k)
            acc += static_cast<unsigned __int128>(a.at(i, k)) * static_cast<std::uint64_t>(v.coords[k]);
        out[i] = static_cast<std::int64_t>(acc % static_cast<std::uint64_t>(a.p));
    }
    return ModPoint(a.p, std::move(out));
}

inline ModMatrix mat_pow(ModMatrix a, std::uint64_t k) {
    ModMatrix r = ModMatrix::identity(a.p, a.n);
    while (k) {
        if (k & 1) r = mat_mul(r, a);
        k >>= 1;
        if (k) a = mat_mul(a, a);
    }
    return r;
}

inline bool is_idempotent(const ModMatrix& a) { return mat_mul(a, a) == a; }

/// Smallest g >= 1 with A^g idempotent. Always exists with g <= p^n - 1;
/// exceeding that ceiling is treated as an internal falsification.
inline std::uint64_t g_of(const ModMatrix& a) {
    const Int ceiling = int_pow(Int(a.p), a.n) - 1;
    ModMatrix b = a;
    for (Int g = 1; g <= ceiling; ++g) {
        if (is_idempotent(b)) return to_u64(g, "g_of");
        b = mat_mul(b, a);
    }
    throw InternalCheckError("g_of: no idempotent power within p^n - 1 steps");
}

namespace detail {
struct VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};
}  // namespace detail

/// Smallest d >= 1 with A^d v = v, or absent when the forward orbit of v
/// never returns to v (it then falls into a cycle avoiding v).
inline std::optional<std::uint64_t> min_d_fixing(const ModMatrix& a, const ModPoint& v) {
    if (a.p != v.p || a.n != v.coords.size()) throw DomainError("matrix/vector shape mismatch");
    if (v.is_zero()) throw DomainError("min_d_fixing: vector must be nonzero");
    std::unordered_set<std::vector<std::int64_t>, detail::VecHash> seen;
    seen.insert(v.coords);
    ModPoint w = mat_vec(a, v);
    std::uint64_t d = 1;
    while (true) {
        if (w == v) return d;
        if (!seen.insert(w.coords).second) return std::nullopt;
        w = mat_vec(a, w);
        ++d;
    }
}

/// Matrix with index `idx` in the row-major odometer enumeration of all
/// n-by-n matrices over F_p: the entry list read row-major is idx written
/// base p, most significant digit first.
inline ModMatrix matrix_from_index(std::uint64_t idx, std::int64_t p, std::size_t n) {
    ModMatrix m(p, n);
    for (std::size_t s = n * n; s-- > 0;) {
        m.e[s] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(p));
        idx /= static_cast<std::uint64_t>(p);
    }
    return m;
}

struct SweepConfig {
    std::uint64_t budget = 100'000'000;
    unsigned jobs = 1;
};

struct LemmaSweepReport {
    std::size_t n = 1;
    std::int64_t p = 2;
    Int bound = 1;          // p^n - 1
    std::uint64_t max_g = 0;
    std::map<std::uint64_t, std::uint64_t> histogram;  // g -> matrix count
    std::vector<ModMatrix> witnesses;                  // all matrices attaining max_g, ascending
    Int matrices_scanned = 0;
    bool ok = false;        // max_g <= bound
};

/// Exhaustively computes g_of over all p^(n^2) matrices. Witness order is
/// the enumeration order, so the report is identical for any job count.
inline LemmaSweepReport verify_lemma(std::size_t n, std::int64_t p, const SweepConfig& cfg = {}) {
    require_prime(p);
    if (n == 0) throw DomainError("dimension must be positive");
    const Int total = int_pow(Int(p), n * n);
    if (total > Int(cfg.budget))
        throw DomainError("enumeration budget exceeded: sweep needs " + total.str() +
                          " matrices, budget is " + std::to_string(cfg.budget));
    const std::uint64_t t = to_u64(total, "sweep size");

    struct Shard {
        std::uint64_t max_g = 0;
        std::map<std::uint64_t, std::uint64_t> hist;
        std::vector<ModMatrix> wit;
    };
    const unsigned jobs = cfg.jobs == 0 ? 1 : cfg.jobs;
    std::vector<Shard> shards(jobs);

    auto work = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Shard& s = shards[w];
        for (std::uint64_t i = lo; i < hi; ++i) {
            ModMatrix m = matrix_from_index(i, p, n);
            const std::uint64_t g = g_of(m);
            ++s.hist[g];
            if (g > s.max_g) {
                s.max_g = g;
                s.wit.clear();
            }
            if (g == s.max_g) s.wit.push_back(std::move(m));
        }
    };

    if (jobs == 1) {
        work(0, 0, t);
    } else {
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (t + jobs - 1) / jobs;
        for (unsigned w = 0; w < jobs; ++w) {
            const std::uint64_t lo = std::min<std::uint64_t>(t, w * chunk);
            const std::uint64_t hi = std::min<std::uint64_t>(t, lo + chunk);
            threads.emplace_back(work, w, lo, hi);
        }
        for (auto& th : threads) th.join();
    }

    LemmaSweepReport rep;
    rep.n = n;
    rep.p = p;
    rep.bound = int_pow(Int(p), n) - 1;
    rep.matrices_scanned = total;
    for (const auto& s : shards)
        rep.max_g = std::max(rep.max_g, s.max_g);
    for (const auto& s : shards) {
        for (const auto& [g, c] : s.hist) rep.histogram[g] += c;
        if (s.max_g == rep.max_g)
            rep.witnesses.insert(rep.witnesses.end(), s.wit.begin(), s.wit.end());
    }
    rep.ok = Int(rep.max_g) <= rep.bound;
    return rep;
}

}  // namespace orbita
