// Exact sparse multivariate integer polynomials and polynomial self-maps of
// affine N-space: evaluation, reduction mod p, Jacobians, translation
// conjugates.
#pragma once

#include "numeric.hpp"
#include "zmod.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace orbita {

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic, highest first: sort key is (total degree desc,
/// exponent vector lexicographically desc). This is the canonical term
/// order used everywhere terms are iterated or printed.
struct GradedLexDesc {
    bool operator()(const Exponents& a, const Exponents& b) const {
        std::uint64_t da = 0, db = 0;
        for (auto x : a) da += x;
        for (auto x : b) db += x;
        if (da != db) return da > db;
        return a > b;
    }
};

using TermMap = std::map<Exponents, Int, GradedLexDesc>;

class Polynomial {
public:
    explicit Polynomial(std::size_t num_vars) : nv_(num_vars) {
        if (num_vars == 0) throw DomainError("polynomial needs at least one variable");
    }

    static Polynomial constant(std::size_t num_vars, Int c) {
        Polynomial q(num_vars);
        q.add_term(Exponents(num_vars, 0), std::move(c));
        return q;
    }

    static Polynomial variable(std::size_t num_vars, std::size_t i) {
        if (i >= num_vars) throw DomainError("variable index out of range");
        Polynomial q(num_vars);
        Exponents e(num_vars, 0);
        e[i] = 1;
        q.add_term(std::move(e), 1);
        return q;
    }

    std::size_t num_vars() const { return nv_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::uint64_t degree() const {  // total degree; 0 for the zero polynomial
        std::uint64_t d = 0;
        if (!terms_.empty()) {
            const Exponents& top = terms_.begin()->first;  // graded order: first term is maximal
            for (auto x : top) d += x;
        }
        return d;
    }

    void add_term(Exponents e, const Int& c) {
        if (e.size() != nv_) throw DomainError("exponent vector length mismatch");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Int eval(const std::vector<Int>& xs) const {
        if (xs.size() != nv_) throw DomainError("evaluation arity mismatch");
        Int acc = 0;
        for (const auto& [e, c] : terms_) {
            Int t = c;
            for (std::size_t i = 0; i < nv_; ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) t *= xs[i];
            acc += t;
        }
        return acc;
    }

    std::int64_t eval_mod(const std::vector<std::int64_t>& xs, std::int64_t p) const {
        if (xs.size() != nv_) throw DomainError("evaluation arity mismatch");
        std::uint64_t acc = 0;
        const auto up = static_cast<std::uint64_t>(p);
        for (const auto& [e, c] : terms_) {
            std::uint64_t t = static_cast<std::uint64_t>(mod_reduce(c, p));
            for (std::size_t i = 0; i < nv_; ++i) {
                if (e[i] == 0) continue;
                std::uint64_t b = static_cast<std::uint64_t>(mod_reduce(xs[i], p));
                std::uint32_t k = e[i];
                while (k) {  // square and multiply; operands < 2^31 so products fit
                    if (k & 1) t = (t * b) % up;
                    k >>= 1;
                    if (k) b = (b * b) % up;
                }
            }
            acc = (acc + t) % up;
        }
        return static_cast<std::int64_t>(acc);
    }

    Polynomial derivative(std::size_t j) const {
        if (j >= nv_) throw DomainError("variable index out of range");
        Polynomial q(nv_);
        for (const auto& [e, c] : terms_) {
            if (e[j] == 0) continue;
            Exponents d = e;
            d[j] -= 1;
            q.add_term(std::move(d), c * e[j]);
        }
        return q;
    }

    bool operator==(const Polynomial&) const = default;

private:
    std::size_t nv_;
    TermMap terms_;
};

inline Polynomial add(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars() != b.num_vars()) throw DomainError("polynomial arity mismatch");
    Polynomial q = a;
    for (const auto& [e, c] : b.terms()) q.add_term(e, c);
    return q;
}

inline Polynomial neg(const Polynomial& a) {
    Polynomial q(a.num_vars());
    for (const auto& [e, c] : a.terms()) q.add_term(e, -c);
    return q;
}

inline Polynomial sub(const Polynomial& a, const Polynomial& b) { return add(a, neg(b)); }

inline Polynomial mul(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars() != b.num_vars()) throw DomainError("polynomial arity mismatch");
    Polynomial q(a.num_vars());
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            Exponents e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            q.add_term(std::move(e), ca * cb);
        }
    return q;
}

inline Polynomial pow(const Polynomial& a, std::uint64_t k) {
    Polynomial r = Polynomial::constant(a.num_vars(), 1);
    Polynomial b = a;
    while (k) {
        if (k & 1) r = mul(r, b);
        k >>= 1;
        if (k) b = mul(b, b);
    }
    return r;
}

struct Point {
    std::vector<Int> coords;

    Point() = default;
    explicit Point(std::vector<Int> c) : coords(std::move(c)) {}
    std::size_t dim() const { return coords.size(); }
    bool operator==(const Point&) const = default;
};

struct PolyMap {
    std::size_t dim = 1;
    std::vector<Polynomial> comps;

    PolyMap(std::size_t dim_, std::vector<Polynomial> comps_) : dim(dim_), comps(std::move(comps_)) {
        if (dim == 0) throw DomainError("map dimension must be positive");
        if (comps.size() != dim) throw DomainError("component count does not match dimension");
        for (const auto& c : comps)
            if (c.num_vars() != dim) throw DomainError("component arity does not match dimension");
    }

    static PolyMap identity(std::size_t n) {
        std::vector<Polynomial> cs;
        for (std::size_t i = 0; i < n; ++i) cs.push_back(Polynomial::variable(n, i));
        return PolyMap(n, std::move(cs));
    }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& c : comps) d = std::max(d, c.degree());
        return d;
    }

    bool operator==(const PolyMap&) const = default;
};

struct IntMatrix {
    std::size_t n = 1;
    std::vector<Int> e;  // row-major

    explicit IntMatrix(std::size_t n_) : n(n_), e(n_ * n_, 0) {
        if (n_ == 0) throw DomainError("matrix dimension must be positive");
    }

    Int& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return e[i * n + j]; }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const IntMatrix&) const = default;
};

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.n != b.n) throw DomainError("matrix shape mismatch");
    IntMatrix c(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) {
            Int acc = 0;
            for (std::size_t k = 0; k < a.n; ++k) acc += a.at(i, k) * b.at(k, j);
            c.at(i, j) = std::move(acc);
        }
    return c;
}

inline Point eval_map(const PolyMap& f, const Point& P) {
    if (P.dim() != f.dim) throw DomainError("point dimension does not match map");
    std::vector<Int> out;
    out.reserve(f.dim);
    for (const auto& c : f.comps) out.push_back(c.eval(P.coords));
    return Point(std::move(out));
}

inline ModPoint reduce_point(const Point& P, std::int64_t p) {
    require_prime(p);
    std::vector<std::int64_t> out;
    out.reserve(P.dim());
    for (const auto& x : P.coords) out.push_back(mod_reduce(x, p));
    return ModPoint(p, std::move(out));
}

inline ModPoint eval_map_mod(const PolyMap& f, const ModPoint& P, std::int64_t p) {
    require_prime(p);
    if (P.coords.size() != f.dim) throw DomainError("point dimension does not match map");
    std::vector<std::int64_t> out;
    out.reserve(f.dim);
    for (const auto& c : f.comps) out.push_back(c.eval_mod(P.coords, p));
    return ModPoint(p, std::move(out));
}

inline PolyMap reduce_mod(const PolyMap& f, std::int64_t p) {
    require_prime(p);
    std::vector<Polynomial> cs;
    cs.reserve(f.dim);
    for (const auto& c : f.comps) {
        Polynomial q(f.dim);
        for (const auto& [e, coef] : c.terms()) q.add_term(e, mod_reduce(coef, p));
        cs.push_back(std::move(q));
    }
    return PolyMap(f.dim, std::move(cs));
}

inline ModMatrix reduce_mod(const IntMatrix& m, std::int64_t p) {
    ModMatrix out(p, m.n);
    for (std::size_t i = 0; i < m.e.size(); ++i) out.e[i] = mod_reduce(m.e[i], p);
    return out;
}

inline Int binomial(std::uint32_t n, std::uint32_t k) {
    if (k > n) return 0;
    Int r = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact at every step
    }
    return r;
}

namespace detail {
// (x_i + a)^e as a polynomial in N variables, expanded by the binomial theorem.
inline Polynomial shifted_power(std::size_t nv, std::size_t i, const Int& a, std::uint32_t e) {
    Polynomial q(nv);
    Int apow = 1;  // a^(e-j)
    for (std::uint32_t j = e;; --j) {
        Exponents ex(nv, 0);
        ex[i] = j;
        q.add_term(std::move(ex), binomial(e, j) * apow);
        if (j == 0) break;
        apow *= a;
    }
    return q;
}
}  // namespace detail

/// h with h(x) = f(x + P) - P, expanded exactly. The origin's orbit under h
/// mirrors the orbit of P under f: h^k(0) = f^k(P) - P.
inline PolyMap translate_conjugate(const PolyMap& f, const Point& P) {
    if (P.dim() != f.dim) throw DomainError("point dimension does not match map");
    std::vector<Polynomial> cs;
    cs.reserve(f.dim);
    for (std::size_t ci = 0; ci < f.dim; ++ci) {
        Polynomial h(f.dim);
        for (const auto& [e, c] : f.comps[ci].terms()) {
            Polynomial t = Polynomial::constant(f.dim, c);
            for (std::size_t i = 0; i < f.dim; ++i)
                if (e[i] > 0) t = mul(t, detail::shifted_power(f.dim, i, P.coords[i], e[i]));
            h = add(h, t);
        }
        h.add_term(Exponents(f.dim, 0), -P.coords[ci]);
        cs.push_back(std::move(h));
    }
    return PolyMap(f.dim, std::move(cs));
}

/// Matrix of partials (d f_i / d x_j) evaluated exactly at P.
inline IntMatrix jacobian_at(const PolyMap& f, const Point& P) {
    if (P.dim() != f.dim) throw DomainError("point dimension does not match map");
    IntMatrix m(f.dim);
    for (std::size_t i = 0; i < f.dim; ++i)
        for (std::size_t j = 0; j < f.dim; ++j)
            m.at(i, j) = f.comps[i].derivative(j).eval(P.coords);
    return m;
}

/// Jacobian of f^k at P as the ordered product of per-step Jacobians,
/// D(f at f^{k-1}(P)) ... D(f at P); avoids symbolic composition.
inline IntMatrix jacobian_along_orbit(const PolyMap& f, const Point& P, std::uint64_t k) {
    if (k == 0) throw DomainError("iterate count must be positive");
    IntMatrix m = IntMatrix::identity(f.dim);
    Point q = P;
    for (std::uint64_t s = 0; s < k; ++s) {
        m = mat_mul(jacobian_at(f, q), m);
        q = eval_map(f, q);
    }
    return m;
}

}  // namespace orbita
