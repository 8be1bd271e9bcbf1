// Orbits of integer points under polynomial self-maps: exact iteration,
// reduction mod p, and a sound periodicity decision procedure that combines
// modular exclusion filters with exact candidate checks.
#pragma once

#include "bounds.hpp"
#include "poly.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace orbita {

struct LocalOrbitReport {
    std::int64_t p = 2;
    std::uint64_t tail_length = 0;
    std::uint64_t cycle_length = 1;
    bool on_cycle = false;
    std::optional<std::uint64_t> local_period;  // = cycle_length iff on_cycle
};

/// Per-map memo of the functional graph of the reduced map on F_p^N. For
/// small state spaces the whole graph is decomposed once (every node's tail
/// and cycle length), so repeated point queries against the same map are
/// O(1) lookups. Falls back to nothing for state spaces past the limit;
/// callers then walk orbits directly.
class ModOrbitCache {
public:
    explicit ModOrbitCache(const PolyMap& f, std::uint64_t dense_limit = std::uint64_t(1) << 20)
        : f_(&f), dense_limit_(dense_limit) {}

    const PolyMap& map() const { return *f_; }

    struct PrimeTable {
        std::int64_t p;
        std::uint64_t size;               // p^N
        std::vector<std::uint32_t> next;  // successor of each encoded state
        std::vector<std::uint32_t> tail;  // steps to reach the cycle
        std::vector<std::uint32_t> cycle; // length of the cycle reached
    };

    const PrimeTable* table(std::int64_t p) const {
        auto it = tables_.find(p);
        if (it != tables_.end()) return it->second ? &*it->second : nullptr;
        Int space = int_pow(Int(p), f_->dim);
        if (space > Int(dense_limit_) || space > Int(std::numeric_limits<std::uint32_t>::max())) {
            tables_.emplace(p, std::nullopt);
            return nullptr;
        }
        tables_.emplace(p, build_table(p, to_u64(space, "state space")));
        return &*tables_.at(p);
    }

    LocalOrbitReport local_report(const ModPoint& P) const {
        const PrimeTable* t = table(P.p);
        if (t == nullptr) throw DomainError("state space too large for dense orbit table");
        const std::uint64_t s = encode(P, t->p);
        LocalOrbitReport rep;
        rep.p = P.p;
        rep.tail_length = t->tail[s];
        rep.cycle_length = t->cycle[s];
        rep.on_cycle = rep.tail_length == 0;
        if (rep.on_cycle) rep.local_period = rep.cycle_length;
        return rep;
    }

private:
    static std::uint64_t encode(const ModPoint& P, std::int64_t p) {
        std::uint64_t s = 0;
        for (auto c : P.coords) s = s * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(c);
        return s;
    }

    PrimeTable build_table(std::int64_t p, std::uint64_t size) const {
        PrimeTable t;
        t.p = p;
        t.size = size;
        t.next.resize(size);
        const PolyMap red = reduce_mod(*f_, p);
        std::vector<std::int64_t> coords(f_->dim, 0);
        for (std::uint64_t s = 0; s < size; ++s) {
            std::uint64_t v = s;
            for (std::size_t i = f_->dim; i-- > 0;) {
                coords[i] = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(p));
                v /= static_cast<std::uint64_t>(p);
            }
            std::uint64_t out = 0;
            for (const auto& comp : red.comps)
                out = out * static_cast<std::uint64_t>(p) +
                      static_cast<std::uint64_t>(comp.eval_mod(coords, p));
            t.next[s] = static_cast<std::uint32_t>(out);
        }

        // Rho decomposition of the whole functional graph.
        t.tail.assign(size, 0);
        t.cycle.assign(size, 0);
        std::vector<std::uint8_t> state(size, 0);  // 0 new, 1 on current path, 2 done
        std::vector<std::uint32_t> pathpos(size, 0);
        std::vector<std::uint32_t> path;
        for (std::uint64_t s0 = 0; s0 < size; ++s0) {
            if (state[s0] != 0) continue;
            path.clear();
            std::uint32_t cur = static_cast<std::uint32_t>(s0);
            while (state[cur] == 0) {
                state[cur] = 1;
                pathpos[cur] = static_cast<std::uint32_t>(path.size());
                path.push_back(cur);
                cur = t.next[cur];
            }
            std::size_t settled;  // nodes from here on are already final
            if (state[cur] == 1) {
                const std::uint32_t pos = pathpos[cur];
                const std::uint32_t len = static_cast<std::uint32_t>(path.size()) - pos;
                for (std::size_t i = pos; i < path.size(); ++i) {
                    t.tail[path[i]] = 0;
                    t.cycle[path[i]] = len;
                }
                settled = pos;
            } else {
                settled = path.size();
            }
            const std::uint32_t base_tail = settled < path.size() ? 0 : t.tail[cur];
            const std::uint32_t base_cycle = settled < path.size()
                                                 ? t.cycle[path[settled]]
                                                 : t.cycle[cur];
            for (std::size_t i = settled; i-- > 0;) {
                t.tail[path[i]] = base_tail + static_cast<std::uint32_t>(settled - i);
                t.cycle[path[i]] = base_cycle;
            }
            for (std::uint32_t node : path) state[node] = 2;
        }
        return t;
    }

    const PolyMap* f_;
    std::uint64_t dense_limit_;
    mutable std::map<std::int64_t, std::optional<PrimeTable>> tables_;
};

/// Walks the reduction of P under the reduction of f through the finite
/// space F_p^N until the first repeated state.
inline LocalOrbitReport orbit_mod_p(const PolyMap& f, const Point& P, std::int64_t p,
                                    const ModOrbitCache* cache = nullptr) {
    require_prime(p);
    const ModPoint start = reduce_point(P, p);
    if (cache != nullptr && &cache->map() == &f) {
        if (cache->table(p) != nullptr) return cache->local_report(start);
    }
    const PolyMap red = reduce_mod(f, p);
    std::unordered_map<std::vector<std::int64_t>, std::uint64_t, detail::VecHash> seen;
    seen.emplace(start.coords, 0);
    ModPoint cur = start;
    std::uint64_t step = 0;
    while (true) {
        cur = eval_map_mod(red, cur, p);
        ++step;
        auto it = seen.find(cur.coords);
        if (it != seen.end()) {
            LocalOrbitReport rep;
            rep.p = p;
            rep.tail_length = it->second;
            rep.cycle_length = step - it->second;
            rep.on_cycle = it->second == 0;
            if (rep.on_cycle) rep.local_period = rep.cycle_length;
            return rep;
        }
        seen.emplace(cur.coords, step);
    }
}

struct ExactOrbitResult {
    enum class Kind { Periodic, NotReturned, CapExceeded };
    Kind kind = Kind::NotReturned;
    std::uint64_t n = 0;        // period when Periodic
    std::uint64_t steps = 0;    // steps actually iterated
    std::vector<Point> orbit;   // P, f(P), ..., f^{n-1}(P) when Periodic
};

inline bool point_within_bits(const Point& P, std::size_t cap_bits) {
    if (cap_bits == 0) return true;
    for (const auto& c : P.coords)
        if (bit_length(c) > cap_bits) return false;
    return true;
}

/// Iterates f on P exactly. CapExceeded is a non-answer: coordinates
/// outgrew the configured bit budget before max_steps returns were checked.
inline ExactOrbitResult primitive_period_exact(const PolyMap& f, const Point& P,
                                               std::uint64_t max_steps, std::size_t cap_bits = 0) {
    if (max_steps == 0) throw DomainError("max_steps must be positive");
    ExactOrbitResult res;
    res.orbit.push_back(P);
    Point q = P;
    for (std::uint64_t k = 1; k <= max_steps; ++k) {
        q = eval_map(f, q);
        res.steps = k;
        if (q == P) {
            res.kind = ExactOrbitResult::Kind::Periodic;
            res.n = k;
            return res;
        }
        if (!point_within_bits(q, cap_bits)) {
            res.kind = ExactOrbitResult::Kind::CapExceeded;
            res.orbit.clear();
            return res;
        }
        res.orbit.push_back(q);
    }
    res.kind = ExactOrbitResult::Kind::NotReturned;
    res.orbit.clear();
    return res;
}

enum class BoundSource { Auto, Divisor, Plane, Elementary };

struct DecideConfig {
    BoundSource bound_source = BoundSource::Auto;
    std::vector<std::int64_t> primes = {2, 3, 5, 7, 11, 13};
    std::size_t max_primes = 25;   // total primes allowed, counting escalation
    std::size_t cap_bits = 4096;   // exact-iteration coordinate budget
    const ModOrbitCache* cache = nullptr;
};

inline std::uint64_t resolve_bound(std::size_t N, BoundSource src) {
    switch (src) {
        case BoundSource::Plane:
            if (N != 2) throw DomainError("plane bound applies only to dimension 2");
            return bound_plane();
        case BoundSource::Divisor:
            return to_u64(bound_divisor(N), "divisor bound");
        case BoundSource::Elementary:
            return to_u64(bound_elementary(N), "elementary bound");
        case BoundSource::Auto:
        default:
            return N == 2 ? bound_plane() : to_u64(bound_divisor(N), "divisor bound");
    }
}

struct PrimeFilter {
    std::int64_t p;
    bool on_cycle;
    std::uint64_t local_period;  // meaningful only when on_cycle
};

struct ExactMismatch {
    std::uint64_t k;      // f^k(P) != P
    std::size_t coord;    // first differing coordinate
    Int expected;         // P at that coordinate
    Int got;              // f^k(P) at that coordinate
};

struct PeriodicityCertificate {
    enum class Kind { None, ExactReturn, ModularExclusion, ExactMismatch };
    Kind kind = Kind::None;
    std::uint64_t k = 0;  // the period for ExactReturn
    std::uint64_t bound = 0;
    std::vector<PrimeFilter> filters;
    std::vector<ExactMismatch> mismatches;
    std::uint64_t steps_used = 0;
    std::vector<std::int64_t> primes_used;

    /// True when the recorded evidence rules out every k in [1, bound]:
    /// a filter excludes k unless k is a multiple of its local period, and
    /// a mismatch at k excludes every divisor of k.
    bool covers_all_candidates() const {
        for (std::uint64_t k2 = 1; k2 <= bound; ++k2) {
            bool excluded = false;
            for (const auto& f : filters)
                if (!f.on_cycle || k2 % f.local_period != 0) {
                    excluded = true;
                    break;
                }
            if (!excluded)
                for (const auto& m : mismatches)
                    if (m.k % k2 == 0) {
                        excluded = true;
                        break;
                    }
            if (!excluded) return false;
        }
        return true;
    }
};

enum class Verdict { Periodic, NotPeriodic, Unresolved };

struct Decision {
    Verdict verdict = Verdict::Unresolved;
    std::optional<std::uint64_t> n;
    PeriodicityCertificate certificate;
    std::string unresolved_reason;
};

/// Sound and, up to the configured prime budget, complete periodicity
/// decision. Periodic and NotPeriodic verdicts are always correct:
/// a periodic verdict is an exact first return at the smallest surviving
/// candidate, and a non-periodic verdict carries evidence excluding every
/// candidate up to the dimension bound. Unresolved is returned rather than
/// guessing when the magnitude cap blocks exact checks and the escalation
/// primes run out.
inline Decision decide_periodic(const PolyMap& f, const Point& P, const DecideConfig& cfg = {}) {
    if (P.dim() != f.dim) throw DomainError("point dimension does not match map");
    Decision dec;
    PeriodicityCertificate& cert = dec.certificate;
    const std::uint64_t B = resolve_bound(f.dim, cfg.bound_source);
    cert.bound = B;

    std::vector<char> alive(B + 1, 1);  // alive[k], 1-indexed
    std::uint64_t alive_count = B;
    auto kill = [&](std::uint64_t k) {
        if (alive[k]) {
            alive[k] = 0;
            --alive_count;
        }
    };

    auto apply_prime = [&](std::int64_t p) -> bool {  // false: everything excluded
        const LocalOrbitReport rep = orbit_mod_p(f, P, p, cfg.cache);
        cert.primes_used.push_back(p);
        cert.filters.push_back({p, rep.on_cycle, rep.local_period.value_or(0)});
        if (!rep.on_cycle) {
            for (std::uint64_t k = 1; k <= B; ++k) kill(k);
            return false;
        }
        const std::uint64_t m = *rep.local_period;
        for (std::uint64_t k = 1; k <= B; ++k)
            if (k % m != 0) kill(k);
        return alive_count > 0;
    };

    auto finish_not_periodic = [&]() {
        cert.kind = cert.mismatches.empty() ? PeriodicityCertificate::Kind::ModularExclusion
                                            : PeriodicityCertificate::Kind::ExactMismatch;
        dec.verdict = Verdict::NotPeriodic;
    };

    std::size_t primes_applied = 0;
    for (; primes_applied < cfg.primes.size(); ++primes_applied) {
        if (!apply_prime(cfg.primes[primes_applied])) {
            finish_not_periodic();
            return dec;
        }
    }

    // Exact phase: walk the orbit once, testing surviving candidates in
    // ascending order; the computed prefix is shared by all candidates.
    Point q = P;
    std::uint64_t s = 0;  // q == f^s(P)
    bool capped = false;
    while (true) {
        std::uint64_t target = 0;
        for (std::uint64_t k = 1; k <= B; ++k)
            if (alive[k]) {
                target = k;
                break;
            }
        if (target == 0) {
            finish_not_periodic();
            return dec;
        }
        while (s < target && !capped) {
            q = eval_map(f, q);
            ++s;
            cert.steps_used = s;
            if (s < target && !point_within_bits(q, cfg.cap_bits)) capped = true;
        }
        if (s == target) {
            if (q == P) {
                cert.kind = PeriodicityCertificate::Kind::ExactReturn;
                cert.k = target;
                dec.verdict = Verdict::Periodic;
                dec.n = target;
                return dec;
            }
            std::size_t i = 0;
            while (q.coords[i] == P.coords[i]) ++i;
            cert.mismatches.push_back({target, i, P.coords[i], q.coords[i]});
            for (std::uint64_t d : divisors(target)) kill(d);
            if (!point_within_bits(q, cfg.cap_bits)) capped = true;
            continue;
        }

        // The cap blocked the walk short of the next candidate. Only new
        // modular information can exclude the remaining candidates.
        std::int64_t p = cert.primes_used.empty() ? 1 : cert.primes_used.back();
        while (cert.primes_used.size() < cfg.max_primes) {
            p = next_prime(p);
            if (!apply_prime(p)) {
                finish_not_periodic();
                return dec;
            }
        }
        dec.verdict = Verdict::Unresolved;
        dec.unresolved_reason =
            "coordinate magnitude exceeded " + std::to_string(cfg.cap_bits) +
            " bits at step " + std::to_string(s) + " and " + std::to_string(alive_count) +
            " candidate period(s) survived " + std::to_string(cert.primes_used.size()) +
            " modular filters";
        return dec;
    }
}

/// Candidate orbit sizes for dimension N: divisors of the divisor bound,
/// additionally capped by the plane bound when N = 2. Sharp mode for the
/// affine line returns the exact attainable set {1, 2}.
inline std::vector<std::uint64_t> candidate_periods(std::size_t N, bool sharp = false) {
    if (N == 0) throw DomainError("dimension must be positive");
    if (N == 1 && sharp) return {1, 2};
    const Int B = bound_divisor(N);
    if (B > Int(std::numeric_limits<std::uint64_t>::max()))
        throw DomainError("divisor bound too large to enumerate divisors");
    std::vector<std::uint64_t> out;
    for (std::uint64_t d : divisors(to_u64(B, "divisor bound")))
        if (N != 2 || d <= bound_plane()) out.push_back(d);
    return out;
}

struct OrbitReport {
    Verdict verdict = Verdict::Unresolved;
    bool periodic = false;
    std::optional<std::uint64_t> primitive_period;
    std::vector<Point> orbit_points;  // P, f(P), ..., f^{n-1}(P) when periodic
    PeriodicityCertificate certificate;
    std::string unresolved_reason;
};

inline OrbitReport orbit_report(const PolyMap& f, const Point& P, const DecideConfig& cfg = {}) {
    OrbitReport rep;
    Decision dec = decide_periodic(f, P, cfg);
    rep.verdict = dec.verdict;
    rep.periodic = dec.verdict == Verdict::Periodic;
    rep.certificate = std::move(dec.certificate);
    rep.unresolved_reason = std::move(dec.unresolved_reason);
    if (rep.periodic) {
        rep.primitive_period = dec.n;
        Point q = P;
        for (std::uint64_t k = 0; k < *dec.n; ++k) {
            rep.orbit_points.push_back(q);
            q = eval_map(f, q);
        }
    }
    return rep;
}

}  // namespace orbita
