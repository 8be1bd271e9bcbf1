// Family enumeration and census: sweep all maps of a bounded family against
// all seed points of a box, decide periodicity for every pair, and tally
// orbit sizes. Enumeration is a fixed odometer order, so runs are
// restartable by index and parallel runs merge to byte-identical reports.
#pragma once

#include "certificate.hpp"
#include "dynamics.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace orbita {

struct FamilySpec {
    std::size_t dim = 1;
    std::uint64_t degree = 1;      // ignored when linear_only
    std::int64_t coeff_bound = 1;  // coefficients range over [-coeff_bound, coeff_bound]
    std::int64_t point_box = 1;    // seed coordinates range over [-point_box, point_box]
    bool linear_only = false;

    bool operator==(const FamilySpec&) const = default;
};

inline void validate_family(const FamilySpec& s) {
    if (s.dim == 0) throw DomainError("family dimension must be positive");
    if (s.coeff_bound < 0 || s.point_box < 0) throw DomainError("family bounds must be nonnegative");
}

/// All exponent vectors of total degree <= d, graded-lex order highest
/// first (the canonical term order).
inline std::vector<Exponents> monomials_up_to(std::size_t n, std::uint64_t d) {
    std::vector<Exponents> out;
    Exponents cur(n, 0);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end(), GradedLexDesc{});
    return out;
}

inline std::size_t family_slots(const FamilySpec& s) {
    if (s.linear_only) return s.dim * s.dim + s.dim;  // matrix entries then offsets
    return s.dim * monomials_up_to(s.dim, s.degree).size();
}

inline Int maps_total(const FamilySpec& s) {
    validate_family(s);
    return int_pow(Int(2 * s.coeff_bound + 1), family_slots(s));
}

inline Int points_total(const FamilySpec& s) {
    validate_family(s);
    return int_pow(Int(2 * s.point_box + 1), s.dim);
}

inline Int pairs_total(const FamilySpec& s) { return maps_total(s) * points_total(s); }

/// Map number `idx` in the enumeration: the coefficient slots read in order
/// (row-major, components outermost) are idx written in base 2c+1, most
/// significant slot first, each digit shifted down by c.
inline PolyMap map_at(const FamilySpec& s, std::uint64_t idx) {
    validate_family(s);
    const std::uint64_t base = static_cast<std::uint64_t>(2 * s.coeff_bound + 1);
    const std::size_t slots = family_slots(s);
    std::vector<std::int64_t> coeff(slots);
    for (std::size_t i = slots; i-- > 0;) {
        coeff[i] = static_cast<std::int64_t>(idx % base) - s.coeff_bound;
        idx /= base;
    }
    if (idx != 0) throw DomainError("map index out of range");

    std::vector<Polynomial> comps;
    comps.reserve(s.dim);
    if (s.linear_only) {
        for (std::size_t i = 0; i < s.dim; ++i) {
            Polynomial q(s.dim);
            for (std::size_t j = 0; j < s.dim; ++j) {
                Exponents e(s.dim, 0);
                e[j] = 1;
                q.add_term(std::move(e), coeff[i * s.dim + j]);
            }
            q.add_term(Exponents(s.dim, 0), coeff[s.dim * s.dim + i]);
            comps.push_back(std::move(q));
        }
    } else {
        const auto monos = monomials_up_to(s.dim, s.degree);
        for (std::size_t i = 0; i < s.dim; ++i) {
            Polynomial q(s.dim);
            for (std::size_t j = 0; j < monos.size(); ++j)
                q.add_term(monos[j], coeff[i * monos.size() + j]);
            comps.push_back(std::move(q));
        }
    }
    return PolyMap(s.dim, std::move(comps));
}

/// Seed point number `idx`: coordinates in lexicographic ascending order
/// over the box, first coordinate most significant.
inline Point point_at(const FamilySpec& s, std::uint64_t idx) {
    validate_family(s);
    const std::uint64_t base = static_cast<std::uint64_t>(2 * s.point_box + 1);
    std::vector<Int> coords(s.dim);
    for (std::size_t i = s.dim; i-- > 0;) {
        coords[i] = Int(static_cast<std::int64_t>(idx % base) - s.point_box);
        idx /= base;
    }
    if (idx != 0) throw DomainError("point index out of range");
    return Point(std::move(coords));
}

struct CensusWitness {
    std::uint64_t map_index = 0;
    std::uint64_t point_index = 0;
};

/// Accumulated sweep state; a prefix [0, next_index) of the pair
/// enumeration has been decided. Serializable for checkpoint/resume.
struct CensusState {
    std::uint64_t next_index = 0;
    std::map<std::uint64_t, std::uint64_t> histogram;  // period -> count
    std::uint64_t unresolved = 0;
    std::vector<std::uint64_t> unresolved_samples;     // first few undecided pair indices
    std::map<std::uint64_t, CensusWitness> witnesses;  // period -> first attaining pair
};

inline constexpr std::size_t CENSUS_UNRESOLVED_SAMPLES = 16;

struct MaterializedWitness {
    std::uint64_t map_index = 0;
    std::uint64_t point_index = 0;
    PolyMap map = PolyMap::identity(1);
    Point point;
};

struct CensusReport {
    FamilySpec family;
    std::map<std::uint64_t, std::uint64_t> histogram;
    std::uint64_t unresolved = 0;
    std::vector<std::uint64_t> unresolved_samples;
    std::uint64_t max_period = 0;  // 0 when no periodic pair was found
    std::map<std::uint64_t, MaterializedWitness> witnesses;
    std::uint64_t maps_scanned = 0;
    std::uint64_t points_scanned = 0;
    std::uint64_t pairs_scanned = 0;
    bool complete = false;
};

struct CensusConfig {
    unsigned jobs = 1;
    std::uint64_t budget = 100'000'000;
    DecideConfig decide;           // per-pair decision settings; cache is managed internally
    std::uint64_t stop_after = 0;  // pause once this many pairs are done (0 = run to the end)
    std::uint64_t chunk = std::uint64_t(1) << 14;
    std::function<void(const CensusState&)> checkpoint_sink;  // invoked after every chunk
    std::uint64_t sample_pairs = 0;  // decide only this many seeded-random pairs (0 = all)
    std::uint64_t seed = 0;
    const CensusState* resume = nullptr;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct CensusShard {
    std::map<std::uint64_t, std::uint64_t> hist;
    std::uint64_t unresolved = 0;
    std::vector<std::uint64_t> samples;
    std::map<std::uint64_t, CensusWitness> witnesses;
};

// Decides pair indices [lo, hi) of `list` (or the identity range when list
// is null). Pairs arrive in ascending order, so the first witness seen for
// a period is the least-index witness of the shard.
inline void census_worker(const FamilySpec& spec, const DecideConfig& base,
                          std::uint64_t points_per_map, const std::vector<std::uint64_t>* list,
                          std::uint64_t lo, std::uint64_t hi, CensusShard& out) {
    std::uint64_t cur_map = std::numeric_limits<std::uint64_t>::max();
    std::optional<PolyMap> f;
    std::optional<ModOrbitCache> cache;
    for (std::uint64_t i = lo; i < hi; ++i) {
        const std::uint64_t idx = list ? (*list)[i] : i;
        const std::uint64_t mi = idx / points_per_map;
        const std::uint64_t pi = idx % points_per_map;
        if (mi != cur_map) {
            f.emplace(map_at(spec, mi));
            cache.emplace(*f);
            cur_map = mi;
        }
        DecideConfig dc = base;
        dc.cache = &*cache;
        const Decision d = decide_periodic(*f, point_at(spec, pi), dc);
        if (d.verdict == Verdict::Periodic) {
            ++out.hist[*d.n];
            out.witnesses.try_emplace(*d.n, CensusWitness{mi, pi});
        } else if (d.verdict == Verdict::Unresolved) {
            ++out.unresolved;
            if (out.samples.size() < CENSUS_UNRESOLVED_SAMPLES) out.samples.push_back(idx);
        }
    }
}

inline void census_merge(CensusState& state, const CensusShard& s) {
    for (const auto& [n, c] : s.hist) state.histogram[n] += c;
    for (const auto& [n, w] : s.witnesses) state.witnesses.try_emplace(n, w);
    state.unresolved += s.unresolved;
    for (std::uint64_t idx : s.samples)
        if (state.unresolved_samples.size() < CENSUS_UNRESOLVED_SAMPLES)
            state.unresolved_samples.push_back(idx);
}

// Runs [lo, hi) split contiguously across jobs and merges shard results in
// shard order, which equals ascending pair order.
inline void census_span(const FamilySpec& spec, const CensusConfig& cfg,
                        std::uint64_t points_per_map, const std::vector<std::uint64_t>* list,
                        std::uint64_t lo, std::uint64_t hi, CensusState& state) {
    const unsigned jobs = cfg.jobs == 0 ? 1 : cfg.jobs;
    if (jobs == 1 || hi - lo < 2 * jobs) {
        CensusShard shard;
        census_worker(spec, cfg.decide, points_per_map, list, lo, hi, shard);
        census_merge(state, shard);
        return;
    }
    std::vector<CensusShard> shards(jobs);
    std::vector<std::thread> threads;
    const std::uint64_t span = hi - lo;
    const std::uint64_t step = (span + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        const std::uint64_t a = lo + std::min<std::uint64_t>(span, w * step);
        const std::uint64_t b = lo + std::min<std::uint64_t>(span, (w + 1) * step);
        threads.emplace_back(census_worker, std::cref(spec), std::cref(cfg.decide), points_per_map,
                             list, a, b, std::ref(shards[w]));
    }
    for (auto& th : threads) th.join();
    for (const auto& s : shards) census_merge(state, s);
}

}  // namespace detail

inline CensusReport census(const FamilySpec& spec, const CensusConfig& cfg = {}) {
    validate_family(spec);
    const Int total = pairs_total(spec);
    const std::uint64_t points_per_map = to_u64(points_total(spec), "points per map");

    CensusReport rep;
    rep.family = spec;
    rep.points_scanned = points_per_map;

    CensusState state;
    std::uint64_t t = 0;
    std::vector<std::uint64_t> sampled;

    if (cfg.sample_pairs > 0) {
        if (cfg.resume != nullptr || cfg.checkpoint_sink)
            throw DomainError("checkpoint/resume applies only to exhaustive sweeps");
        if (total > Int(std::numeric_limits<std::uint64_t>::max()))
            throw DomainError("family too large to index");
        if (cfg.sample_pairs > cfg.budget)
            throw DomainError("sample count exceeds the enumeration budget");
        const std::uint64_t full = to_u64(total, "pair count");
        std::uint64_t rng = cfg.seed;
        for (std::uint64_t j = 0; j < cfg.sample_pairs; ++j)
            sampled.push_back(detail::splitmix64(rng) % full);
        std::sort(sampled.begin(), sampled.end());
        sampled.erase(std::unique(sampled.begin(), sampled.end()), sampled.end());
        t = sampled.size();
    } else {
        if (total > Int(cfg.budget))
            throw DomainError("enumeration budget exceeded: sweep needs " + total.str() +
                              " pairs, budget is " + std::to_string(cfg.budget));
        t = to_u64(total, "pair count");
        if (cfg.resume != nullptr) {
            if (cfg.resume->next_index > t) throw DomainError("resume state is out of range");
            state = *cfg.resume;
        }
    }

    const std::vector<std::uint64_t>* list = cfg.sample_pairs > 0 ? &sampled : nullptr;
    while (state.next_index < t) {
        std::uint64_t hi = std::min(t, state.next_index + (cfg.chunk == 0 ? t : cfg.chunk));
        if (cfg.stop_after != 0 && cfg.stop_after > state.next_index)
            hi = std::min(hi, cfg.stop_after);
        detail::census_span(spec, cfg, points_per_map, list, state.next_index, hi, state);
        state.next_index = hi;
        if (cfg.checkpoint_sink) cfg.checkpoint_sink(state);
        if (cfg.stop_after != 0 && state.next_index >= cfg.stop_after) break;
    }

    rep.complete = state.next_index == t;
    rep.pairs_scanned = state.next_index;
    rep.histogram = state.histogram;
    rep.unresolved = state.unresolved;
    rep.unresolved_samples = state.unresolved_samples;
    if (!rep.histogram.empty()) rep.max_period = rep.histogram.rbegin()->first;
    for (const auto& [n, w] : state.witnesses) {
        MaterializedWitness mw;
        mw.map_index = w.map_index;
        mw.point_index = w.point_index;
        mw.map = map_at(spec, w.map_index);
        mw.point = point_at(spec, w.point_index);
        rep.witnesses.emplace(n, std::move(mw));
    }
    if (list != nullptr) {
        std::uint64_t distinct = 0, prev_map = std::numeric_limits<std::uint64_t>::max();
        for (std::uint64_t i = 0; i < state.next_index; ++i) {
            const std::uint64_t mi = sampled[i] / points_per_map;
            if (mi != prev_map) {
                ++distinct;
                prev_map = mi;
            }
        }
        rep.maps_scanned = distinct;
    } else {
        rep.maps_scanned =
            state.next_index == 0 ? 0 : (state.next_index - 1) / points_per_map + 1;
    }
    return rep;
}

/// Largest order of a finite-order element of GL_n(Z), by the cyclotomic
/// degree criterion: m is attainable iff the sum over prime powers p^a
/// exactly dividing m of phi(p^a) is at most n, where a factor of exactly
/// 2 is free (block-diagonal -1 doubles any odd order at no cost).
inline std::uint64_t max_order_gl(std::size_t n) {
    if (n == 0) throw DomainError("matrix size must be positive");
    if (n > 200) throw DomainError("matrix size too large for order search");

    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> opts;  // (cost, factor)
    for (std::int64_t q = 3; q <= static_cast<std::int64_t>(n) + 1; q = next_prime(q)) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> o;
        std::uint64_t factor = static_cast<std::uint64_t>(q);
        std::uint64_t cost = static_cast<std::uint64_t>(q) - 1;  // phi(q^a)
        while (cost <= n) {
            o.push_back({cost, factor});
            cost *= static_cast<std::uint64_t>(q);
            factor *= static_cast<std::uint64_t>(q);
        }
        opts.push_back(std::move(o));
    }
    {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> o;  // 2^a, a >= 2
        std::uint64_t factor = 4, cost = 2;
        while (cost <= n) {
            o.push_back({cost, factor});
            cost *= 2;
            factor *= 2;
        }
        opts.push_back(std::move(o));
    }

    std::uint64_t best = 1;
    std::function<void(std::size_t, std::uint64_t, std::uint64_t)> dfs =
        [&](std::size_t i, std::uint64_t budget, std::uint64_t prod) {
            best = std::max(best, prod % 2 == 1 ? 2 * prod : prod);
            for (std::size_t k = i; k < opts.size(); ++k)
                for (const auto& [cost, factor] : opts[k])
                    if (cost <= budget) dfs(k + 1, budget - cost, prod * factor);
        };
    dfs(0, n, 1);
    return best;
}

struct OpenQuestionReport {
    std::size_t dim = 1;
    CensusReport census;
    std::uint64_t census_max = 0;
    std::uint64_t gl_max = 0;
    bool exceeded = false;
    bool witness_reverified = false;
};

/// Juxtaposes the census maximum with the largest finite order in
/// GL_{N+1}(Z); the maximal witness is re-verified by a fresh decision and
/// by direct exact iteration before any comparison is reported.
inline OpenQuestionReport open_question_report(const FamilySpec& spec,
                                               const CensusConfig& cfg = {}) {
    OpenQuestionReport rep;
    rep.dim = spec.dim;
    rep.census = census(spec, cfg);
    rep.census_max = rep.census.max_period;
    rep.gl_max = max_order_gl(spec.dim + 1);
    rep.exceeded = rep.census_max > rep.gl_max;
    if (rep.census_max > 0) {
        const auto& w = rep.census.witnesses.at(rep.census_max);
        DecideConfig dc = cfg.decide;
        dc.cache = nullptr;
        const Decision again = decide_periodic(w.map, w.point, dc);
        const ExactOrbitResult direct = primitive_period_exact(w.map, w.point, rep.census_max);
        if (again.verdict != Verdict::Periodic || *again.n != rep.census_max ||
            direct.kind != ExactOrbitResult::Kind::Periodic || direct.n != rep.census_max)
            throw InternalCheckError("census witness failed re-verification");
        rep.witness_reverified = true;
    }
    return rep;
}

}  // namespace orbita
