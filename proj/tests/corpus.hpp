// Shared fixtures: known-period (map, point) pairs and seeded random maps.
#pragma once

#include "orbita/parse.hpp"
#include "orbita/poly.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using orbita::Int;
using orbita::Point;
using orbita::PolyMap;
using orbita::Polynomial;

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {  // splitmix64
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

struct PeriodicPair {
    PolyMap f;
    Point P;
    std::uint64_t period;
};

// Integer 2x2 matrices of each finite order that occurs in the plane, with
// a starting vector v = (1,0) realizing the full order.
inline const std::vector<std::pair<std::array<std::int64_t, 4>, std::uint64_t>>& plane_orders() {
    static const std::vector<std::pair<std::array<std::int64_t, 4>, std::uint64_t>> table = {
        {{1, 0, 0, 1}, 1},
        {{-1, 0, 0, -1}, 2},
        {{0, -1, 1, -1}, 3},
        {{0, -1, 1, 0}, 4},
        {{0, -1, 1, 1}, 6},
    };
    return table;
}

// (x, y) -> M (x, y)^T + t
inline PolyMap affine_plane_map(const std::array<std::int64_t, 4>& M,
                                const std::array<std::int64_t, 2>& t) {
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < 2; ++i) {
        Polynomial q(2);
        q.add_term({1, 0}, Int(M[2 * i]));
        q.add_term({0, 1}, Int(M[2 * i + 1]));
        q.add_term({0, 0}, Int(t[i]));
        comps.push_back(std::move(q));
    }
    return PolyMap(2, std::move(comps));
}

// Conjugates x -> Mx by the translation x -> x + c, giving x -> Mx + (I-M)c.
// The point c + (1,0) then has primitive period equal to the order of (1,0)
// under M: the orbit is c + M^j (1,0).
inline PeriodicPair conjugated_pair(const std::array<std::int64_t, 4>& M, std::uint64_t order,
                                    std::int64_t cx, std::int64_t cy) {
    const std::array<std::int64_t, 2> t = {cx - (M[0] * cx + M[1] * cy),
                                           cy - (M[2] * cx + M[3] * cy)};
    return {affine_plane_map(M, t), Point({Int(cx + 1), Int(cy)}), order};
}

inline std::vector<PeriodicPair> line_pairs() {
    std::vector<PeriodicPair> out;
    auto add = [&](const std::string& text, std::int64_t seed, std::uint64_t period) {
        out.push_back({orbita::parse_map(text), Point({Int(seed)}), period});
    };
    add("vars x; f1 = x^2 - 1", 0, 2);
    add("vars x; f1 = x^2 - 1", -1, 2);
    add("vars x; f1 = x^2", 0, 1);
    add("vars x; f1 = x^2", 1, 1);
    add("vars x; f1 = x^2 - x - 1", 1, 2);
    add("vars x; f1 = x^2 - x - 1", -1, 2);
    add("vars x; f1 = -x", 9, 2);
    add("vars x; f1 = x", 3, 1);
    return out;
}

// Plane pairs of orders 1..6 under random conjugating translations plus the
// line pairs above; at least 200 in total, all with known primitive period.
inline std::vector<PeriodicPair> periodic_corpus(std::uint64_t seed = 2026) {
    Rng rng(seed);
    std::vector<PeriodicPair> out;
    for (const auto& [M, order] : plane_orders())
        for (int i = 0; i < 45; ++i)
            out.push_back(conjugated_pair(M, order, rng.uniform(-20, 20), rng.uniform(-20, 20)));
    for (auto& pr : line_pairs()) out.push_back(std::move(pr));
    return out;
}

// Uniform random map on all monomials of total degree <= degree.
inline PolyMap random_map(Rng& rng, std::size_t dim, std::uint64_t degree,
                          std::int64_t coeff_bound) {
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < dim; ++i) {
        Polynomial q(dim);
        orbita::Exponents e(dim, 0);
        // iterate exponent tuples with total degree <= degree
        while (true) {
            std::uint64_t total = 0;
            for (auto x : e) total += x;
            if (total <= degree) q.add_term(e, Int(rng.uniform(-coeff_bound, coeff_bound)));
            std::size_t j = 0;
            while (j < dim) {
                if (++e[j] <= degree) break;
                e[j] = 0;
                ++j;
            }
            if (j == dim) break;
        }
        comps.push_back(std::move(q));
    }
    return PolyMap(dim, std::move(comps));
}

inline Point random_point(Rng& rng, std::size_t dim, std::int64_t box) {
    std::vector<Int> cs;
    for (std::size_t i = 0; i < dim; ++i) cs.push_back(Int(rng.uniform(-box, box)));
    return Point(std::move(cs));
}

}  // namespace fixtures
