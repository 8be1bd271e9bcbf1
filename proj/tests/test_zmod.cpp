#include "orbita/serialize.hpp"
#include "orbita/zmod.hpp"

#include "corpus.hpp"

#include "catch_amalgamated.hpp"

#include <optional>

using namespace orbita;

namespace {

ModMatrix mm2(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    ModMatrix m(p, 2);
    m.e = {mod_reduce(a, p), mod_reduce(b, p), mod_reduce(c, p), mod_reduce(d, p)};
    return m;
}

// Independent idempotency oracle: the minimal monic annihilator of degree
// <= 2, when one exists, must be x, x - 1, or x^2 - x.
bool min_poly_divides_x2_minus_x(const ModMatrix& B) {
    const std::int64_t p = B.p;
    const ModMatrix I = ModMatrix::identity(p, B.n);
    const ModMatrix Z(p, B.n);
    auto scale = [&](const ModMatrix& m, std::int64_t c) {
        ModMatrix r(p, m.n);
        for (std::size_t i = 0; i < m.e.size(); ++i) r.e[i] = mod_reduce(m.e[i] * c, p);
        return r;
    };
    for (std::int64_t c0 = 0; c0 < p; ++c0)  // monic degree 1: B + c0 I = 0
        if (mat_add(B, scale(I, c0)) == Z) return c0 == 0 || c0 == p - 1;
    const ModMatrix B2 = mat_mul(B, B);
    for (std::int64_t c1 = 0; c1 < p; ++c1)
        for (std::int64_t c0 = 0; c0 < p; ++c0)  // monic degree 2
            if (mat_add(mat_add(B2, scale(B, c1)), scale(I, c0)) == Z)
                return c1 == p - 1 && c0 == 0;  // x^2 - x
    return false;  // minimal polynomial has degree > 2
}

ModMatrix random_matrix(fixtures::Rng& rng, std::int64_t p, std::size_t n) {
    ModMatrix m(p, n);
    for (auto& x : m.e) x = rng.uniform(0, p - 1);
    return m;
}

}  // namespace

TEST_CASE("mat_pow") {
    const ModMatrix A = mm2(2, 0, 1, 1, 1);
    CHECK(mat_pow(A, 3).is_identity());
    CHECK(mat_pow(A, 0).is_identity());
    CHECK(mat_pow(mm2(2, 0, 1, 0, 0), 2).is_zero());
}

TEST_CASE("is_idempotent") {
    CHECK(is_idempotent(ModMatrix::identity(5, 3)));
    CHECK(is_idempotent(ModMatrix(7, 2)));
    CHECK_FALSE(is_idempotent(mm2(2, 0, 1, 1, 1)));
}

TEST_CASE("g_of") {
    CHECK(g_of(ModMatrix::identity(3, 2)) == 1);
    CHECK(g_of(mm2(2, 0, 1, 0, 0)) == 2);
    CHECK(g_of(mm2(2, 0, 1, 1, 1)) == 3);  // extremal: 2^2 - 1
}

TEST_CASE("g_of equals the multiplicative order on invertible matrices") {
    fixtures::Rng rng(19);
    for (std::int64_t p : {2, 3, 5}) {
        int found = 0;
        while (found < 15) {
            const ModMatrix A = random_matrix(rng, p, 2);
            const std::int64_t det =
                mod_reduce(A.e[0] * A.e[3] - A.e[1] * A.e[2], p);
            if (det == 0) continue;
            ++found;
            const std::uint64_t g = g_of(A);
            CHECK(mat_pow(A, g).is_identity());
            for (std::uint64_t k = 1; k < g; ++k) CHECK_FALSE(mat_pow(A, k).is_identity());
        }
    }
}

TEST_CASE("idempotency matches the annihilator oracle") {
    fixtures::Rng rng(23);
    for (std::int64_t p : {2, 3}) {
        for (std::size_t n : {std::size_t(2), std::size_t(3)}) {
            const std::uint64_t ceiling = static_cast<std::uint64_t>(int_pow(Int(p), n) - 1);
            for (int trial = 0; trial < 10; ++trial) {
                const ModMatrix A = random_matrix(rng, p, n);
                ModMatrix B = A;
                for (std::uint64_t k = 1; k <= ceiling; ++k) {
                    REQUIRE(is_idempotent(B) == min_poly_divides_x2_minus_x(B));
                    B = mat_mul(B, A);
                }
            }
        }
    }
}

TEST_CASE("min_d_fixing") {
    CHECK(min_d_fixing(ModMatrix::identity(5, 2), ModPoint(5, {2, 3})) == 1);
    CHECK(min_d_fixing(mm2(3, 0, 1, 1, 0), ModPoint(3, {1, 2})) == 2);
    CHECK(min_d_fixing(mm2(2, 0, 1, 0, 0), ModPoint(2, {1, 0})) == std::nullopt);
    CHECK_THROWS_AS(min_d_fixing(mm2(2, 1, 0, 0, 1), ModPoint(2, {0, 0})), DomainError);

    SECTION("returned d is exact and divides g when the g-th power fixes v") {
        fixtures::Rng rng(29);
        for (int trial = 0; trial < 60; ++trial) {
            const std::int64_t p = trial % 2 == 0 ? 2 : 3;
            const ModMatrix A = random_matrix(rng, p, 2);
            ModPoint v(p, {rng.uniform(0, p - 1), rng.uniform(0, p - 1)});
            if (v.is_zero()) continue;
            const auto d = min_d_fixing(A, v);
            if (!d) continue;
            CHECK(mat_vec(mat_pow(A, *d), v) == v);
            const std::uint64_t g = g_of(A);
            if (mat_vec(mat_pow(A, g), v) == v) CHECK(g % *d == 0);
        }
    }
}

TEST_CASE("matrix_from_index enumerates row-major, last entry fastest") {
    CHECK(matrix_from_index(0, 3, 2).is_zero());
    CHECK(matrix_from_index(1, 3, 2).e == std::vector<std::int64_t>{0, 0, 0, 1});
    CHECK(matrix_from_index(3, 3, 2).e == std::vector<std::int64_t>{0, 0, 1, 0});
    CHECK(matrix_from_index(80, 3, 2).e == std::vector<std::int64_t>{2, 2, 2, 2});
}

TEST_CASE("verify_lemma sweeps") {
    const LemmaSweepReport r22 = verify_lemma(2, 2);
    CHECK(r22.max_g == 3);
    CHECK(r22.bound == 3);
    CHECK(r22.ok);
    CHECK(r22.matrices_scanned == 16);

    const LemmaSweepReport r12 = verify_lemma(1, 2);
    CHECK(r12.max_g == 1);
    CHECK(r12.bound == 1);
    CHECK(r12.ok);
    CHECK(r12.matrices_scanned == 2);

    const LemmaSweepReport r23 = verify_lemma(2, 3);
    CHECK(r23.max_g == 8);
    CHECK(r23.bound == 8);
    CHECK(r23.ok);
    CHECK(r23.matrices_scanned == 81);

    SECTION("histogram counts every matrix once") {
        std::uint64_t total = 0;
        for (const auto& [g, c] : r23.histogram) total += c;
        CHECK(total == 81);
    }
    SECTION("every witness attains max_g") {
        for (const auto& w : r23.witnesses) CHECK(g_of(w) == r23.max_g);
    }
}

TEST_CASE("verify_lemma is deterministic across job counts") {
    SweepConfig par;
    par.jobs = 4;
    const Json a = json_of(verify_lemma(2, 3));
    const Json b = json_of(verify_lemma(2, 3, par));
    CHECK(a.dump() == b.dump());
}

TEST_CASE("verify_lemma enforces its budget") {
    SweepConfig tiny;
    tiny.budget = 1000;
    CHECK_THROWS_AS(verify_lemma(3, 3, tiny), DomainError);
}
