#include "orbita/parse.hpp"
#include "orbita/poly.hpp"

#include "corpus.hpp"

#include "catch_amalgamated.hpp"

using namespace orbita;

namespace {

PolyMap mk(const std::string& text) { return parse_map(text); }

const PolyMap rot6 = mk("vars x,y; f1 = -y; f2 = x + y");

IntMatrix m2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    IntMatrix m(2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

// N=1 composition by substitution, the symbolic oracle for chain-rule tests
Polynomial compose1(const Polynomial& outer, const Polynomial& inner) {
    Polynomial acc(1);
    for (const auto& [e, c] : outer.terms())
        acc = add(acc, mul(Polynomial::constant(1, c), pow(inner, e[0])));
    return acc;
}

}  // namespace

TEST_CASE("eval_map") {
    CHECK(eval_map(rot6, Point({1, 0})) == Point({0, 1}));
    CHECK(eval_map(PolyMap::identity(3), Point({4, -5, 6})) == Point({4, -5, 6}));
    CHECK(eval_map(mk("vars x; f1 = x^2 - 1"), Point({0})) == Point({-1}));
    CHECK_THROWS_AS(eval_map(rot6, Point({1})), DomainError);
}

TEST_CASE("eval_map_mod") {
    CHECK(eval_map_mod(rot6, ModPoint(2, {1, 0}), 2) == ModPoint(2, {0, 1}));
    CHECK(eval_map_mod(PolyMap::identity(2), ModPoint(5, {3, 4}), 5) == ModPoint(5, {3, 4}));
    CHECK(eval_map_mod(mk("vars x; f1 = x + 1"), ModPoint(2, {1}), 2) == ModPoint(2, {0}));
    CHECK_THROWS_AS(eval_map_mod(rot6, ModPoint(4, {1, 0}), 4), DomainError);
}

TEST_CASE("translate_conjugate") {
    const PolyMap h = translate_conjugate(rot6, Point({1, 0}));
    CHECK(h == mk("vars x,y; f1 = -y - 1; f2 = x + y + 1"));
    const Point fP = eval_map(rot6, Point({1, 0}));
    CHECK(eval_map(h, Point({0, 0})) == Point({fP.coords[0] - 1, fP.coords[1] - 0}));

    CHECK(translate_conjugate(rot6, Point({0, 0})) == rot6);
    CHECK(translate_conjugate(mk("vars x; f1 = x + 1"), Point({5})) == mk("vars x; f1 = x + 1"));
}

TEST_CASE("translate_conjugate tracks the orbit") {
    fixtures::Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const PolyMap f = fixtures::random_map(rng, 2, 2, 2);
        const Point P = fixtures::random_point(rng, 2, 3);
        const PolyMap h = translate_conjugate(f, P);
        Point a = P;
        Point b({0, 0});
        for (int k = 0; k < 3; ++k) {
            a = eval_map(f, a);
            b = eval_map(h, b);
            REQUIRE(a.coords[0] == b.coords[0] + P.coords[0]);
            REQUIRE(a.coords[1] == b.coords[1] + P.coords[1]);
        }
    }
}

TEST_CASE("jacobian_at") {
    CHECK(jacobian_at(rot6, Point({3, 9})) == m2(0, -1, 1, 1));
    CHECK(jacobian_at(PolyMap::identity(2), Point({5, 6})) == IntMatrix::identity(2));
    const IntMatrix j = jacobian_at(mk("vars x; f1 = x^2 - 1"), Point({3}));
    CHECK(j.at(0, 0) == 6);
}

TEST_CASE("jacobian_along_orbit") {
    CHECK(jacobian_along_orbit(rot6, Point({1, 0}), 3) == m2(-1, 0, 0, -1));
    CHECK(jacobian_along_orbit(rot6, Point({1, 0}), 1) == jacobian_at(rot6, Point({1, 0})));

    const PolyMap sq = mk("vars x; f1 = x^2");
    const IntMatrix j = jacobian_along_orbit(sq, Point({2}), 2);
    CHECK(j.at(0, 0) == 32);  // d/dx x^4 at 2
}

TEST_CASE("jacobian_along_orbit matches symbolic composition on the line") {
    fixtures::Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const PolyMap f = fixtures::random_map(rng, 1, 2, 3);
        const Point P = fixtures::random_point(rng, 1, 4);
        Polynomial iter = f.comps[0];
        for (std::uint64_t k = 1; k <= 3; ++k) {
            const Int direct = iter.derivative(0).eval(P.coords);
            REQUIRE(jacobian_along_orbit(f, P, k).at(0, 0) == direct);
            iter = compose1(f.comps[0], iter);
        }
    }
}

TEST_CASE("reduce_mod on maps") {
    CHECK(reduce_mod(mk("vars x,y; f1 = 3*x + 4*y; f2 = 2*x"), 2) == mk("vars x,y; f1 = x; f2 = 0"));
    const PolyMap inrange = mk("vars x,y; f1 = x + y; f2 = y");
    CHECK(reduce_mod(inrange, 3) == inrange);
    CHECK(reduce_mod(rot6, 2) == mk("vars x,y; f1 = y; f2 = x + y"));
}

TEST_CASE("reduction commutes with evaluation") {
    fixtures::Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const PolyMap f = fixtures::random_map(rng, 2, 2, 5);
        const Point P = fixtures::random_point(rng, 2, 9);
        for (std::int64_t p : {2, 3, 7}) {
            const ModPoint lhs = reduce_point(eval_map(f, P), p);
            const ModPoint rhs = eval_map_mod(reduce_mod(f, p), reduce_point(P, p), p);
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("orbit Jacobian reduces to a matrix power at fixed points") {
    // x -> x^2 fixes 0 and 1 mod 2; the plane rotation fixes (0,0) mod any p
    const PolyMap f = rot6;
    const Point P({2, 4});  // reduces to (0,0) mod 2
    const ModMatrix base = reduce_mod(jacobian_at(f, P), 2);
    for (std::uint64_t k = 1; k <= 6; ++k)
        CHECK(reduce_mod(jacobian_along_orbit(f, P, k), 2) == mat_pow(base, k));
}

TEST_CASE("polynomial term bookkeeping") {
    Polynomial q(2);
    q.add_term({1, 0}, 3);
    q.add_term({1, 0}, -3);
    CHECK(q.is_zero());
    CHECK(q.degree() == 0);

    q.add_term({2, 1}, 1);
    q.add_term({0, 0}, -7);
    CHECK(q.degree() == 3);
    CHECK_THROWS_AS(q.add_term({1}, 1), DomainError);

    const Polynomial c = Polynomial::constant(2, 0);
    CHECK(c.is_zero());
}
