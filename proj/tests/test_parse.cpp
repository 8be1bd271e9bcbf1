#include "orbita/parse.hpp"

#include "corpus.hpp"

#include "catch_amalgamated.hpp"

#include <string>
#include <vector>

using namespace orbita;

TEST_CASE("parse_map") {
    const PolyMap f = parse_map("vars x,y; f1 = -y; f2 = x + y");
    CHECK(f.dim == 2);
    CHECK(eval_map(f, Point({1, 0})) == Point({0, 1}));

    CHECK(parse_map("vars x; f1 = x") == PolyMap::identity(1));

    const PolyMap q = parse_map("vars x,y; f1 = x^2 - 1; f2 = y");
    REQUIRE(q.comps[0].terms().size() == 2);
    CHECK(q.comps[0].terms().at({2, 0}) == 1);
    CHECK(q.comps[0].terms().at({0, 0}) == -1);

    SECTION("trailing semicolon and whitespace are insignificant") {
        CHECK(parse_map("vars x;\n  f1 = x;\n") == PolyMap::identity(1));
        CHECK(parse_map("vars x , y ; f1=-y;f2=x+y") == parse_map("vars x,y; f1 = -y; f2 = x + y"));
    }
}

TEST_CASE("parse_map rejections") {
    SECTION("syntax error carries line and column") {
        try {
            parse_map("vars x;\nf1 = x +");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
        }
    }
    SECTION("undeclared variable") {
        try {
            parse_map("vars x; f1 = y");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 1);
            CHECK(e.col == 14);
        }
    }
    SECTION("component count must match the variable list") {
        CHECK_THROWS_AS(parse_map("vars x,y; f1 = x"), ParseError);
        CHECK_THROWS_AS(parse_map("vars x; f1 = x; f2 = x"), ParseError);
    }
    SECTION("components must appear in order and exactly once") {
        CHECK_THROWS_AS(parse_map("vars x,y; f2 = y; f1 = x"), ParseError);
    }
    SECTION("reserved and duplicate names") {
        CHECK_THROWS_AS(parse_map("vars f1; f1 = f1"), ParseError);
        CHECK_THROWS_AS(parse_map("vars x,x; f1 = x; f2 = x"), ParseError);
    }
    SECTION("exponents are nonnegative integer literals on variables") {
        CHECK_THROWS_AS(parse_map("vars x; f1 = x^-2"), ParseError);
        CHECK_THROWS_AS(parse_map("vars x; f1 = x^(2)"), ParseError);
        CHECK_THROWS_AS(parse_map("vars x; f1 = 2^3"), ParseError);
    }
    SECTION("no implicit multiplication") {
        CHECK_THROWS_AS(parse_map("vars x; f1 = 2 x"), ParseError);
    }
}

TEST_CASE("parse_point") {
    CHECK(parse_point("(1, 0)") == Point({1, 0}));
    CHECK(parse_point("(-2)") == Point({-2}));

    const std::string big = "123456789012345678901234567890";
    const Point P = parse_point("(" + big + ", 0)");
    CHECK(print_point(P) == "(" + big + ", 0)");

    CHECK_THROWS_AS(parse_point("(1, 0)", 3), ParseError);
    CHECK_THROWS_AS(parse_point("1, 0"), ParseError);
    CHECK_THROWS_AS(parse_point("()"), ParseError);
    CHECK_THROWS_AS(parse_point("(1, )"), ParseError);
}

TEST_CASE("print_map") {
    CHECK(print_map(PolyMap::identity(2)) == "vars x,y; f1 = x; f2 = y");
    CHECK(print_map(parse_map("vars x,y; f1 = -y; f2 = x + y")) == "vars x,y; f1 = -y; f2 = x + y");
    CHECK(print_map(parse_map("vars x; f1 = 0")) == "vars x; f1 = 0");

    SECTION("graded-lex term order with explicit signs") {
        const PolyMap f = parse_map("vars x,y; f1 = 1 - y^2 + 3*x*y - x; f2 = y");
        CHECK(print_map(f) == "vars x,y; f1 = 3*x*y - y^2 - x + 1; f2 = y");
    }
    SECTION("four or more variables get numbered names") {
        const PolyMap f = PolyMap::identity(4);
        CHECK(print_map(f) == "vars x1,x2,x3,x4; f1 = x1; f2 = x2; f3 = x3; f4 = x4");
    }
}

TEST_CASE("print then parse is the identity on random maps") {
    fixtures::Rng rng(17);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t dim = 1 + trial % 3;
        const PolyMap f = fixtures::random_map(rng, dim, trial % 4, 4);
        const std::string text = print_map(f);
        CHECK(parse_map(text) == f);
        CHECK(print_map(parse_map(text)) == text);  // canonical form is a fixed point
    }
}

TEST_CASE("deleting any token never passes silently") {
    const std::vector<std::string> sources = {
        "vars x,y; f1 = -y; f2 = x + y",
        "vars x; f1 = x^2 - 1",
        "vars x,y; f1 = 3*x*y - y^2 - x + 1; f2 = y",
        "vars x,y,z; f1 = x; f2 = z; f3 = y",
    };
    for (const std::string& src : sources) {
        const PolyMap original = parse_map(src);
        const auto tokens = detail::lex(src);
        for (std::size_t drop = 0; drop + 1 < tokens.size(); ++drop) {
            std::string mutated;
            for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
                if (i == drop) continue;
                mutated += tokens[i].text;
                mutated += ' ';
            }
            INFO("source: " << src << "  dropped token #" << drop << " '" << tokens[drop].text
                            << "'");
            bool rejected = false;
            bool changed = false;
            try {
                changed = !(parse_map(mutated) == original);
            } catch (const ParseError&) {
                rejected = true;
            }
            CHECK((rejected || changed));
        }
    }
}
