#include "katz/error.hpp"
#include "katz/scalar.hpp"
#include "support/numeric.hpp"
#include "support/random.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace katz;
using katz::testing::close;
using katz::testing::to_complex;

TEST_CASE("rational arithmetic and parsing") {
    CHECK(Scalar(frac(1, 2)) + Scalar(1L) == Scalar(frac(3, 2)));
    CHECK(parse_rational("-6/4") == frac(-3, 2));
    CHECK(to_string(parse_rational("10/5")) == "2");
    for (const char* bad : {"3/", "/3", "1/0", "a", "", "1.5", "--1"}) CHECK_THROWS_AS(parse_rational(bad), Error);
    CHECK(frac(4, -6) == frac(-2, 3));
    CHECK(to_string(frac(4, -6)) == "-2/3");
}

TEST_CASE("cyclotomic identities") {
    Scalar z3 = Scalar::root_of_unity(3);
    CHECK(z3 + z3 * z3 == Scalar(-1L));
    Scalar i = Scalar::root_of_unity(4);
    CHECK(i * i == Scalar(-1L));
    CHECK((i * i).conductor() == 1);
    CHECK(Scalar::root_of_unity(12, 12) == Scalar(1L));
    CHECK(Scalar::root_of_unity(8).pow(8) == Scalar(1L));
    CHECK(Scalar::root_of_unity(6, 2) == z3);
}

TEST_CASE("is_integer") {
    CHECK(Scalar(3L).is_integer());
    CHECK_FALSE(Scalar(frac(1, 2)).is_integer());
    CHECK_FALSE(Scalar::root_of_unity(3).is_integer());
}

TEST_CASE("embed") {
    Scalar h = Scalar(frac(1, 2)).embed(6);
    CHECK(h.conductor() == 6);
    CHECK(h == Scalar(frac(1, 2)));
    Scalar z = Scalar::root_of_unity(3).embed(6);
    CHECK(z.conductor() == 6);
    CHECK(z == Scalar::root_of_unity(6, 2));
    CHECK(z.minimal().conductor() == 3);
    try {
        Scalar::root_of_unity(4).embed(6);
        FAIL("expected IncompatibleConductor");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IncompatibleConductor);
    }
}

TEST_CASE("division by zero") {
    try {
        (void)(Scalar(1L) / Scalar(0L));
        FAIL("expected DivisionByZero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
    }
}

TEST_CASE("roots") {
    CHECK(Scalar(4L).root(2) == Scalar(2L));
    Scalar r = Scalar(-1L).root(2);
    CHECK(r * r == Scalar(-1L));
    Scalar s = Scalar(2L).root(2);
    CHECK(s * s == Scalar(2L));
    Scalar c = Scalar::root_of_unity(5, 2).root(3);
    CHECK(c.pow(3) == Scalar::root_of_unity(5, 2));
    CHECK_FALSE(Scalar(2L).nth_root(3).has_value());
}

TEST_CASE("residue classes") {
    CHECK(ResidueClass(Scalar(frac(7, 3))) == ResidueClass(Scalar(frac(1, 3))));
    CHECK(ResidueClass(Scalar(frac(-2, 3))).representative() == Scalar(frac(1, 3)));
    CHECK(ResidueClass(Scalar(5L)).is_zero());
    CHECK(Scalar(frac(7, 4)).reduced_mod(frac(1, 2)) == Scalar(frac(1, 4)));
}

TEST_CASE("field axioms against the complex embedding") {
    katz::testing::Gen g(11);
    const std::vector<unsigned long> conductors{1, 3, 4, 5, 7, 8, 9, 12, 15, 24};
    for (int i = 0; i < 300; ++i) {
        Scalar a = g.scalar(g.pick(conductors)), b = g.scalar(g.pick(conductors)), c = g.scalar(g.pick(conductors));
        CHECK(close(to_complex(a + b), to_complex(a) + to_complex(b)));
        CHECK(close(to_complex(a * b), to_complex(a) * to_complex(b)));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a - a == Scalar(0L));
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == Scalar(1L));
            CHECK(close(to_complex(b / a), to_complex(b) / to_complex(a)));
        }
        // canonical form: equal values have identical minimal coordinates
        Scalar x = (a + b) - b;
        CHECK(x.conductor() == a.minimal().conductor());
        CHECK(x.coords() == a.minimal().coords());
    }
}

TEST_CASE("ordering is total and consistent with equality") {
    katz::testing::Gen g(12);
    for (int i = 0; i < 200; ++i) {
        Scalar a = g.scalar(12), b = g.scalar(12);
        CHECK(((a <=> b) == 0) == (a == b));
        CHECK(((a < b) != (b < a)) == (a != b));
    }
}
