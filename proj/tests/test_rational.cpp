#include "k3stab/error.hpp"
#include "k3stab/rational.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace k3stab;
using k3stab::testing::q;

TEST_CASE("parse_rational accepts integers, fractions and signs")
{
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-3/2") == q(-3, 2));
    CHECK(parse_rational("+6/4") == q(3, 2));
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-4/2")) == "-2");
}

TEST_CASE("parse_rational rejects malformed text")
{
    CHECK_THROWS_AS(parse_rational(""), Error);
    CHECK_THROWS_AS(parse_rational("1/"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    try {
        parse_rational("1/0");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
    }
}

TEST_CASE("exact_sqrt finds rational square roots only")
{
    CHECK(exact_sqrt(q(9, 4)) == q(3, 2));
    CHECK(exact_sqrt(0) == Rational(0));
    CHECK_FALSE(exact_sqrt(2).has_value());
    CHECK_FALSE(exact_sqrt(-1).has_value());
}

TEST_CASE("ExtendedRational parsing and printing")
{
    CHECK(parse_extended("inf") == ExtendedRational::plus_infinity());
    CHECK(parse_extended("+inf") == ExtendedRational::plus_infinity());
    CHECK(parse_extended("-inf") == ExtendedRational::minus_infinity());
    CHECK(parse_extended("5/3") == ExtendedRational(q(5, 3)));
    CHECK(to_string(ExtendedRational::plus_infinity()) == "+inf");
    CHECK(to_string(ExtendedRational::minus_infinity()) == "-inf");
    CHECK(to_string(ExtendedRational(q(-1, 2))) == "-1/2");
    CHECK_FALSE(ExtendedRational::plus_infinity() == ExtendedRational::minus_infinity());
    CHECK(std::isinf(ExtendedRational::plus_infinity().to_double()));
}

TEST_CASE("QuadraticSurd folds perfect-square radicands into the rational part")
{
    const QuadraticSurd s(1, 2, q(9, 4));
    CHECK(s.is_rational());
    CHECK(s.as_rational() == 4);
    const QuadraticSurd t(1, 1, 2);
    CHECK_FALSE(t.is_rational());
    CHECK(t.to_double() == doctest::Approx(1 + std::sqrt(2.0)));
}

TEST_CASE("QuadraticSurd comparisons are exact")
{
    // sqrt(2) lies between 1.41421356 and 1.41421357.
    const QuadraticSurd root2(0, 1, 2);
    CHECK(root2.compare(q(141421356, 100000000)) == std::strong_ordering::greater);
    CHECK(root2.compare(q(141421357, 100000000)) == std::strong_ordering::less);
    // 3 - 2 sqrt(2) > 0 but tiny.
    const QuadraticSurd small(3, -2, 2);
    CHECK(small.compare(0) == std::strong_ordering::greater);
    CHECK(small.compare(q(1, 5)) == std::strong_ordering::less);
    CHECK(QuadraticSurd(q(5, 2)).compare(q(5, 2)) == std::strong_ordering::equal);
}

TEST_CASE("property: surd comparison agrees with long double on random surds")
{
    k3stab::testing::Gen gen;
    for (int i = 0; i < 300; ++i) {
        const Rational a = gen.rational(), b = gen.rational(), r = gen.positive_rational(), x = gen.rational();
        const QuadraticSurd s(a, b, r);
        const long double lhs = to_double(a) + to_double(b) * std::sqrt(static_cast<long double>(to_double(r)));
        const long double rhs = to_double(x);
        if (std::fabs(lhs - rhs) < 1e-9L)
            continue;  // too close for the float reference to be trusted
        const auto ord = s.compare(x);
        CHECK((ord == std::strong_ordering::less) == (lhs < rhs));
    }
}

TEST_CASE("surd_sign decides the sign of x + y sqrt(R)")
{
    CHECK(surd_sign(0, 0, 7) == 0);
    CHECK(surd_sign(-3, 1, 9) == 0);
    CHECK(surd_sign(-3, 1, 10) == 1);
    CHECK(surd_sign(3, -1, 10) == -1);
    CHECK(surd_sign(1, 1, 2) == 1);
    CHECK(surd_sign(-1, -1, 2) == -1);
}
