#include <doctest.h>

#include <stdexcept>

#include "srptlab/rational.hpp"

using srptlab::Rational;

TEST_CASE("parse and render")
{
    CHECK(Rational::parse("3").str() == "3/1");
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK(Rational::parse("-2/6").short_str() == "-1/3");
    CHECK(Rational::parse("7").short_str() == "7");
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
}

TEST_CASE("arithmetic stays exact")
{
    const Rational third(1, 3);
    CHECK(third + third + third == Rational(1));
    CHECK(Rational(1, 10) * 10 == Rational(1));
    CHECK(Rational(3, 2) - Rational(1, 2) == Rational(1));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(5).pow(0) == Rational(1));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK(-Rational(1, 2) == Rational(-1, 2));
}

TEST_CASE("ordering")
{
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(4, 8) == Rational(1, 2));
    CHECK(srptlab::max(Rational(2, 3), Rational(3, 4)) == Rational(3, 4));
    CHECK(srptlab::min(Rational(2, 3), Rational(3, 4)) == Rational(2, 3));
}

TEST_CASE("integer queries")
{
    CHECK(Rational(6, 3).is_integer());
    CHECK(!Rational(7, 3).is_integer());
    CHECK(Rational(6, 3).to_int64() == 2);
    CHECK(Rational(-7, 3).sign() == -1);
    CHECK(Rational(0).sign() == 0);
}

TEST_CASE("decimal rendering")
{
    CHECK(Rational(10, 3).decimal(12) == "3.33333333333");
    CHECK(Rational(4).decimal(12) == "4");
    CHECK(Rational(1, 8).decimal(12) == "0.125");
    CHECK(srptlab::kth_root_decimal(Rational(11), 2, 12) == "3.31662479036");
    CHECK(srptlab::kth_root_decimal(Rational(27), 3, 12) == "3");
    CHECK(srptlab::kth_root_decimal(Rational(5), 1, 12) == "5");
}
