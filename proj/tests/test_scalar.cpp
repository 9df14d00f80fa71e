#include "treediag/scalar.hpp"

#include <doctest.h>

using namespace treediag;

TEST_SUITE_BEGIN("scalar");

TEST_CASE("exact arithmetic stays in lowest terms") {
    Scalar a = Scalar::exact(2, 4);
    CHECK(a.str() == "1/2");
    CHECK(a == Scalar::exact(1, 2));

    Scalar b = Scalar::exact(-3, 6);
    CHECK(b.str() == "-1/2");
    CHECK((a + b).str() == "0");
    CHECK((a - b).str() == "1");
    CHECK((a * b).str() == "-1/4");
    CHECK((-a).str() == "-1/2");
    CHECK(div(a, b).str() == "-1");

    Scalar c = Scalar::exact(7);
    c += Scalar::exact(1, 3);
    CHECK(c.str() == "22/3");
    c *= Scalar::exact(3);
    CHECK(c.str() == "22");
    c -= Scalar::exact(22);
    CHECK(is_zero(c));
}

TEST_CASE("defaults and factories") {
    CHECK(Scalar().is_exact());
    CHECK(is_zero(Scalar()));
    CHECK(Scalar::zero(ScalarMode::Exact) == Scalar::exact(0));
    CHECK(Scalar::one(ScalarMode::Exact) == Scalar::exact(1));
    CHECK(Scalar::zero(ScalarMode::Real) == Scalar::real(0.0));
    CHECK(Scalar::one(ScalarMode::Real) == Scalar::real(1.0));
    CHECK(Scalar::zero(ScalarMode::Real).mode() == ScalarMode::Real);
}

TEST_CASE("parse round-trips str in both modes") {
    for (const char* text : {"0", "1", "-7", "3/2", "-22/7", "1000000000000000000000/3"}) {
        Scalar s = Scalar::parse(text, ScalarMode::Exact);
        CHECK(s.str() == text);
        CHECK(Scalar::parse(s.str(), ScalarMode::Exact) == s);
    }
    for (double x : {0.0, 1.5, -2.25, 1e-12, 3.141592653589793, -1e300}) {
        Scalar s = Scalar::real(x);
        CHECK(Scalar::parse(s.str(), ScalarMode::Real) == s);
        CHECK(s.dbl() == x);
    }
}

TEST_CASE("exact parse accepts decimals exactly") {
    CHECK(Scalar::parse("-1.25", ScalarMode::Exact) == Scalar::exact(-5, 4));
    CHECK(Scalar::parse("0.1", ScalarMode::Exact) == Scalar::exact(1, 10));
}

TEST_CASE("parse rejects garbage") {
    CHECK_THROWS_AS(Scalar::parse("", ScalarMode::Exact), Error);
    CHECK_THROWS_AS(Scalar::parse("1/0", ScalarMode::Exact), Error);
    CHECK_THROWS_AS(Scalar::parse("seven", ScalarMode::Exact), Error);
    CHECK_THROWS_AS(Scalar::parse("1.5.2", ScalarMode::Real), Error);
    CHECK_THROWS_AS(Scalar::parse("nan", ScalarMode::Real), Error);
    CHECK_THROWS_AS(Scalar::parse("inf", ScalarMode::Real), Error);
}

TEST_CASE("modes never mix") {
    Scalar q = Scalar::exact(1, 2);
    Scalar x = Scalar::real(0.5);
    CHECK_THROWS_AS((void)(q + x), ModeMismatch);
    CHECK_THROWS_AS((void)(q * x), ModeMismatch);
    CHECK_THROWS_AS((void)(q == x), ModeMismatch);
    CHECK_THROWS_AS((void)(q < x), ModeMismatch);
    CHECK_THROWS_AS((void)div(q, x), ModeMismatch);
}

TEST_CASE("division by literal zero throws in both modes") {
    CHECK_THROWS_AS((void)div(Scalar::exact(1), Scalar::exact(0)), DivisionByZero);
    CHECK_THROWS_AS((void)div(Scalar::real(1), Scalar::real(0.0)), DivisionByZero);
    // A tiny real divisor is not a literal zero; div itself is total there.
    CHECK(div(Scalar::real(1), Scalar::real(1e-300)).dbl() == doctest::Approx(1e300));
}

TEST_CASE("real arithmetic is plain double arithmetic") {
    Scalar a = Scalar::real(0.1);
    Scalar b = Scalar::real(0.2);
    CHECK((a + b).dbl() == 0.1 + 0.2);
    CHECK((a * b).dbl() == 0.1 * 0.2);
    CHECK((a - b).dbl() == 0.1 - 0.2);
    CHECK(div(a, b).dbl() == 0.1 / 0.2);
}

TEST_CASE("is_zero and sign_of honor the tolerance in real mode only") {
    CHECK(is_zero(Scalar::exact(0), 100.0));
    CHECK_FALSE(is_zero(Scalar::exact(1, 1000000), 100.0)); // exact ignores tol
    CHECK(sign_of(Scalar::exact(-3)) == Sign::Negative);
    CHECK(sign_of(Scalar::exact(0)) == Sign::Zero);
    CHECK(sign_of(Scalar::exact(2, 7)) == Sign::Positive);

    CHECK(is_zero(Scalar::real(1e-13), 1e-12));
    CHECK(is_zero(Scalar::real(-1e-13), 1e-12));
    CHECK_FALSE(is_zero(Scalar::real(1e-11), 1e-12));
    CHECK(sign_of(Scalar::real(1e-13), 1e-12) == Sign::Zero);
    CHECK(sign_of(Scalar::real(-5.0), 1e-12) == Sign::Negative);
    CHECK(sign_of(Scalar::real(5.0), 1e-12) == Sign::Positive);
    CHECK(sign_int(Sign::Negative) == -1);
    CHECK(sign_int(Sign::Zero) == 0);
    CHECK(sign_int(Sign::Positive) == 1);
}

TEST_CASE("ordering") {
    CHECK(Scalar::exact(1, 3) < Scalar::exact(1, 2));
    CHECK(Scalar::exact(-1) < Scalar::exact(0));
    CHECK(Scalar::exact(2) >= Scalar::exact(2));
    CHECK(Scalar::real(1.5) > Scalar::real(-2.0));
}

TEST_CASE("conversions") {
    CHECK(Scalar::exact(1, 2).to_double() == 0.5);
    CHECK(Scalar::real(0.5).to_double() == 0.5);
    Scalar r = Scalar::exact(1, 3).to_real();
    CHECK(r.mode() == ScalarMode::Real);
    CHECK(r.dbl() == doctest::Approx(1.0 / 3.0));
    CHECK(Scalar::real(2.5).to_real() == Scalar::real(2.5));
    CHECK(Scalar::exact(3, 2).rat() == mpq_class(3, 2));
}

TEST_SUITE_END();
