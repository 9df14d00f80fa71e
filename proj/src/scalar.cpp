#include "treediag/scalar.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace treediag {

namespace {

mpz_class parse_integer(const std::string& text) {
    if (text.empty())
        throw ParseError("empty integer");
    try {
        return mpz_class(text, 10);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad integer '" + text + "'");
    }
}

// "p", "p/q", or "d.ddd" converted exactly.
mpq_class parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpz_class num = parse_integer(text.substr(0, slash));
        mpz_class den = parse_integer(text.substr(slash + 1));
        if (den == 0)
            throw DivisionByZero();
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        size_t frac = text.size() - dot - 1;
        if (frac == 0)
            throw ParseError("bad number '" + text + "'");
        mpz_class num = parse_integer(digits);
        mpz_class den = 1;
        for (size_t i = 0; i < frac; ++i)
            den *= 10;
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    return mpq_class(parse_integer(text));
}

double parse_double(const std::string& text) {
    double x = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last)
        throw ParseError("bad real number '" + text + "'");
    if (!std::isfinite(x))
        throw ParseError("non-finite real number '" + text + "'");
    return x;
}

} // namespace

Scalar Scalar::exact(long num, long den) {
    if (den == 0)
        throw DivisionByZero();
    mpq_class q(num, den);
    q.canonicalize();
    Scalar s;
    s.v_ = std::move(q);
    return s;
}

Scalar Scalar::exact(mpq_class q) {
    q.canonicalize();
    Scalar s;
    s.v_ = std::move(q);
    return s;
}

Scalar Scalar::real(double x) {
    if (!std::isfinite(x))
        throw Error("real scalar must be finite");
    if (x == 0.0)
        x = 0.0; // normalize -0.0
    Scalar s;
    s.v_ = x;
    return s;
}

Scalar Scalar::zero(ScalarMode m) { return m == ScalarMode::Exact ? Scalar() : Scalar::real(0.0); }

Scalar Scalar::one(ScalarMode m) { return m == ScalarMode::Exact ? Scalar::exact(1) : Scalar::real(1.0); }

Scalar Scalar::parse(const std::string& text, ScalarMode m) {
    if (m == ScalarMode::Exact)
        return Scalar::exact(parse_rational(text));
    return Scalar::real(parse_double(text));
}

const mpq_class& Scalar::rat() const {
    assert(is_exact());
    return std::get<mpq_class>(v_);
}

double Scalar::dbl() const {
    assert(!is_exact());
    return std::get<double>(v_);
}

std::string Scalar::str() const {
    if (is_exact()) {
        const mpq_class& q = rat();
        std::string s = q.get_num().get_str();
        if (q.get_den() != 1)
            s += "/" + q.get_den().get_str();
        return s;
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, dbl());
    assert(ec == std::errc());
    return std::string(buf, ptr);
}

double Scalar::to_double() const { return is_exact() ? rat().get_d() : dbl(); }

Scalar Scalar::to_real() const { return is_exact() ? Scalar::real(rat().get_d()) : *this; }

namespace {
void require_same_mode(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode())
        throw ModeMismatch();
}
} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b);
    if (a.is_exact())
        return Scalar::exact(mpq_class(a.rat() + b.rat()));
    return Scalar::real(a.dbl() + b.dbl());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b);
    if (a.is_exact())
        return Scalar::exact(mpq_class(a.rat() - b.rat()));
    return Scalar::real(a.dbl() - b.dbl());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b);
    if (a.is_exact())
        return Scalar::exact(mpq_class(a.rat() * b.rat()));
    return Scalar::real(a.dbl() * b.dbl());
}

Scalar operator-(const Scalar& a) {
    if (a.is_exact())
        return Scalar::exact(mpq_class(-a.rat()));
    return Scalar::real(-a.dbl());
}

Scalar div(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b);
    if (is_zero(b, 0.0))
        throw DivisionByZero();
    if (a.is_exact())
        return Scalar::exact(mpq_class(a.rat() / b.rat()));
    return Scalar::real(a.dbl() / b.dbl());
}

bool operator==(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b);
    if (a.is_exact())
        return a.rat() == b.rat();
    return a.dbl() == b.dbl();
}

bool operator<(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b);
    if (a.is_exact())
        return a.rat() < b.rat();
    return a.dbl() < b.dbl();
}

bool is_zero(const Scalar& a, double tol) {
    if (a.is_exact())
        return sgn(a.rat()) == 0;
    return std::fabs(a.dbl()) <= tol;
}

Sign sign_of(const Scalar& a, double tol) {
    if (a.is_exact()) {
        int s = sgn(a.rat());
        return s < 0 ? Sign::Negative : s > 0 ? Sign::Positive : Sign::Zero;
    }
    double x = a.dbl();
    if (std::fabs(x) <= tol)
        return Sign::Zero;
    return x < 0 ? Sign::Negative : Sign::Positive;
}

} // namespace treediag
