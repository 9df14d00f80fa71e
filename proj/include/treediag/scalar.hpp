#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

#include "treediag/errors.hpp"

namespace treediag {

enum class ScalarMode { Exact, Real };

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

// Field element in one of two modes: an arbitrary-precision rational kept in
// canonical form (lowest terms, positive denominator) or a finite double.
// Arithmetic is defined only within a mode; mixing modes throws ModeMismatch.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}

    static Scalar exact(long num, long den = 1);
    static Scalar exact(mpq_class q);
    static Scalar real(double x);
    static Scalar zero(ScalarMode m);
    static Scalar one(ScalarMode m);

    // Text forms: "p", "p/q", or a decimal like "-1.25" (converted exactly)
    // in exact mode; any finite decimal/scientific literal in real mode.
    static Scalar parse(const std::string& text, ScalarMode m);

    ScalarMode mode() const { return std::holds_alternative<double>(v_) ? ScalarMode::Real : ScalarMode::Exact; }
    bool is_exact() const { return mode() == ScalarMode::Exact; }

    const mpq_class& rat() const; // requires exact mode
    double dbl() const;           // requires real mode

    // "p", "p/q", or the shortest round-trip decimal for doubles.
    std::string str() const;
    double to_double() const; // numeric view of either mode

    Scalar to_real() const; // exact -> nearest double; real -> identity

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b);
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

private:
    std::variant<mpq_class, double> v_;
};

// Named forms of the field operations: total within a mode, ModeMismatch across.
inline Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar sub(const Scalar& a, const Scalar& b) { return a - b; }
inline Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar neg(const Scalar& a) { return -a; }

// Throws DivisionByZero when b is literally zero (tolerances play no role here;
// pivot admissibility is decided by the caller before dividing).
Scalar div(const Scalar& a, const Scalar& b);

// Exact mode ignores tol; real mode treats |x| <= tol as zero.
bool is_zero(const Scalar& a, double tol = 0.0);

// Consistent with is_zero: Zero inside the tolerance band, else by sign.
Sign sign_of(const Scalar& a, double tol = 0.0);

inline int sign_int(Sign s) { return static_cast<int>(s); }

} // namespace treediag
