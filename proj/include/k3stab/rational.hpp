#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace k3stab {

/// Exact rational scalar. Every lattice, Mukai and charge computation runs on it.
using Rational = mpq_class;

/// Parses "p/q", "-p/q" or a bare integer. Surrounding whitespace is ignored.
/// Throws Error{ErrorCode::ParseError} on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical form: "n" for integers, "p/q" otherwise (lowest terms, sign on p).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Exact square root when q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

/// A rational number or a signed infinity. Used for slopes (+inf on the
/// negative real axis) and for the limit-phase ratio.
class ExtendedRational {
public:
    ExtendedRational() : value_(0) {}
    ExtendedRational(Rational value) : value_(std::move(value)) {}   // NOLINT: implicit by design of the type
    static ExtendedRational plus_infinity() { return ExtendedRational(+1); }
    static ExtendedRational minus_infinity() { return ExtendedRational(-1); }

    bool is_finite() const { return infinity_sign_ == 0; }
    int infinity_sign() const { return infinity_sign_; }
    /// Only meaningful when is_finite().
    const Rational& value() const { return value_; }

    double to_double() const;
    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);

private:
    explicit ExtendedRational(int sign) : value_(0), infinity_sign_(sign) {}
    Rational value_;
    int infinity_sign_ = 0;
};

/// "inf", "+inf", "-inf", or a rational.
ExtendedRational parse_extended(std::string_view text);
std::string to_string(const ExtendedRational& q);

/// a + b * sqrt(R) with R >= 0. Comparisons against rationals are decided
/// exactly by sign analysis and squaring; nothing goes through floating point.
class QuadraticSurd {
public:
    QuadraticSurd(Rational rational_part, Rational radical_coeff, Rational radicand);
    explicit QuadraticSurd(Rational value) : QuadraticSurd(std::move(value), 0, 0) {}

    const Rational& rational_part() const { return a_; }
    const Rational& radical_coeff() const { return b_; }
    const Rational& radicand() const { return r_; }

    /// True when the value is rational (b == 0 or R a perfect square).
    bool is_rational() const { return b_ == 0; }
    /// Only meaningful when is_rational().
    const Rational& as_rational() const { return a_; }

    /// Exact three-way comparison against a rational.
    std::strong_ordering compare(const Rational& q) const;
    double to_double() const;

private:
    Rational a_;
    Rational b_;
    Rational r_;
};

/// "a", or "a + b*sqrt(R)" with each coefficient in canonical rational form.
std::string to_string(const QuadraticSurd& s);

/// Sign of x + y*sqrt(R), exact; R >= 0.
int surd_sign(const Rational& x, const Rational& y, const Rational& radicand);

}  // namespace k3stab
