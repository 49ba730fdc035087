#include "k3stab/rational.hpp"

#include "k3stab/error.hpp"

#include <cctype>
#include <cmath>

namespace k3stab {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && s.front() == '-')
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = trim(text);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);

    const auto slash = s.find('/');
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
    const bool ok = is_integer_literal(num) &&
                    (slash == std::string_view::npos || (is_integer_literal(den) && den.front() != '-'));
    if (!ok)
        throw Error(ErrorCode::ParseError, "malformed rational", {{"text", std::string(text)}});

    mpz_class p(std::string(num), 10);
    mpz_class q(1);
    if (slash != std::string_view::npos)
        q = mpz_class(std::string(den), 10);
    if (q == 0)
        throw Error(ErrorCode::ParseError, "zero denominator", {{"text", std::string(text)}});
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

double to_double(const Rational& q)
{
    return q.get_d();
}

std::optional<Rational> exact_sqrt(const Rational& q)
{
    if (q < 0)
        return std::nullopt;
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn;
    mpz_class rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

double ExtendedRational::to_double() const
{
    if (infinity_sign_ > 0)
        return HUGE_VAL;
    if (infinity_sign_ < 0)
        return -HUGE_VAL;
    return value_.get_d();
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b)
{
    if (a.infinity_sign_ != b.infinity_sign_)
        return false;
    return a.infinity_sign_ != 0 || a.value_ == b.value_;
}

ExtendedRational parse_extended(std::string_view text)
{
    const std::string_view s = trim(text);
    if (s == "inf" || s == "+inf")
        return ExtendedRational::plus_infinity();
    if (s == "-inf")
        return ExtendedRational::minus_infinity();
    return parse_rational(s);
}

std::string to_string(const ExtendedRational& q)
{
    if (q.infinity_sign() > 0)
        return "+inf";
    if (q.infinity_sign() < 0)
        return "-inf";
    return to_string(q.value());
}

int surd_sign(const Rational& x, const Rational& y, const Rational& radicand)
{
    const int sx = sgn(x);
    const int sy = radicand == 0 ? 0 : sgn(y);
    if (sy == 0)
        return sx;
    if (sx == 0)
        return sy;
    if (sx == sy)
        return sx;
    // Opposite signs: the larger magnitude wins.
    const Rational lhs = x * x;
    const Rational rhs = y * y * radicand;
    if (lhs > rhs)
        return sx;
    if (lhs < rhs)
        return sy;
    return 0;
}

QuadraticSurd::QuadraticSurd(Rational rational_part, Rational radical_coeff, Rational radicand)
    : a_(std::move(rational_part)), b_(std::move(radical_coeff)), r_(std::move(radicand))
{
    if (r_ < 0)
        throw Error(ErrorCode::OutOfDomain, "negative radicand", {{"radicand", to_string(r_)}});
    if (b_ == 0 || r_ == 0) {
        b_ = 0;
        r_ = 0;
        return;
    }
    if (auto root = exact_sqrt(r_)) {
        a_ += b_ * *root;
        b_ = 0;
        r_ = 0;
    }
}

std::strong_ordering QuadraticSurd::compare(const Rational& q) const
{
    const int s = surd_sign(a_ - q, b_, r_);
    if (s < 0)
        return std::strong_ordering::less;
    if (s > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

double QuadraticSurd::to_double() const
{
    if (b_ == 0)
        return a_.get_d();
    const double root = std::sqrt(r_.get_d());
    const double a = a_.get_d();
    const double br = b_.get_d() * root;
    if ((a >= 0) == (br >= 0))
        return a + br;
    // a + b*sqrt(R) = (a^2 - b^2 R) / (a - b*sqrt(R)); the numerator is exact.
    const Rational num = a_ * a_ - b_ * b_ * r_;
    return num.get_d() / (a - br);
}

std::string to_string(const QuadraticSurd& s)
{
    if (s.is_rational())
        return to_string(s.rational_part());
    std::string out;
    if (s.rational_part() != 0) {
        out = to_string(s.rational_part());
        out += s.radical_coeff() < 0 ? " - " : " + ";
        out += to_string(Rational(abs(s.radical_coeff())));
    } else {
        out = to_string(s.radical_coeff());
    }
    out += "*sqrt(";
    out += to_string(s.radicand());
    out += ')';
    return out;
}

}  // namespace k3stab
