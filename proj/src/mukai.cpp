#include "k3stab/mukai.hpp"

#include "k3stab/error.hpp"

#include <algorithm>

namespace k3stab {

MukaiVector& MukaiVector::operator+=(const MukaiVector& other)
{
    r += other.r;
    c1 += other.c1;
    s += other.s;
    return *this;
}

namespace {

struct Triple {
    Rational first;
    DivisorClass middle;
    Rational last;
};

// "a,(x,y,...),b"
Triple parse_triple(std::string_view text, const char* what)
{
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw Error(ErrorCode::ParseError, std::string("expected r,(c1),s layout for ") + what,
                    {{"text", std::string(text)}});
    std::string_view head = text.substr(0, open);
    std::string_view tail = text.substr(close + 1);
    while (!head.empty() && head.back() == ' ')
        head.remove_suffix(1);
    while (!tail.empty() && tail.front() == ' ')
        tail.remove_prefix(1);
    if (head.empty() || head.back() != ',' || tail.empty() || tail.front() != ',')
        throw Error(ErrorCode::ParseError, std::string("expected r,(c1),s layout for ") + what,
                    {{"text", std::string(text)}});
    head.remove_suffix(1);
    tail.remove_prefix(1);
    return {parse_rational(head), parse_divisor(text.substr(open + 1, close - open - 1)), parse_rational(tail)};
}

std::string render_triple(const Rational& a, const DivisorClass& d, const Rational& b)
{
    return to_string(a) + ",(" + to_string(d) + ")," + to_string(b);
}

}  // namespace

std::string to_string(const MukaiVector& v)
{
    return render_triple(v.r, v.c1, v.s);
}

MukaiVector parse_mukai(std::string_view text)
{
    auto [r, c1, s] = parse_triple(text, "Mukai vector");
    return {std::move(r), std::move(c1), std::move(s)};
}

std::string to_string(const ChernCharacter& ch)
{
    return render_triple(ch.ch0, ch.ch1, ch.ch2);
}

ChernCharacter parse_chern(std::string_view text)
{
    auto [a, d, b] = parse_triple(text, "Chern character");
    return {std::move(a), std::move(d), std::move(b)};
}

MukaiVector mukai_from_chern(const ChernCharacter& ch)
{
    return {ch.ch0, ch.ch1, ch.ch2 + ch.ch0};
}

ChernCharacter chern_from_mukai(const MukaiVector& v)
{
    return {v.r, v.c1, v.s - v.r};
}

Rational mukai_pairing(const IntersectionLattice& lattice, const MukaiVector& v, const MukaiVector& w)
{
    return lattice.pair(v.c1, w.c1) - v.r * w.s - v.s * w.r;
}

Rational euler_chi(const IntersectionLattice& lattice, const MukaiVector& v, const MukaiVector& w)
{
    return -mukai_pairing(lattice, v, w);
}

bool is_spherical(const IntersectionLattice& lattice, const MukaiVector& v)
{
    return mukai_pairing(lattice, v, v) == -2;
}

ChernCharacter twisted_chern(const IntersectionLattice& lattice, const ChernCharacter& ch, const DivisorClass& b)
{
    const Rational b_sq = lattice.square(b);
    return {ch.ch0, ch.ch1 - ch.ch0 * b, ch.ch2 - lattice.pair(ch.ch1, b) + ch.ch0 * b_sq / 2};
}

MukaiVector mukai_structure_sheaf(std::size_t rank)
{
    return {1, DivisorClass::zero(rank), 1};
}

MukaiVector mukai_point(std::size_t rank)
{
    return {0, DivisorClass::zero(rank), 1};
}

MukaiVector mukai_curve_bundle(const DivisorClass& c, long t)
{
    return {0, c, Rational(t + 1)};
}

ChernCharacter chern_line_bundle(const IntersectionLattice& lattice, const DivisorClass& alpha)
{
    return {1, alpha, lattice.square(alpha) / 2};
}

HomExtOnCurve hom_ext_on_c(long a, long b)
{
    const long hom = std::max(b - a + 1, 0L);
    const long ext2 = std::max(a - b + 1, 0L);
    return {hom, hom + ext2 - 2, ext2};
}

}  // namespace k3stab
