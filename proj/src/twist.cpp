#include "k3stab/twist.hpp"

#include "k3stab/error.hpp"

namespace k3stab {

TwistParams::TwistParams(const IntersectionLattice& lattice, MukaiVector spherical_class, long t)
    : t_(t), v_s_(std::move(spherical_class))
{
    const Rational self = mukai_pairing(lattice, v_s_, v_s_);
    if (self != -2)
        throw Error(ErrorCode::NotSpherical, "spherical class must satisfy <v,v> = -2",
                    {{"v", to_string(v_s_)}, {"<v,v>", to_string(self)}});
}

TwistParams TwistParams::for_curve(const IntersectionLattice& lattice, const DivisorClass& curve_c, long t)
{
    return TwistParams(lattice, mukai_curve_bundle(curve_c, t), t);
}

MukaiVector twist_mukai(const IntersectionLattice& lattice, const MukaiVector& v, const TwistParams& tw)
{
    const Rational coeff = mukai_pairing(lattice, tw.spherical_class(), v);
    return v + coeff * tw.spherical_class();
}

CurveInvariants curve_invariants(const IntersectionLattice& lattice, const MukaiVector& v, const DivisorClass& curve_c,
                                 const DivisorClass& d_class)
{
    return {v.r, lattice.pair(v.c1, curve_c), lattice.pair(v.c1, d_class), v.s};
}

CurveInvariants twist_invariants(const CurveInvariants& in, long t)
{
    const Rational tp1(t + 1);
    const Rational k = in.c - in.n * tp1;
    return {in.n, -in.c + 2 * in.n * tp1, in.d + k, in.s + k * tp1};
}

std::string to_string(const SheafLabel& label)
{
    if (label.kind == SheafLabel::Kind::Point)
        return "O_p";
    return "O_C(" + std::to_string(label.twist) + ")";
}

CohomologyTable skyscraper_twist(bool on_curve, long t, TwistDirection direction)
{
    if (!on_curve)
        return {{0, SheafLabel::point()}};
    if (direction == TwistDirection::Forward)
        return {{-1, SheafLabel::curve(t - 1)}, {0, SheafLabel::curve(t)}};
    return {{-1, SheafLabel::curve(t)}, {0, SheafLabel::curve(t + 1)}};
}

MukaiVector alternating_mukai_sum(const CohomologyTable& table, const DivisorClass& curve_c)
{
    MukaiVector sum = {0, DivisorClass::zero(curve_c.size()), 0};
    for (const auto& [degree, label] : table) {
        const MukaiVector v = label.kind == SheafLabel::Kind::Point ? mukai_point(curve_c.size())
                                                                    : mukai_curve_bundle(curve_c, label.twist);
        sum += (degree % 2 == 0 ? Rational(1) : Rational(-1)) * v;
    }
    return sum;
}

}  // namespace k3stab
