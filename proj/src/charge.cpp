#include "k3stab/charge.hpp"

#include "k3stab/error.hpp"

#include <cmath>
#include <numbers>

namespace k3stab {

ChargeParams::ChargeParams(Rational v, DivisorClass nu, DivisorClass b)
    : v_(std::move(v)), nu_(std::move(nu)), b_(std::move(b))
{
    if (v_ <= 0)
        throw Error(ErrorCode::OutOfDomain, "V must be positive", {{"V", to_string(v_)}});
    if (nu_.size() != b_.size())
        throw Error(ErrorCode::DimensionError, "nu and B live in different lattices",
                    {{"nu_length", std::to_string(nu_.size())}, {"B_length", std::to_string(b_.size())}});
}

ChargeParams::ChargeParams(Rational v, DivisorClass nu)
    : ChargeParams(std::move(v), nu, DivisorClass::zero(nu.size()))
{
}

ComplexExact central_charge(const IntersectionLattice& lattice, const ChargeParams& params, const ChernCharacter& ch)
{
    const ChernCharacter tw = twisted_chern(lattice, ch, params.b());
    return {-tw.ch2 + params.v() * tw.ch0, lattice.pair(params.nu(), tw.ch1)};
}

Phase phase_of(const ComplexExact& z)
{
    if (z.is_zero())
        throw Error(ErrorCode::KernelPhaseUndefined, "central charge vanishes and no kernel phase was supplied");
    if (z.im < 0 || (z.im == 0 && z.re > 0))
        throw Error(ErrorCode::OutsideRegion, "charge is not in the upper half plane or on the negative real axis",
                    {{"re", to_string(z.re)}, {"im", to_string(z.im)}});
    if (z.im == 0)
        return Phase::exact(1.0);
    if (z.re == 0)
        return Phase::exact(0.5);
    if (z.re == z.im)
        return Phase::exact(0.25);
    if (z.re == -z.im)
        return Phase::exact(0.75);
    return {std::atan2(to_double(z.im), to_double(z.re)) / std::numbers::pi, PhaseExactness::TranscendentalApprox};
}

Phase phase(const IntersectionLattice& lattice, const ChargeParams& params, const ChernCharacter& ch,
            std::optional<Phase> kernel_rule)
{
    const ComplexExact z = central_charge(lattice, params, ch);
    if (z.is_zero() && kernel_rule)
        return *kernel_rule;
    return phase_of(z);
}

std::optional<Phase> sigma_b_kernel_phase(const ChernCharacter& ch, const DivisorClass& curve_c)
{
    if (ch.ch0 != 0 || ch.ch2 != 0 || curve_c.is_zero() || ch.ch1.size() != curve_c.size())
        return std::nullopt;
    // ch1 must be m*C with m > 0.
    std::optional<Rational> m;
    for (std::size_t i = 0; i < curve_c.size(); ++i) {
        if (curve_c[i] == 0) {
            if (ch.ch1[i] != 0)
                return std::nullopt;
            continue;
        }
        const Rational ratio = ch.ch1[i] / curve_c[i];
        if (m && *m != ratio)
            return std::nullopt;
        m = ratio;
    }
    if (!m || *m <= 0)
        return std::nullopt;
    return Phase::exact(0.5);
}

ExtendedRational slope_of(const ComplexExact& z)
{
    if (z.is_zero())
        throw Error(ErrorCode::KernelSlopeUndefined, "central charge vanishes");
    if (z.im == 0) {
        if (z.re > 0)
            throw Error(ErrorCode::OutsideRegion, "charge on the positive real axis", {{"re", to_string(z.re)}});
        return ExtendedRational::plus_infinity();
    }
    if (z.im < 0)
        throw Error(ErrorCode::OutsideRegion, "charge in the lower half plane",
                    {{"re", to_string(z.re)}, {"im", to_string(z.im)}});
    return Rational(-z.re / z.im);
}

ExtendedRational slope(const IntersectionLattice& lattice, const ChargeParams& params, const ChernCharacter& ch)
{
    return slope_of(central_charge(lattice, params, ch));
}

bool kernel_contains(const IntersectionLattice& lattice, const ChargeParams& params, const ChernCharacter& ch)
{
    return central_charge(lattice, params, ch).is_zero();
}

Phase limit_phase(const ExtendedRational& p_ratio, const Rational& omega_dot_c)
{
    if (omega_dot_c <= 0)
        throw Error(ErrorCode::OutOfDomain, "omega.C must be positive", {{"omega.C", to_string(omega_dot_c)}});
    if (p_ratio.infinity_sign() > 0)
        throw Error(ErrorCode::OutsideRegion, "arccot(+inf) = 0 is not a phase in (0, 1]");
    if (p_ratio.infinity_sign() < 0)
        return Phase::exact(1.0);

    const Rational arg = Rational(2) / omega_dot_c * p_ratio.value();
    if (arg == 0)
        return Phase::exact(0.5);
    // arccot(x) in (0, pi) equals atan2(1, x).
    return {std::atan2(1.0, to_double(arg)) / std::numbers::pi, PhaseExactness::TranscendentalApprox};
}

}  // namespace k3stab
