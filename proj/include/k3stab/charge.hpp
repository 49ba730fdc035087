#pragma once

#include "k3stab/mukai.hpp"

#include <optional>

namespace k3stab {

/// Parameters of Z_{V,nu,B}(E) = -ch2^B(E) + V ch0^B(E) + i nu.ch1^B(E).
/// B may be the zero class.
class ChargeParams {
public:
    /// Throws OutOfDomain unless V > 0, DimensionError if nu and B differ in length.
    ChargeParams(Rational v, DivisorClass nu, DivisorClass b);
    ChargeParams(Rational v, DivisorClass nu);

    const Rational& v() const { return v_; }
    const DivisorClass& nu() const { return nu_; }
    const DivisorClass& b() const { return b_; }

private:
    Rational v_;
    DivisorClass nu_;
    DivisorClass b_;
};

struct ComplexExact {
    Rational re;
    Rational im;

    bool is_zero() const { return re == 0 && im == 0; }
    friend ComplexExact operator+(const ComplexExact& a, const ComplexExact& b) { return {a.re + b.re, a.im + b.im}; }
    friend bool operator==(const ComplexExact&, const ComplexExact&) = default;
};

enum class PhaseExactness { Exact, TranscendentalApprox };

/// A phase in (0, 1]. Exact when it is one of the rational values reached at
/// an axis or a diagonal (1/4, 1/2, 3/4, 1); otherwise a double approximation.
struct Phase {
    double value;
    PhaseExactness exactness;

    static Phase exact(double v) { return {v, PhaseExactness::Exact}; }
};

ComplexExact central_charge(const IntersectionLattice& lattice, const ChargeParams& params, const ChernCharacter& ch);

/// Phase of a nonzero charge in the upper half plane union the negative real
/// axis. Throws OutsideRegion for charges elsewhere, KernelPhaseUndefined for 0.
Phase phase_of(const ComplexExact& z);

/// (1/pi) arg Z(ch). A vanishing charge takes kernel_rule; without one it throws
/// KernelPhaseUndefined.
Phase phase(const IntersectionLattice& lattice, const ChargeParams& params, const ChernCharacter& ch,
            std::optional<Phase> kernel_rule = std::nullopt);

/// The limit phase 1/2 that sigma^b assigns to kernel objects, provided ch is a
/// positive multiple of ch(O_C(-1)) = (0, C, 0). Other classes get nullopt.
std::optional<Phase> sigma_b_kernel_phase(const ChernCharacter& ch, const DivisorClass& curve_c);

/// rho = -Re Z / Im Z, exact; +inf on the negative real axis.
/// Throws KernelSlopeUndefined for Z = 0, OutsideRegion for Z on the positive real axis.
ExtendedRational slope_of(const ComplexExact& z);
ExtendedRational slope(const IntersectionLattice& lattice, const ChargeParams& params, const ChernCharacter& ch);

bool kernel_contains(const IntersectionLattice& lattice, const ChargeParams& params, const ChernCharacter& ch);

/// (1/pi) arccot(k * p_ratio) with k = 2 / (omega.C) and arccot valued in (0, pi).
/// p_ratio = u/epsilon for p = [epsilon : u]; -inf gives 1, +inf has no phase in
/// (0, 1] and throws OutsideRegion. Throws OutOfDomain unless omega_dot_c > 0.
Phase limit_phase(const ExtendedRational& p_ratio, const Rational& omega_dot_c);

}  // namespace k3stab
