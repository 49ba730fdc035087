#pragma once

#include "k3stab/charge.hpp"
#include "k3stab/twist.hpp"

namespace k3stab {

/// C and D with C^2 = -e, D.C = 1, D^2 = 0. The transport coordinates are
/// written relative to this frame.
struct CurveFrame {
    DivisorClass curve_c;
    DivisorClass d_class;
    long e = 2;

    /// Throws HypothesisViolated if the pairings above fail or e != 2.
    static CurveFrame make(const IntersectionLattice& lattice, DivisorClass curve_c, DivisorClass d_class);
};

/// omega = C + (e + D_omega) D + G_omega psi, psi orthogonal to C and D.
struct OmegaCoords {
    Rational d_omega;
    Rational g_omega;
    DivisorClass psi;
};

/// B = R_B (C + (D_B + e) D + G_B chi), chi orthogonal to C and D.
struct BFieldCoords {
    Rational r_b;
    Rational d_b;
    Rational g_b;
    DivisorClass chi;
};

struct TransportCoords {
    long e = 2;
    OmegaCoords omega;
    BFieldCoords b;
};

/// Throws NotNormalized if the C-coefficient of omega is not 1 and
/// CoordinateOutOfRange if D_omega <= -1. A nonzero orthogonal remainder is
/// returned as psi with G_omega = 1.
OmegaCoords coords_from_divisor(const IntersectionLattice& lattice, const CurveFrame& frame,
                                const DivisorClass& omega);
DivisorClass reconstruct_omega(const CurveFrame& frame, const OmegaCoords& coords);

/// B = 0 maps to all-zero coordinates. A nonzero B with vanishing C-coefficient
/// has no such form and throws NotNormalized.
BFieldCoords b_coords_from_divisor(const IntersectionLattice& lattice, const CurveFrame& frame, const DivisorClass& b);
DivisorClass reconstruct_b(const CurveFrame& frame, const BFieldCoords& coords);

/// Element of GL+(2, Q) acting on charges viewed as (Re, Im) column vectors.
class Gl2Factor {
public:
    /// Row-major [[a, b], [c, d]]; throws OutOfDomain unless ad - bc > 0.
    Gl2Factor(Rational a, Rational b, Rational c, Rational d);
    static Gl2Factor identity() { return {1, 0, 0, 1}; }
    static Gl2Factor diagonal(Rational x, Rational y) { return {std::move(x), 0, 0, std::move(y)}; }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    const Rational& d() const { return d_; }
    Rational determinant() const { return a_ * d_ - b_ * c_; }

    ComplexExact apply(const ComplexExact& z) const;

    /// True when g fixes the real axis pointwise in direction and keeps the
    /// upper half plane (c = 0, a > 0, d > 0). Then the lift f of g to phases is
    /// the one with f((0,1]) in (0,1], and lifted_phase evaluates it.
    bool preserves_phase_interval() const;
    /// f(phi) for the lift above; throws OutOfDomain if !preserves_phase_interval().
    double lifted_phase(double phi) const;

    friend bool operator==(const Gl2Factor&, const Gl2Factor&) = default;

private:
    Rational a_, b_, c_, d_;
};

std::string to_string(const Gl2Factor& g);

struct CaseOneSolution {
    Rational d_omega;
    Gl2Factor g;
};

/// t = -1, B = B_bar = 0: D_omega = -D_bar / (D_bar + 1), g = diag(1, 1/(D_bar + 1)).
/// Throws Singular for D_bar = -1, CoordinateOutOfRange for D_bar < -1.
CaseOneSolution solve_case_one(const Rational& d_omega_bar);

struct CaseTwoSolution {
    DivisorClass b;
    Gl2Factor g;
};

/// D_bar = 0, B_bar = 0: B = -(t+1) C, g = identity, omega and V unchanged.
CaseTwoSolution solve_case_two(const DivisorClass& curve_c, long t);

struct CaseThreeSolution {
    Rational u;
    Gl2Factor g;
};

/// t = -1, D_bar = 0, B_bar = u_bar C: B = u C with u = -u_bar, g = identity.
CaseThreeSolution solve_case_three(const Rational& u_bar);

/// The scale (D_omega + e)/(D_bar + e) of the general g before specializing.
Rational general_scale(const Rational& d_omega, const Rational& d_omega_bar, long e);

/// Checks Z_{params}(ST_{O_C(t)}(E)) = g . Z_{params_bar}(E) exactly on the
/// Mukai vectors (1,0,0), (0,0,1) and (0, e_i, 0) for every basis element e_i.
/// Both sides are linear in E, so this decides the identity on all of K_num.
bool verify_transport(const IntersectionLattice& lattice, const DivisorClass& curve_c, const ChargeParams& params,
                      const ChargeParams& params_bar, const Gl2Factor& g, long t);

/// Z_{V, omega, B}(ST_{O_C(t)}(E)) from the coordinate expansion in
/// (n, c, d, s, psi.c1, chi.c1), without forming the twisted vector.
ComplexExact expanded_twisted_charge(const IntersectionLattice& lattice, const CurveFrame& frame,
                                     const TransportCoords& coords, const Rational& v, const MukaiVector& mukai,
                                     long t);

/// Z_{V, omega, B}(E) from the same expansion before twisting.
ComplexExact expanded_charge(const IntersectionLattice& lattice, const CurveFrame& frame,
                             const TransportCoords& coords, const Rational& v, const MukaiVector& mukai);

/// nu_b = nu + b D with b = -a/(a+1) in (-1, 0). Throws OutOfDomain unless a > 0.
Rational non_nef_image(const Rational& a);

}  // namespace k3stab
