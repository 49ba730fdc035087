#include "k3stab/transport.hpp"

#include "k3stab/error.hpp"

#include <cmath>
#include <numbers>

namespace k3stab {

CurveFrame CurveFrame::make(const IntersectionLattice& lattice, DivisorClass curve_c, DivisorClass d_class)
{
    const Rational cc = lattice.square(curve_c);
    const Rational dc = lattice.pair(d_class, curve_c);
    const Rational dd = lattice.square(d_class);
    if (cc != -2 || dc != 1 || dd != 0)
        throw Error(ErrorCode::HypothesisViolated, "frame needs C^2 = -2, D.C = 1, D^2 = 0",
                    {{"C.C", to_string(cc)}, {"D.C", to_string(dc)}, {"D.D", to_string(dd)}});
    return {std::move(curve_c), std::move(d_class), 2};
}

OmegaCoords coords_from_divisor(const IntersectionLattice& lattice, const CurveFrame& frame,
                                const DivisorClass& omega)
{
    const CdDecomposition parts = decompose_cd(lattice, omega, frame.curve_c, frame.d_class);
    if (parts.c_coeff != 1)
        throw Error(ErrorCode::NotNormalized, "C-coefficient of omega must be 1",
                    {{"omega", to_string(omega)}, {"C_coeff", to_string(parts.c_coeff)}});
    OmegaCoords out;
    out.d_omega = parts.d_coeff - frame.e;
    if (out.d_omega <= -1)
        throw Error(ErrorCode::CoordinateOutOfRange, "D_omega must exceed -1", {{"D_omega", to_string(out.d_omega)}});
    out.psi = parts.orthogonal_part;
    out.g_omega = out.psi.is_zero() ? 0 : 1;
    return out;
}

DivisorClass reconstruct_omega(const CurveFrame& frame, const OmegaCoords& coords)
{
    DivisorClass omega = frame.curve_c + (frame.e + coords.d_omega) * frame.d_class;
    if (coords.g_omega != 0)
        omega += coords.g_omega * coords.psi;
    return omega;
}

BFieldCoords b_coords_from_divisor(const IntersectionLattice& lattice, const CurveFrame& frame, const DivisorClass& b)
{
    const std::size_t rank = frame.curve_c.size();
    if (b.is_zero())
        return {0, 0, 0, DivisorClass::zero(rank)};
    const CdDecomposition parts = decompose_cd(lattice, b, frame.curve_c, frame.d_class);
    if (parts.c_coeff == 0)
        throw Error(ErrorCode::NotNormalized, "B has no C-component, so R_B is undefined", {{"B", to_string(b)}});
    BFieldCoords out;
    out.r_b = parts.c_coeff;
    out.d_b = parts.d_coeff / out.r_b - frame.e;
    if (parts.orthogonal_part.is_zero()) {
        out.g_b = 0;
        out.chi = DivisorClass::zero(rank);
    } else {
        out.g_b = 1;
        out.chi = Rational(1 / out.r_b) * parts.orthogonal_part;
    }
    return out;
}

DivisorClass reconstruct_b(const CurveFrame& frame, const BFieldCoords& coords)
{
    DivisorClass inner = frame.curve_c + (coords.d_b + frame.e) * frame.d_class;
    if (coords.g_b != 0)
        inner += coords.g_b * coords.chi;
    return coords.r_b * inner;
}

Gl2Factor::Gl2Factor(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
{
    if (determinant() <= 0)
        throw Error(ErrorCode::OutOfDomain, "GL+(2) factor needs a positive determinant",
                    {{"det", to_string(determinant())}});
}

ComplexExact Gl2Factor::apply(const ComplexExact& z) const
{
    return {a_ * z.re + b_ * z.im, c_ * z.re + d_ * z.im};
}

bool Gl2Factor::preserves_phase_interval() const
{
    return c_ == 0 && a_ > 0 && d_ > 0;
}

double Gl2Factor::lifted_phase(double phi) const
{
    if (!preserves_phase_interval())
        throw Error(ErrorCode::OutOfDomain, "phase lift is only tabulated for upper triangular positive factors",
                    {{"g", to_string(*this)}});
    if (phi <= 0.0 || phi > 1.0)
        throw Error(ErrorCode::OutOfDomain, "phase must lie in (0, 1]", {{"phi", std::to_string(phi)}});
    if (phi == 1.0)
        return 1.0;
    const double re = std::cos(std::numbers::pi * phi);
    const double im = std::sin(std::numbers::pi * phi);
    const double x = to_double(a_) * re + to_double(b_) * im;
    const double y = to_double(d_) * im;
    return std::atan2(y, x) / std::numbers::pi;
}

std::string to_string(const Gl2Factor& g)
{
    return "[[" + to_string(g.a()) + "," + to_string(g.b()) + "],[" + to_string(g.c()) + "," + to_string(g.d()) +
           "]]";
}

CaseOneSolution solve_case_one(const Rational& d_omega_bar)
{
    if (d_omega_bar == -1)
        throw Error(ErrorCode::Singular, "D_bar = -1 makes the transport singular");
    if (d_omega_bar < -1)
        throw Error(ErrorCode::CoordinateOutOfRange, "D_bar must exceed -1", {{"D_bar", to_string(d_omega_bar)}});
    const Rational denom = d_omega_bar + 1;
    return {Rational(-d_omega_bar / denom), Gl2Factor::diagonal(1, Rational(1 / denom))};
}

CaseTwoSolution solve_case_two(const DivisorClass& curve_c, long t)
{
    return {Rational(-(t + 1)) * curve_c, Gl2Factor::identity()};
}

CaseThreeSolution solve_case_three(const Rational& u_bar)
{
    return {Rational(-u_bar), Gl2Factor::identity()};
}

Rational general_scale(const Rational& d_omega, const Rational& d_omega_bar, long e)
{
    const Rational denom = d_omega_bar + e;
    if (denom == 0)
        throw Error(ErrorCode::Singular, "D_bar + e vanishes", {{"D_bar", to_string(d_omega_bar)}});
    return (d_omega + e) / denom;
}

bool verify_transport(const IntersectionLattice& lattice, const DivisorClass& curve_c, const ChargeParams& params,
                      const ChargeParams& params_bar, const Gl2Factor& g, long t)
{
    lattice.check(curve_c);
    lattice.check(params.nu());
    lattice.check(params_bar.nu());
    const TwistParams tw = TwistParams::for_curve(lattice, curve_c, t);
    const std::size_t rank = lattice.rank();

    std::vector<MukaiVector> spanning = {{1, DivisorClass::zero(rank), 0}, mukai_point(rank)};
    for (std::size_t i = 0; i < rank; ++i)
        spanning.push_back({0, lattice.basis_class(i), 0});

    for (const MukaiVector& v : spanning) {
        const ComplexExact lhs = central_charge(lattice, params, chern_from_mukai(twist_mukai(lattice, v, tw)));
        const ComplexExact rhs = g.apply(central_charge(lattice, params_bar, chern_from_mukai(v)));
        if (!(lhs == rhs))
            return false;
    }
    return true;
}

namespace {

struct ExpansionTerms {
    CurveInvariants inv;
    Rational psi_dot;
    Rational chi_dot;
    Rational b_sq;
    Rational omega_dot_b;
};

ExpansionTerms expansion_terms(const IntersectionLattice& lattice, const CurveFrame& frame,
                               const TransportCoords& coords, const MukaiVector& mukai)
{
    const DivisorClass omega = reconstruct_omega(frame, coords.omega);
    const DivisorClass b = reconstruct_b(frame, coords.b);
    return {curve_invariants(lattice, mukai, frame.curve_c, frame.d_class),
            coords.omega.psi.size() ? lattice.pair(coords.omega.psi, mukai.c1) : Rational(0),
            coords.b.chi.size() ? lattice.pair(coords.b.chi, mukai.c1) : Rational(0), lattice.square(b),
            lattice.pair(omega, b)};
}

}  // namespace

ComplexExact expanded_twisted_charge(const IntersectionLattice& lattice, const CurveFrame& frame,
                                     const TransportCoords& coords, const Rational& v, const MukaiVector& mukai,
                                     long t)
{
    const ExpansionTerms x = expansion_terms(lattice, frame, coords, mukai);
    const Rational tau(t + 1);
    const Rational e(frame.e);
    const BFieldCoords& bc = coords.b;
    const OmegaCoords& oc = coords.omega;

    ComplexExact z;
    z.re = -x.inv.s + (bc.r_b * (bc.d_b + 1) - tau) * x.inv.c + bc.r_b * (bc.d_b + e) * x.inv.d +
           (tau * tau - bc.r_b * bc.d_b * tau + v + 1 - x.b_sq / 2) * x.inv.n + bc.r_b * bc.g_b * x.chi_dot;
    z.im = (oc.d_omega + 1) * x.inv.c + (oc.d_omega + e) * x.inv.d - (oc.d_omega * tau + x.omega_dot_b) * x.inv.n +
           oc.g_omega * x.psi_dot;
    return z;
}

ComplexExact expanded_charge(const IntersectionLattice& lattice, const CurveFrame& frame,
                             const TransportCoords& coords, const Rational& v, const MukaiVector& mukai)
{
    const ExpansionTerms x = expansion_terms(lattice, frame, coords, mukai);
    const Rational e(frame.e);
    const BFieldCoords& bc = coords.b;
    const OmegaCoords& oc = coords.omega;

    ComplexExact z;
    z.re = -x.inv.s + bc.r_b * x.inv.c + bc.r_b * (bc.d_b + e) * x.inv.d + (v + 1 - x.b_sq / 2) * x.inv.n +
           bc.r_b * bc.g_b * x.chi_dot;
    z.im = x.inv.c + (oc.d_omega + e) * x.inv.d - x.inv.n * x.omega_dot_b + oc.g_omega * x.psi_dot;
    return z;
}

Rational non_nef_image(const Rational& a)
{
    if (a <= 0)
        throw Error(ErrorCode::OutOfDomain, "a must be positive", {{"a", to_string(a)}});
    return -a / (a + 1);
}

}  // namespace k3stab
