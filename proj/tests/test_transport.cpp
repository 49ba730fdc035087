#include "k3stab/error.hpp"
#include "k3stab/surface.hpp"
#include "k3stab/transport.hpp"
#include "k3stab/twist.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace k3stab;
using k3stab::testing::cd_lattice;
using k3stab::testing::cd_psi_lattice;
using k3stab::testing::Gen;
using k3stab::testing::oracle_charge;
using k3stab::testing::oracle_twist;
using k3stab::testing::q;

namespace {

const DivisorClass kC{1, 0};
const DivisorClass kD{0, 1};
const DivisorClass kZero{0, 0};

DivisorClass omega_for(const Rational& d_omega) { return kC + (2 + d_omega) * kD; }

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("coords_from_divisor examples")
{
    const auto lat = cd_lattice();
    const auto frame = CurveFrame::make(lat, kC, kD);
    const auto c0 = coords_from_divisor(lat, frame, DivisorClass{1, 2});
    CHECK(c0.d_omega == 0);
    CHECK(c0.psi.is_zero());
    CHECK(coords_from_divisor(lat, frame, DivisorClass{1, 3}).d_omega == 1);
    CHECK(code_of([&] { coords_from_divisor(lat, frame, DivisorClass{2, 4}); }) == ErrorCode::NotNormalized);
    CHECK(code_of([&] { coords_from_divisor(lat, frame, DivisorClass{1, 1}); }) == ErrorCode::CoordinateOutOfRange);
}

TEST_CASE("CurveFrame requires the (C, D) normalization")
{
    const auto lat = cd_lattice();
    CHECK(code_of([&] { CurveFrame::make(lat, kC, DivisorClass{1, 1}); }) == ErrorCode::HypothesisViolated);
}

TEST_CASE("coordinates reconstruct omega and B on a lattice with an orthogonal part")
{
    Gen gen;
    const auto lat = cd_psi_lattice();
    const DivisorClass c{1, 0, 0}, d{0, 1, 0};
    const auto frame = CurveFrame::make(lat, c, d);
    for (int i = 0; i < 100; ++i) {
        const DivisorClass omega{1, 2 + gen.in_open_interval(-1, 5), gen.rational()};
        CHECK(reconstruct_omega(frame, coords_from_divisor(lat, frame, omega)) == omega);
        DivisorClass b = gen.divisor(3);
        if (b[0] == 0)
            b += c;
        CHECK(reconstruct_b(frame, b_coords_from_divisor(lat, frame, b)) == b);
    }
    CHECK(b_coords_from_divisor(lat, frame, DivisorClass{0, 0, 0}).r_b == 0);
    CHECK(code_of([&] { b_coords_from_divisor(lat, frame, DivisorClass{0, 1, 0}); }) == ErrorCode::NotNormalized);
}

TEST_CASE("solve_case_one examples")
{
    const auto one = solve_case_one(1);
    CHECK(one.d_omega == q(-1, 2));
    CHECK(one.g == Gl2Factor::diagonal(1, q(1, 2)));
    const auto zero = solve_case_one(0);
    CHECK(zero.d_omega == 0);
    CHECK(zero.g == Gl2Factor::identity());
    const auto third = solve_case_one(q(1, 3));
    CHECK(third.d_omega == q(-1, 4));
    CHECK(third.g == Gl2Factor::diagonal(1, q(3, 4)));
    CHECK(code_of([] { solve_case_one(-1); }) == ErrorCode::Singular);
    CHECK(code_of([] { solve_case_one(-2); }) == ErrorCode::CoordinateOutOfRange);
}

TEST_CASE("solve_case_two examples")
{
    CHECK(solve_case_two(kC, -1).b == kZero);
    CHECK(solve_case_two(kC, -1).g == Gl2Factor::identity());
    CHECK(solve_case_two(kC, 0).b == -kC);
    CHECK(solve_case_two(kC, -3).b == Rational(2) * kC);
}

TEST_CASE("solve_case_three examples")
{
    CHECK(solve_case_three(q(1, 4)).u == q(-1, 4));
    CHECK(solve_case_three(0).u == 0);
    CHECK(solve_case_three(q(-1, 2)).u == q(1, 2));
    CHECK(solve_case_three(q(1, 4)).g == Gl2Factor::identity());
}

TEST_CASE("verify_transport examples")
{
    const auto lat = cd_lattice();
    const Rational v = q(3, 2);
    const auto s1 = solve_case_one(1);
    CHECK(verify_transport(lat, kC, ChargeParams(v, omega_for(s1.d_omega)), ChargeParams(v, omega_for(1)), s1.g, -1));
    const auto s3 = solve_case_three(q(1, 4));
    CHECK(verify_transport(lat, kC, ChargeParams(v, omega_for(0), s3.u * kC), ChargeParams(v, omega_for(0), q(1, 4) * kC),
                           s3.g, -1));
    CHECK_FALSE(verify_transport(lat, kC, ChargeParams(v, omega_for(s1.d_omega)), ChargeParams(v, omega_for(1)),
                                 Gl2Factor::identity(), -1));
    // The identity needs V = V_bar.
    CHECK_FALSE(verify_transport(lat, kC, ChargeParams(v + 1, omega_for(s1.d_omega)), ChargeParams(v, omega_for(1)),
                                 s1.g, -1));
    CHECK_THROWS_AS(verify_transport(lat, DivisorClass{1, 0, 0}, ChargeParams(v, omega_for(0)),
                                     ChargeParams(v, omega_for(0)), s1.g, -1),
                    Error);
}

TEST_CASE("Gl2Factor validation and phase lift")
{
    CHECK(code_of([] { Gl2Factor(1, 0, 0, 0); }) == ErrorCode::OutOfDomain);
    CHECK(code_of([] { Gl2Factor(0, 1, 1, 0); }) == ErrorCode::OutOfDomain);
    const auto g = Gl2Factor::diagonal(1, q(1, 2));
    CHECK(g.preserves_phase_interval());
    CHECK(g.lifted_phase(0.5) == doctest::Approx(0.5));
    CHECK(g.lifted_phase(1.0) == 1.0);
    double prev = 0;
    for (int k = 1; k <= 100; ++k) {
        const double f = g.lifted_phase(k / 100.0);
        CHECK(f > prev);
        CHECK(f <= 1.0);
        prev = f;
    }
    CHECK(to_string(g) == "[[1,0],[0,1/2]]");
    CHECK(ComplexExact{3, 4} == Gl2Factor::identity().apply({3, 4}));
}

TEST_CASE("non_nef_image examples")
{
    CHECK(non_nef_image(1) == q(-1, 2));
    CHECK(non_nef_image(3) == q(-3, 4));
    const Rational tiny = non_nef_image(q(1, 1000000));
    CHECK(tiny < 0);
    CHECK(tiny > q(-1, 999999));
    CHECK(code_of([] { non_nef_image(0); }) == ErrorCode::OutOfDomain);
    CHECK(code_of([] { non_nef_image(-1); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("property: the three transport cases verify exactly (300 samples each)")
{
    Gen gen;
    const auto lat = cd_psi_lattice();
    const DivisorClass c{1, 0, 0}, d{0, 1, 0};
    auto omega3 = [&](const Rational& dw) { return c + (2 + dw) * d; };
    for (int i = 0; i < 300; ++i) {
        const Rational v = gen.positive_rational();
        const Rational dbar = gen.in_open_interval(-1, 11);
        const auto s1 = solve_case_one(dbar);
        CHECK(verify_transport(lat, c, ChargeParams(v, omega3(s1.d_omega)), ChargeParams(v, omega3(dbar)), s1.g, -1));
        // Independent check on a random vector: Z(ST E) from the hand-written twist oracle.
        const MukaiVector m = gen.mukai(3);
        const MukaiVector tm = oracle_twist(lat, m, c, -1);
        const DivisorClass zero3{0, 0, 0};
        const ComplexExact lhs = oracle_charge(lat, v, omega3(s1.d_omega), zero3, chern_from_mukai(tm));
        const ComplexExact rhs = oracle_charge(lat, v, omega3(dbar), zero3, chern_from_mukai(m));
        CHECK(lhs == ComplexExact{rhs.re, rhs.im / (dbar + 1)});
        // Both forms of the imaginary scale agree.
        CHECK(general_scale(s1.d_omega, dbar, 2) == 1 / (dbar + 1));
        // psi_bar = 0 forces psi = 0.
        const auto frame = CurveFrame::make(lat, c, d);
        CHECK(coords_from_divisor(lat, frame, omega3(s1.d_omega)).psi.is_zero());

        const long t = gen.integer(-5, 5);
        const auto s2 = solve_case_two(c, t);
        CHECK(verify_transport(lat, c, ChargeParams(v, omega3(0), s2.b), ChargeParams(v, omega3(0)), s2.g, t));

        const Rational ubar = gen.in_open_interval(-3, 3) ;
        const auto s3 = solve_case_three(ubar);
        CHECK(verify_transport(lat, c, ChargeParams(v, omega3(0), s3.u * c), ChargeParams(v, omega3(0), ubar * c),
                               s3.g, -1));
    }
}

TEST_CASE("property: coordinate expansions equal the direct charges")
{
    Gen gen;
    const auto lat = cd_psi_lattice();
    const DivisorClass c{1, 0, 0}, d{0, 1, 0};
    const auto frame = CurveFrame::make(lat, c, d);
    for (int i = 0; i < 200; ++i) {
        const DivisorClass omega{1, 2 + gen.in_open_interval(-1, 5), gen.rational()};
        DivisorClass b = gen.divisor(3);
        if (b[0] == 0)
            b += c;
        if (i % 5 == 0)
            b = DivisorClass{0, 0, 0};
        const TransportCoords coords{2, coords_from_divisor(lat, frame, omega), b_coords_from_divisor(lat, frame, b)};
        const Rational v = gen.positive_rational();
        const long t = gen.integer(-4, 4);
        const MukaiVector m = gen.mukai(3);
        CHECK(expanded_charge(lat, frame, coords, v, m) == oracle_charge(lat, v, omega, b, chern_from_mukai(m)));
        CHECK(expanded_twisted_charge(lat, frame, coords, v, m, t) ==
              oracle_charge(lat, v, omega, b, chern_from_mukai(oracle_twist(lat, m, c, t))));
    }
}

TEST_CASE("property: non-nef image composes back and makes nu_b.C negative")
{
    Gen gen;
    const SurfaceModel m = build_example_minimal();
    const DivisorClass d = *m.d_class;
    for (int i = 0; i < 100; ++i) {
        const Rational a = gen.positive_rational(50, 20);
        const Rational b = non_nef_image(a);
        CHECK(b == -a / (a + 1));
        CHECK(b > -1);
        CHECK(b < 0);
        CHECK(m.lattice.pair(m.nu + b * d, m.curve_c) == b);
        CHECK(-b / (b + 1) == a);
    }
}
