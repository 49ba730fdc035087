#include "k3stab/charge.hpp"
#include "k3stab/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace k3stab;
using k3stab::testing::cd_lattice;
using k3stab::testing::cd_psi_lattice;
using k3stab::testing::Gen;
using k3stab::testing::oracle_charge;
using k3stab::testing::q;

namespace {

const DivisorClass kC{1, 0};
const DivisorClass kZero{0, 0};
const DivisorClass kNu{1, 2};

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

TEST_CASE("ChargeParams enforces V > 0 and matching dimensions")
{
    CHECK(code_of([] { ChargeParams(0, kNu); }) == ErrorCode::OutOfDomain);
    CHECK(code_of([] { ChargeParams(-1, kNu); }) == ErrorCode::OutOfDomain);
    CHECK(code_of([] { ChargeParams(1, kNu, DivisorClass{1, 0, 0}); }) == ErrorCode::DimensionError);
}

TEST_CASE("central_charge examples")
{
    const auto lat = cd_lattice();
    const ChargeParams p(q(7, 3), kNu);
    CHECK(central_charge(lat, p, ChernCharacter{0, kC, 0}) == ComplexExact{0, 0});

    const DivisorClass omega{1, 3};
    const Rational eps = q(1, 7);
    const ChargeParams p_eps(q(7, 3), kNu + eps * omega);
    const Rational omega_c = lat.pair(omega, kC);
    CHECK(central_charge(lat, p_eps, ChernCharacter{0, kC, 0}) == ComplexExact{0, eps * omega_c});

    CHECK(central_charge(lat, ChargeParams(5, kNu, DivisorClass{q(1, 2), 3}), ChernCharacter{0, kZero, 1}) ==
          ComplexExact{-1, 0});
    CHECK_THROWS_AS(central_charge(lat, p, ChernCharacter{0, DivisorClass{1, 0, 0}, 0}), Error);
}

TEST_CASE("phase examples")
{
    const auto lat = cd_lattice();
    const ChargeParams p(1, kNu);
    const Phase neg = phase_of({-1, 0});
    CHECK(neg.value == 1.0);
    CHECK(neg.exactness == PhaseExactness::Exact);

    const Phase up = phase_of({0, 2});
    CHECK(up.value == 0.5);
    CHECK(up.exactness == PhaseExactness::Exact);

    const Phase kernel = phase(lat, p, ChernCharacter{0, kC, 0}, Phase::exact(0.5));
    CHECK(kernel.value == 0.5);

    CHECK(phase_of({-1, 1}).value == 0.75);
    CHECK(phase_of({1, 1}).value == 0.25);
    CHECK(phase_of({1, 2}).exactness == PhaseExactness::TranscendentalApprox);
}

TEST_CASE("phase error paths")
{
    const auto lat = cd_lattice();
    const ChargeParams p(1, kNu);
    CHECK(code_of([&] { phase(lat, p, ChernCharacter{0, kC, 0}); }) == ErrorCode::KernelPhaseUndefined);
    CHECK(code_of([] { phase_of({1, 0}); }) == ErrorCode::OutsideRegion);
    CHECK(code_of([] { phase_of({-1, -1}); }) == ErrorCode::OutsideRegion);
}

TEST_CASE("sigma_b kernel rule assigns 1/2 to positive multiples of (0, C, 0)")
{
    const auto lat = cd_lattice();
    const ChargeParams p(1, kNu);
    for (long n = 1; n <= 4; ++n) {
        const ChernCharacter ch{0, Rational(n) * kC, 0};
        const auto rule = sigma_b_kernel_phase(ch, kC);
        REQUIRE(rule.has_value());
        CHECK(phase(lat, p, ch, rule).value == 0.5);
    }
    CHECK_FALSE(sigma_b_kernel_phase(ChernCharacter{0, -kC, 0}, kC).has_value());
    CHECK_FALSE(sigma_b_kernel_phase(ChernCharacter{0, kZero, 1}, kC).has_value());
}

TEST_CASE("slope examples")
{
    CHECK(slope_of({-3, 6}) == ExtendedRational(q(1, 2)));
    CHECK(slope_of({0, 5}) == ExtendedRational(Rational(0)));
    CHECK(slope_of({-1, 0}) == ExtendedRational::plus_infinity());
    CHECK(code_of([] { slope_of({0, 0}); }) == ErrorCode::KernelSlopeUndefined);
    CHECK(code_of([] { slope_of({2, 0}); }) == ErrorCode::OutsideRegion);
}

TEST_CASE("kernel_contains examples")
{
    const auto lat = cd_lattice();
    const ChargeParams p(q(5, 2), kNu);
    CHECK(kernel_contains(lat, p, ChernCharacter{0, kC, 0}));
    for (long n = 1; n <= 5; ++n)
        CHECK(kernel_contains(lat, p, ChernCharacter{0, Rational(n) * kC, 0}));
    CHECK_FALSE(kernel_contains(lat, p, ChernCharacter{0, kZero, 1}));
}

TEST_CASE("limit_phase examples")
{
    const Phase half = limit_phase(Rational(0), 2);
    CHECK(half.value == 0.5);
    CHECK(half.exactness == PhaseExactness::Exact);
    // k = 2/(omega.C) = 1 with omega.C = 2, so k p = 1 at p = 1.
    const Phase quarter = limit_phase(Rational(1), 2);
    CHECK(quarter.value == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(limit_phase(q(1000000), 2).value < 1e-5);
    CHECK(limit_phase(q(1000000), 2).value > 0);
    CHECK(limit_phase(q(-1000000), 2).value > 1 - 1e-5);
    CHECK(limit_phase(ExtendedRational::minus_infinity(), 2).value == 1.0);
    CHECK(code_of([] { limit_phase(ExtendedRational::plus_infinity(), 2); }) == ErrorCode::OutsideRegion);
    CHECK(code_of([] { limit_phase(Rational(1), 0); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("property: linearity, kernel detection and slope/phase agreement on random vectors")
{
    Gen gen;
    const auto lat = cd_psi_lattice();
    int checked_slopes = 0;
    for (int i = 0; i < 500; ++i) {
        const Rational v = gen.positive_rational();
        const DivisorClass nu = gen.divisor(3), b = gen.divisor(3);
        const ChargeParams p(v, nu, b);
        const ChernCharacter x = gen.chern(3), y = gen.chern(3);
        const ChernCharacter sum{x.ch0 + y.ch0, x.ch1 + y.ch1, x.ch2 + y.ch2};
        const ComplexExact zx = central_charge(lat, p, x);
        CHECK(zx == oracle_charge(lat, v, nu, b, x));
        CHECK(central_charge(lat, p, sum) == zx + central_charge(lat, p, y));
        CHECK(kernel_contains(lat, p, x) == zx.is_zero());

        ComplexExact z = zx;
        if (z.im < 0 || (z.im == 0 && z.re > 0))
            z = {-z.re, -z.im};  // shift by [1] into the upper half-plane region
        if (z.is_zero())
            continue;
        const Phase ph = phase_of(z);
        CHECK(ph.value > 0);
        CHECK(ph.value <= 1);
        if (z.im != 0) {
            const ExtendedRational rho = slope_of(z);
            const double cot = -std::cos(std::numbers::pi * ph.value) / std::sin(std::numbers::pi * ph.value);
            CHECK(to_double(rho.value()) == doctest::Approx(cot).epsilon(1e-12));
            ++checked_slopes;
        }
    }
    CHECK(checked_slopes > 400);
}

TEST_CASE("property: kernel vector under nu and its perturbation")
{
    Gen gen;
    const auto lat = cd_psi_lattice();
    const DivisorClass c{1, 0, 0};
    const DivisorClass nu{1, 2, 0};
    for (int i = 0; i < 50; ++i) {
        const ChargeParams p(gen.positive_rational(), nu);
        CHECK(central_charge(lat, p, ChernCharacter{0, c, 0}).is_zero());
        const Rational eps = gen.in_open_interval(0, 1);
        const DivisorClass omega = gen.divisor(3);
        const ChargeParams pe(p.v(), nu + eps * omega);
        CHECK(central_charge(lat, pe, ChernCharacter{0, c, 0}) == ComplexExact{0, eps * lat.pair(omega, c)});
    }
}
