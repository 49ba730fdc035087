#include "k3stab/error.hpp"
#include "k3stab/twist.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace k3stab;
using k3stab::testing::cd_lattice;
using k3stab::testing::cd_psi_lattice;
using k3stab::testing::Gen;
using k3stab::testing::oracle_pair;
using k3stab::testing::oracle_twist;

namespace {
const DivisorClass kC{1, 0};
const DivisorClass kD{0, 1};
const DivisorClass kZero{0, 0};
}  // namespace

TEST_CASE("twist_mukai examples")
{
    const auto lat = cd_lattice();
    for (long t = -4; t <= 4; ++t)
        CHECK(twist_mukai(lat, mukai_point(2), TwistParams::for_curve(lat, kC, t)) == mukai_point(2));
    CHECK(twist_mukai(lat, MukaiVector{0, kC, 0}, TwistParams::for_curve(lat, kC, -1)) == MukaiVector{0, -kC, 0});
    CHECK(twist_mukai(lat, mukai_structure_sheaf(2), TwistParams::for_curve(lat, kC, -1)) == mukai_structure_sheaf(2));
}

TEST_CASE("twist rejects a non-spherical class")
{
    const auto lat = cd_lattice();
    try {
        TwistParams(lat, mukai_point(2));
        FAIL("expected NotSpherical");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSpherical);
    }
    CHECK_NOTHROW(TwistParams(lat, mukai_structure_sheaf(2)));
}

TEST_CASE("twist_invariants examples")
{
    CHECK(twist_invariants({1, 0, 0, 1}, -1) == CurveInvariants{1, 0, 0, 1});
    CHECK(twist_invariants({0, -2, 1, 0}, -1) == CurveInvariants{0, 2, -1, 0});
    for (long t = -3; t <= 3; ++t) {
        const CurveInvariants fixed{1, t + 1, 5, 7};
        CHECK(twist_invariants(fixed, t) == fixed);
    }
}

TEST_CASE("curve_invariants reads (n, c1.C, c1.D, s)")
{
    const auto lat = cd_lattice();
    CHECK(curve_invariants(lat, MukaiVector{0, kC, 0}, kC, kD) == CurveInvariants{0, -2, 1, 0});
}

TEST_CASE("skyscraper_twist examples")
{
    for (long t = -3; t <= 3; ++t) {
        for (auto dir : {TwistDirection::Forward, TwistDirection::Inverse})
            CHECK(skyscraper_twist(false, t, dir) == CohomologyTable{{0, SheafLabel::point()}});
        CHECK(skyscraper_twist(true, t, TwistDirection::Forward) ==
              CohomologyTable{{-1, SheafLabel::curve(t - 1)}, {0, SheafLabel::curve(t)}});
        CHECK(skyscraper_twist(true, t, TwistDirection::Inverse) ==
              CohomologyTable{{-1, SheafLabel::curve(t)}, {0, SheafLabel::curve(t + 1)}});
    }
    CHECK(to_string(SheafLabel::point()) == "O_p");
    CHECK(to_string(SheafLabel::curve(-1)) == "O_C(-1)");
}

TEST_CASE("property: involution, isometry, rank preservation, invariant agreement (500 vectors)")
{
    Gen gen;
    const auto lat = cd_psi_lattice();
    const DivisorClass c{1, 0, 0}, d{0, 1, 0};
    for (int i = 0; i < 500; ++i) {
        const long t = gen.integer(-4, 4);
        const auto tw = TwistParams::for_curve(lat, c, t);
        const MukaiVector v = gen.mukai(3), w = gen.mukai(3);
        const MukaiVector tv = twist_mukai(lat, v, tw);
        CHECK(tv == oracle_twist(lat, v, c, t));
        CHECK(twist_mukai(lat, tv, tw) == v);
        CHECK(mukai_pairing(lat, tv, twist_mukai(lat, w, tw)) == mukai_pairing(lat, v, w));
        CHECK(tv.r == v.r);

        const CurveInvariants in{v.r, oracle_pair(lat, v.c1, c), oracle_pair(lat, v.c1, d), v.s};
        const CurveInvariants out{tv.r, oracle_pair(lat, tv.c1, c), oracle_pair(lat, tv.c1, d), tv.s};
        CHECK(twist_invariants(in, t) == out);
        CHECK(curve_invariants(lat, tv, c, d) == out);
    }
}

TEST_CASE("property: skyscraper alternating sum matches the twisted point class")
{
    const auto lat = cd_lattice();
    for (long t = -3; t <= 3; ++t) {
        const auto tw = TwistParams::for_curve(lat, kC, t);
        const MukaiVector expected = twist_mukai(lat, mukai_point(2), tw);
        CHECK(expected == MukaiVector{0, kZero, 1});
        CHECK(alternating_mukai_sum(skyscraper_twist(true, t, TwistDirection::Forward), kC) == expected);
        CHECK(alternating_mukai_sum(skyscraper_twist(true, t, TwistDirection::Inverse), kC) == expected);
        CHECK(alternating_mukai_sum(skyscraper_twist(false, t, TwistDirection::Forward), kC) == mukai_point(2));
    }
}
