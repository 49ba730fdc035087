#pragma once

#include "k3stab/mukai.hpp"

#include <map>

namespace k3stab {

/// Spherical twist along a spherical class. On Mukai vectors the twist acts as
/// the reflection v -> v + <v_S, v> v_S, which is an involution and an isometry.
class TwistParams {
public:
    /// Throws NotSpherical unless <v_S, v_S> = -2.
    TwistParams(const IntersectionLattice& lattice, MukaiVector spherical_class, long t = 0);

    /// The twist by O_C(t), v_S = (0, C, t+1).
    static TwistParams for_curve(const IntersectionLattice& lattice, const DivisorClass& curve_c, long t);

    long t() const { return t_; }
    const MukaiVector& spherical_class() const { return v_s_; }

private:
    long t_;
    MukaiVector v_s_;
};

MukaiVector twist_mukai(const IntersectionLattice& lattice, const MukaiVector& v, const TwistParams& tw);

/// The four numbers (n, c, d, s) = (rank, c1.C, c1.D, Mukai degree) used by the
/// transport coordinates.
struct CurveInvariants {
    Rational n;
    Rational c;
    Rational d;
    Rational s;
    friend bool operator==(const CurveInvariants&, const CurveInvariants&) = default;
};

CurveInvariants curve_invariants(const IntersectionLattice& lattice, const MukaiVector& v, const DivisorClass& curve_c,
                                 const DivisorClass& d_class);

/// Closed form of the O_C(t) twist on (n, c, d, s), assuming C^2 = -2 and D.C = 1:
///   n' = n, c' = -c + 2n(t+1), d' = d + c - n(t+1), s' = s + (c - n(t+1))(t+1).
CurveInvariants twist_invariants(const CurveInvariants& in, long t);

enum class TwistDirection { Forward, Inverse };

struct SheafLabel {
    enum class Kind { Point, CurveBundle };
    Kind kind;
    long twist = 0;  // m in O_C(m); unused for points

    static SheafLabel point() { return {Kind::Point, 0}; }
    static SheafLabel curve(long m) { return {Kind::CurveBundle, m}; }
    friend bool operator==(const SheafLabel&, const SheafLabel&) = default;
};

std::string to_string(const SheafLabel& label);

/// Cohomology sheaves of the (inverse) O_C(t) twist of a skyscraper O_p,
/// keyed by degree. Degrees absent from the map are zero.
using CohomologyTable = std::map<int, SheafLabel>;

CohomologyTable skyscraper_twist(bool on_curve, long t, TwistDirection direction);

/// Sum over degrees of (-1)^k v(H^k): the Mukai vector of the complex.
MukaiVector alternating_mukai_sum(const CohomologyTable& table, const DivisorClass& curve_c);

}  // namespace k3stab
