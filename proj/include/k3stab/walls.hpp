#pragma once

#include "k3stab/charge.hpp"
#include "k3stab/surface.hpp"

#include <optional>

namespace k3stab {

// ---------------------------------------------------------------------------
// Walls along the ray V * nu (B = 0).
// ---------------------------------------------------------------------------

enum class WallKind { Proper, DegenerateAllV };

struct WallSolution {
    Rational v_value;  // meaningful for Proper walls only
    MukaiVector candidate;
    WallKind kind;
};

/// Solves Re Z_V(A) Im Z(L) = Re Z_V(L) Im Z(A) for V, i.e.
///   V (r_A nu.c1(L) - r_L nu.c1(A)) = ch2(A) nu.c1(L) - ch2(L) nu.c1(A)
/// with ch2 = s - r recovered from the Mukai vectors. Returns nullopt when the
/// equation has no positive root, DegenerateAllV when it holds identically.
std::optional<WallSolution> wall_value(const IntersectionLattice& lattice, const MukaiVector& v_a,
                                       const MukaiVector& v_l, const DivisorClass& nu);

// ---------------------------------------------------------------------------
// Rank bound for destabilizing subobjects of a line bundle L with c1(L) = alpha:
//
//   ch0(A) <= alpha.nu / (nu^2 (sqrt(X^2 + 2V/nu^2) + X)),  X = (alpha^2/2 - V)/alpha.nu
//
// Rationalizing gives (alpha.nu / 2V)(sqrt(R) - X) with R = X^2 + 2V/nu^2, which
// is stored as an exact quadratic surd.
// ---------------------------------------------------------------------------

struct RankBoundResult {
    QuadraticSurd bound;
    DivisorClass alpha;
    DivisorClass nu;
    Rational v;
};

/// Throws OutOfDomain unless alpha.nu > 0, nu^2 > 0 and V > 0.
RankBoundResult rank_bound(const IntersectionLattice& lattice, const DivisorClass& alpha, const DivisorClass& nu,
                           const Rational& v);

/// lim_{V -> 0+} of the bound: (alpha.nu)^2 / (alpha^2 nu^2) if alpha^2 > 0, +inf otherwise.
ExtendedRational rank_bound_supremum(const IntersectionLattice& lattice, const DivisorClass& alpha,
                                     const DivisorClass& nu);

struct RankThreshold {
    enum class Kind { Value, None, Unbounded };
    Kind kind;
    Rational value;               // the threshold V*, for Kind::Value
    ExtendedRational supremum;    // certificate: sup of the bound over V > 0
};

/// sup{V > 0 : bound(V) >= r}. bound(V) = r has at most the one root
///   V* = ((alpha.nu)^2 - r alpha^2 nu^2) / (2 r (r - 1) nu^2)
/// (valid only where sqrt(R) = alpha.nu/(r nu^2) - X is nonnegative), so the sign
/// of bound - r is decided by V* alone or by one exact sample when there is no root.
RankThreshold rank_threshold(const IntersectionLattice& lattice, const DivisorClass& alpha, const DivisorClass& nu,
                             long r);

// ---------------------------------------------------------------------------
// Bogomolov–Gieseker and Hodge index screens.
// ---------------------------------------------------------------------------

/// <v,v> + 2; nonnegative means the vector passes the K3 BG test.
Rational bg_discriminant(const IntersectionLattice& lattice, const MukaiVector& v);

/// Largest Mukai degree s allowed by BG for rank r and c1^2: (c1^2 + 2)/(2r).
Rational bg_s_upper_bound(const Rational& c1_square, const Rational& r);

struct HitChain {
    Rational ch2;
    Rational bg_bound;   // ch1^2 / (2 ch0)
    Rational hit_bound;  // (nu.ch1)^2 / (2 ch0 nu^2)
    bool holds() const { return ch2 <= bg_bound && bg_bound <= hit_bound; }
};

/// The chain ch2 <= ch1^2/(2ch0) <= (nu.ch1)^2/(2 ch0 nu^2). Throws OutOfDomain
/// unless ch0 > 0 and nu^2 > 0.
HitChain hit_bound_chain(const IntersectionLattice& lattice, const ChernCharacter& ch, const DivisorClass& nu);
bool hit_bound_check(const IntersectionLattice& lattice, const ChernCharacter& ch, const DivisorClass& nu);

// ---------------------------------------------------------------------------
// Semistability screen for line bundles with alpha.C = 0.
// Irreducible curves are modeled by the effective-cone generators.
// ---------------------------------------------------------------------------

struct ScreenedCurve {
    DivisorClass curve;
    std::vector<unsigned> coefficients;  // in the generator basis
};

/// Effective C' of height <= height_bound whose C-multiplicity is at most 1,
/// with C'.C <= 0 and 0 <= C''.C <= 2 for every generator C'' != C it uses.
/// Throws HypothesisViolated unless alpha.C = 0.
std::vector<ScreenedCurve> rank_one_screen(const SurfaceModel& surface, const DivisorClass& alpha,
                                           unsigned height_bound);

/// rho(I_n (x) L(-C)) - rho(L), evaluated from the central charges. It equals
/// -(1 + n)/(nu.alpha) for every V.
/// Throws HypothesisViolated unless alpha.C = 0, OutOfDomain unless alpha.nu > 0 and n >= 0.
Rational slope_compare_twist(const SurfaceModel& surface, const DivisorClass& alpha, long n_points);

enum class ScreenVerdict { SemistableAllV, Inconclusive };

enum class HigherRankStatus {
    ClosedByRankBound,         // rank bound never reaches 2
    CitedDeformationArgument,  // relies on the B-deformation step, not recomputed here
};

struct GeneratorIntersection {
    DivisorClass generator;
    Rational dot_c;
};

struct ScreenCertificate {
    std::vector<GeneratorIntersection> generator_intersections;  // generators other than C
    std::vector<ScreenedCurve> survivors;
    Rational slope_gap;
    RankThreshold higher_rank;
    HigherRankStatus higher_rank_status;
    std::string modeling_note;
};

struct ScreenReport {
    ScreenVerdict verdict;
    std::optional<char> failing_clause;  // 'a' or 'b' when Inconclusive
    std::string reason;
    ScreenCertificate certificate;
};

/// Throws HypothesisViolated unless alpha.C = 0, OutOfDomain unless alpha.nu > 0.
ScreenReport semistable_screen(const SurfaceModel& surface, const DivisorClass& alpha, unsigned height_bound);

std::string to_string(ScreenVerdict v);
std::string to_string(HigherRankStatus s);

}  // namespace k3stab
