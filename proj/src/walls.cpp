#include "k3stab/walls.hpp"

#include "k3stab/error.hpp"

#include <algorithm>

namespace k3stab {

std::optional<WallSolution> wall_value(const IntersectionLattice& lattice, const MukaiVector& v_a,
                                       const MukaiVector& v_l, const DivisorClass& nu)
{
    const ChernCharacter a = chern_from_mukai(v_a);
    const ChernCharacter l = chern_from_mukai(v_l);
    const Rational im_a = lattice.pair(nu, a.ch1);
    const Rational im_l = lattice.pair(nu, l.ch1);

    const Rational coeff = a.ch0 * im_l - l.ch0 * im_a;
    const Rational constant = a.ch2 * im_l - l.ch2 * im_a;
    if (coeff == 0) {
        if (constant == 0)
            return WallSolution{0, v_a, WallKind::DegenerateAllV};
        return std::nullopt;
    }
    Rational root = constant / coeff;
    if (root <= 0)
        return std::nullopt;
    return WallSolution{std::move(root), v_a, WallKind::Proper};
}

namespace {

struct BoundInputs {
    Rational a;   // alpha.nu
    Rational nn;  // nu^2
    Rational h;   // alpha^2 / 2
};

BoundInputs bound_inputs(const IntersectionLattice& lattice, const DivisorClass& alpha, const DivisorClass& nu)
{
    BoundInputs in{lattice.pair(alpha, nu), lattice.square(nu), lattice.square(alpha) / 2};
    if (in.a <= 0)
        throw Error(ErrorCode::OutOfDomain, "rank bound needs alpha.nu > 0", {{"alpha.nu", to_string(in.a)}});
    if (in.nn <= 0)
        throw Error(ErrorCode::OutOfDomain, "rank bound needs nu^2 > 0", {{"nu^2", to_string(in.nn)}});
    return in;
}

QuadraticSurd bound_at(const BoundInputs& in, const Rational& v)
{
    const Rational x = (in.h - v) / in.a;
    const Rational radicand = x * x + 2 * v / in.nn;
    const Rational scale = in.a / (2 * v);
    return QuadraticSurd(-scale * x, scale, radicand);
}

}  // namespace

RankBoundResult rank_bound(const IntersectionLattice& lattice, const DivisorClass& alpha, const DivisorClass& nu,
                           const Rational& v)
{
    if (v <= 0)
        throw Error(ErrorCode::OutOfDomain, "rank bound needs V > 0", {{"V", to_string(v)}});
    const BoundInputs in = bound_inputs(lattice, alpha, nu);
    return {bound_at(in, v), alpha, nu, v};
}

ExtendedRational rank_bound_supremum(const IntersectionLattice& lattice, const DivisorClass& alpha,
                                     const DivisorClass& nu)
{
    const BoundInputs in = bound_inputs(lattice, alpha, nu);
    if (in.h <= 0)
        return ExtendedRational::plus_infinity();
    return Rational(in.a * in.a / (2 * in.h * in.nn));
}

RankThreshold rank_threshold(const IntersectionLattice& lattice, const DivisorClass& alpha, const DivisorClass& nu,
                             long r)
{
    if (r < 1)
        throw Error(ErrorCode::OutOfDomain, "rank threshold needs r >= 1", {{"r", std::to_string(r)}});
    const BoundInputs in = bound_inputs(lattice, alpha, nu);
    const ExtendedRational sup = rank_bound_supremum(lattice, alpha, nu);
    const Rational rr(r);

    if (r >= 2) {
        const Rational alpha_sq = 2 * in.h;
        const Rational v_star = (in.a * in.a - rr * alpha_sq * in.nn) / (2 * rr * (rr - 1) * in.nn);
        if (v_star > 0) {
            const Rational m = in.a / (rr * in.nn);
            const Rational x = (in.h - v_star) / in.a;
            if (m - x >= 0)
                return {RankThreshold::Kind::Value, v_star, sup};
        }
    } else {
        // r = 1: bound = 1 has either no root or holds identically.
        if (in.a * in.a == 2 * in.h * in.nn)
            return {RankThreshold::Kind::Unbounded, 0, sup};
    }
    // No crossing, so bound - r has one sign on (0, inf); sample it at V = 1.
    if (bound_at(in, 1).compare(rr) >= 0)
        return {RankThreshold::Kind::Unbounded, 0, sup};
    return {RankThreshold::Kind::None, 0, sup};
}

Rational bg_discriminant(const IntersectionLattice& lattice, const MukaiVector& v)
{
    return mukai_pairing(lattice, v, v) + 2;
}

Rational bg_s_upper_bound(const Rational& c1_square, const Rational& r)
{
    if (r <= 0)
        throw Error(ErrorCode::OutOfDomain, "BG bound on s needs positive rank", {{"r", to_string(r)}});
    return (c1_square + 2) / (2 * r);
}

HitChain hit_bound_chain(const IntersectionLattice& lattice, const ChernCharacter& ch, const DivisorClass& nu)
{
    if (ch.ch0 <= 0)
        throw Error(ErrorCode::OutOfDomain, "BG/HIT chain needs ch0 > 0", {{"ch0", to_string(ch.ch0)}});
    const Rational nn = lattice.square(nu);
    if (nn <= 0)
        throw Error(ErrorCode::OutOfDomain, "HIT needs nu^2 > 0", {{"nu^2", to_string(nn)}});
    const Rational nd = lattice.pair(nu, ch.ch1);
    return {ch.ch2, lattice.square(ch.ch1) / (2 * ch.ch0), nd * nd / (2 * ch.ch0 * nn)};
}

bool hit_bound_check(const IntersectionLattice& lattice, const ChernCharacter& ch, const DivisorClass& nu)
{
    return hit_bound_chain(lattice, ch, nu).holds();
}

namespace {

void require_c_orthogonal(const SurfaceModel& surface, const DivisorClass& alpha)
{
    const Rational ac = surface.lattice.pair(alpha, surface.curve_c);
    if (ac != 0)
        throw Error(ErrorCode::HypothesisViolated, "line bundle must satisfy alpha.C = 0",
                    {{"alpha", to_string(alpha)}, {"alpha.C", to_string(ac)}});
}

// Multiple of C that the generator equals, if any.
std::optional<Rational> c_multiple(const DivisorClass& g, const DivisorClass& c)
{
    std::optional<Rational> lambda;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) {
            if (g[i] != 0)
                return std::nullopt;
            continue;
        }
        const Rational ratio = g[i] / c[i];
        if (lambda && *lambda != ratio)
            return std::nullopt;
        lambda = ratio;
    }
    return lambda;
}

}  // namespace

std::vector<ScreenedCurve> rank_one_screen(const SurfaceModel& surface, const DivisorClass& alpha,
                                           unsigned height_bound)
{
    const IntersectionLattice& lat = surface.lattice;
    require_c_orthogonal(surface, alpha);

    const auto& gens = surface.effective_generators;
    std::vector<std::optional<Rational>> as_c;
    std::vector<Rational> dot_c;
    for (const auto& g : gens) {
        as_c.push_back(c_multiple(g, surface.curve_c));
        dot_c.push_back(lat.pair(g, surface.curve_c));
    }

    std::vector<ScreenedCurve> out;
    for (auto& coeffs : enumerate_cone_coefficients(gens.size(), height_bound)) {
        Rational c_mult = 0;
        Rational curve_dot_c = 0;
        bool components_ok = true;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (coeffs[i] == 0)
                continue;
            curve_dot_c += coeffs[i] * dot_c[i];
            if (as_c[i]) {
                c_mult += coeffs[i] * *as_c[i];
            } else if (dot_c[i] < 0 || dot_c[i] > 2) {
                components_ok = false;
            }
        }
        if (!components_ok || c_mult > 1 || curve_dot_c > 0)
            continue;
        DivisorClass curve = DivisorClass::zero(lat.rank());
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (coeffs[i])
                curve += Rational(coeffs[i]) * gens[i];
        out.push_back({std::move(curve), std::move(coeffs)});
    }
    return out;
}

Rational slope_compare_twist(const SurfaceModel& surface, const DivisorClass& alpha, long n_points)
{
    const IntersectionLattice& lat = surface.lattice;
    require_c_orthogonal(surface, alpha);
    const Rational an = lat.pair(alpha, surface.nu);
    if (an <= 0)
        throw Error(ErrorCode::OutOfDomain, "slope comparison needs alpha.nu > 0", {{"alpha.nu", to_string(an)}});
    if (n_points < 0)
        throw Error(ErrorCode::OutOfDomain, "number of points must be nonnegative", {{"n", std::to_string(n_points)}});

    const ChernCharacter line = chern_line_bundle(lat, alpha);
    ChernCharacter twisted = chern_line_bundle(lat, alpha - surface.curve_c);
    twisted.ch2 -= n_points;

    const ChargeParams params(1, surface.nu);
    const ExtendedRational rho_twisted = slope(lat, params, twisted);
    const ExtendedRational rho_line = slope(lat, params, line);
    return rho_twisted.value() - rho_line.value();
}

ScreenReport semistable_screen(const SurfaceModel& surface, const DivisorClass& alpha, unsigned height_bound)
{
    const IntersectionLattice& lat = surface.lattice;
    require_c_orthogonal(surface, alpha);
    const Rational an = lat.pair(alpha, surface.nu);
    if (an <= 0)
        throw Error(ErrorCode::OutOfDomain, "screen needs alpha.nu > 0", {{"alpha.nu", to_string(an)}});

    ScreenReport report{ScreenVerdict::SemistableAllV, std::nullopt, {}, {}};
    ScreenCertificate& cert = report.certificate;
    cert.modeling_note = "irreducible curves other than C are modeled by the effective-cone generators";

    // (a) every other generator meets C in more than 2 points.
    std::optional<std::string> clause_a_failure;
    for (const auto& g : surface.effective_generators) {
        if (c_multiple(g, surface.curve_c))
            continue;
        const Rational dc = lat.pair(g, surface.curve_c);
        cert.generator_intersections.push_back({g, dc});
        if (dc <= 2 && !clause_a_failure)
            clause_a_failure = "generator " + to_string(g) + " meets C in " + to_string(dc) + " <= 2";
    }

    // (b) only C survives the rank-one screen, and L(-C) has strictly smaller slope.
    cert.survivors = rank_one_screen(surface, alpha, height_bound);
    cert.slope_gap = slope_compare_twist(surface, alpha, 0);
    const bool only_c = cert.survivors.size() == 1 && cert.survivors.front().curve == surface.curve_c;
    std::optional<std::string> clause_b_failure;
    if (!only_c)
        clause_b_failure = "rank-one screen leaves " + std::to_string(cert.survivors.size()) +
                           " candidate(s) instead of exactly {C}";
    else if (cert.slope_gap >= 0)
        clause_b_failure = "slope gap " + to_string(cert.slope_gap) + " is not negative";

    // (c) higher-rank destabilizers.
    cert.higher_rank = rank_threshold(lat, alpha, surface.nu, 2);
    cert.higher_rank_status = cert.higher_rank.kind == RankThreshold::Kind::None
                                  ? HigherRankStatus::ClosedByRankBound
                                  : HigherRankStatus::CitedDeformationArgument;

    if (clause_a_failure) {
        report.verdict = ScreenVerdict::Inconclusive;
        report.failing_clause = 'a';
        report.reason = *clause_a_failure;
    } else if (clause_b_failure) {
        report.verdict = ScreenVerdict::Inconclusive;
        report.failing_clause = 'b';
        report.reason = *clause_b_failure;
    } else if (report.certificate.higher_rank_status == HigherRankStatus::ClosedByRankBound) {
        report.reason = "no rank-one destabilizer and the rank bound stays below 2 for all V";
    } else {
        report.reason = "no rank-one destabilizer; higher-rank walls excluded by the cited B-deformation argument";
    }
    return report;
}

std::string to_string(ScreenVerdict v)
{
    return v == ScreenVerdict::SemistableAllV ? "SemistableAllV" : "Inconclusive";
}

std::string to_string(HigherRankStatus s)
{
    return s == HigherRankStatus::ClosedByRankBound ? "ClosedByRankBound" : "CitedDeformationArgument";
}

}  // namespace k3stab
