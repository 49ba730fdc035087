#pragma once

// Shared fixtures, seeded generators and independent oracles for the test suites.
// Oracles here deliberately avoid the library routine they check: they work
// from raw Gram entries and the closed-form formulas rather than calling into
// the implementation under test.

#include "k3stab/charge.hpp"
#include "k3stab/lattice.hpp"
#include "k3stab/mukai.hpp"
#include "k3stab/surface.hpp"

#include <cstdint>
#include <random>

namespace k3stab::testing {

inline constexpr std::uint64_t kSeed = 20261018;

/// Basis (C, D0) with C^2 = -2, C.D0 = 1, D0^2 = 0.
inline IntersectionLattice cd_lattice()
{
    return IntersectionLattice({"C", "D0"}, {{-2, 1}, {1, 0}});
}

/// (C, D0) plus a class P orthogonal to both with P^2 = -4.
inline IntersectionLattice cd_psi_lattice()
{
    return IntersectionLattice({"C", "D0", "P"}, {{-2, 1, 0}, {1, 0, 0}, {0, 0, -4}});
}

class Gen {
public:
    explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    /// p/q with |p| <= num_bound, 1 <= q <= den_bound.
    Rational rational(long num_bound = 20, long den_bound = 12)
    {
        Rational q(integer(-num_bound, num_bound), integer(1, den_bound));
        q.canonicalize();
        return q;
    }

    Rational positive_rational(long num_bound = 20, long den_bound = 12)
    {
        Rational q(integer(1, num_bound), integer(1, den_bound));
        q.canonicalize();
        return q;
    }

    /// Rational k/den strictly inside (lo, hi) with den drawn from [2, den_bound].
    Rational in_open_interval(const Rational& lo, const Rational& hi, long den_bound = 50)
    {
        const long den = integer(2, den_bound);
        mpz_class k_lo, k_hi;
        const Rational lo_scaled = lo * den;
        const Rational hi_scaled = hi * den;
        mpz_fdiv_q(k_lo.get_mpz_t(), lo_scaled.get_num_mpz_t(), lo_scaled.get_den_mpz_t());
        mpz_cdiv_q(k_hi.get_mpz_t(), hi_scaled.get_num_mpz_t(), hi_scaled.get_den_mpz_t());
        const long k = integer(k_lo.get_si() + 1, k_hi.get_si() - 1);
        Rational q(k, den);
        q.canonicalize();
        return q;
    }

    DivisorClass divisor(std::size_t rank)
    {
        std::vector<Rational> coords;
        for (std::size_t i = 0; i < rank; ++i)
            coords.push_back(rational());
        return DivisorClass(std::move(coords));
    }

    MukaiVector mukai(std::size_t rank) { return {rational(), divisor(rank), rational()}; }

    ChernCharacter chern(std::size_t rank) { return {rational(), divisor(rank), rational()}; }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// a^T G b straight from the Gram entries.
inline Rational oracle_pair(const IntersectionLattice& lat, const DivisorClass& a, const DivisorClass& b)
{
    Rational total = 0;
    for (std::size_t i = 0; i < lat.rank(); ++i)
        for (std::size_t j = 0; j < lat.rank(); ++j)
            total += a[i] * b[j] * Rational(lat.gram(i, j));
    return total;
}

/// The Mukai vector of ST_{O_C(t)}(E) in the four-invariant form written out by hand:
/// (n, c1, s) + (c - n(t+1)) (0, C, t+1) with c = c1.C.
inline MukaiVector oracle_twist(const IntersectionLattice& lat, const MukaiVector& v, const DivisorClass& curve_c, long t)
{
    const Rational coeff = oracle_pair(lat, v.c1, curve_c) - v.r * (t + 1);
    return {v.r, v.c1 + coeff * curve_c, v.s + coeff * (t + 1)};
}

/// -ch2^B + V ch0^B + i nu.ch1^B evaluated from the defining formulas.
inline ComplexExact oracle_charge(const IntersectionLattice& lat, const Rational& v, const DivisorClass& nu,
                                  const DivisorClass& b, const ChernCharacter& ch)
{
    const DivisorClass ch1b = ch.ch1 - ch.ch0 * b;
    const Rational ch2b = ch.ch2 - oracle_pair(lat, ch.ch1, b) + ch.ch0 * oracle_pair(lat, b, b) / 2;
    return {-ch2b + v * ch.ch0, oracle_pair(lat, nu, ch1b)};
}

inline Rational q(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace k3stab::testing
