#pragma once

#include "k3stab/lattice.hpp"

namespace k3stab {

/// (ch0, ch1, ch2) of an object, numerically.
struct ChernCharacter {
    Rational ch0;
    DivisorClass ch1;
    Rational ch2;

    friend bool operator==(const ChernCharacter&, const ChernCharacter&) = default;
};

/// Mukai vector (r, c1, s) = ch * sqrt(td_X) on a K3 surface, so s = ch2 + ch0.
struct MukaiVector {
    Rational r;
    DivisorClass c1;
    Rational s;

    MukaiVector& operator+=(const MukaiVector& other);
    friend MukaiVector operator+(MukaiVector a, const MukaiVector& b) { return a += b; }
    friend MukaiVector operator-(const MukaiVector& a, const MukaiVector& b) { return a + (Rational(-1) * b); }
    friend MukaiVector operator*(const Rational& k, const MukaiVector& v) { return {k * v.r, k * v.c1, k * v.s}; }
    friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

/// "r,(c1 coords),s", e.g. "0,(1,0),0".
std::string to_string(const MukaiVector& v);
MukaiVector parse_mukai(std::string_view text);
/// Same textual layout for Chern characters: "ch0,(ch1 coords),ch2".
std::string to_string(const ChernCharacter& ch);
ChernCharacter parse_chern(std::string_view text);

MukaiVector mukai_from_chern(const ChernCharacter& ch);
ChernCharacter chern_from_mukai(const MukaiVector& v);

/// <(r,c,s),(r',c',s')> = c.c' - r s' - s r'.
Rational mukai_pairing(const IntersectionLattice& lattice, const MukaiVector& v, const MukaiVector& w);

/// chi(E, F) = -<v(E), v(F)> on a K3 surface.
Rational euler_chi(const IntersectionLattice& lattice, const MukaiVector& v, const MukaiVector& w);

bool is_spherical(const IntersectionLattice& lattice, const MukaiVector& v);

/// ch * exp(-B).
ChernCharacter twisted_chern(const IntersectionLattice& lattice, const ChernCharacter& ch, const DivisorClass& b);

/// Common vectors, relative to a lattice of the given rank.
MukaiVector mukai_structure_sheaf(std::size_t rank);             // v(O_X) = (1, 0, 1)
MukaiVector mukai_point(std::size_t rank);                       // v(O_p) = (0, 0, 1)
MukaiVector mukai_curve_bundle(const DivisorClass& c, long t);   // v(O_C(t)) = (0, C, t+1)
/// ch(L) = (1, alpha, alpha^2/2).
ChernCharacter chern_line_bundle(const IntersectionLattice& lattice, const DivisorClass& alpha);

/// dim Hom, Ext^1, Ext^2 between O_C(a) and O_C(b) for a smooth rational
/// (-2)-curve C. Hom is computed on P^1, Ext^2 by Serre duality, Ext^1 from
/// chi(O_C(a), O_C(b)) = -C^2 = 2.
struct HomExtOnCurve {
    long hom;
    long ext1;
    long ext2;
    friend bool operator==(const HomExtOnCurve&, const HomExtOnCurve&) = default;
};
HomExtOnCurve hom_ext_on_c(long a, long b);

}  // namespace k3stab
