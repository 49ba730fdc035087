#pragma once

#include "k3stab/rational.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace k3stab {

/// A divisor class with exact rational coordinates in some lattice basis.
/// The class itself does not know its lattice; operations that pair classes
/// take the lattice explicitly and check dimensions.
class DivisorClass {
public:
    DivisorClass() = default;
    explicit DivisorClass(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    DivisorClass(std::initializer_list<Rational> coords) : coords_(coords) {}

    static DivisorClass zero(std::size_t rank) { return DivisorClass(std::vector<Rational>(rank, Rational(0))); }
    static DivisorClass basis(std::size_t rank, std::size_t index);

    std::size_t size() const { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    std::span<const Rational> coords() const { return coords_; }
    bool is_zero() const;

    DivisorClass& operator+=(const DivisorClass& other);
    DivisorClass& operator-=(const DivisorClass& other);
    DivisorClass& operator*=(const Rational& k);

    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }
    friend DivisorClass operator*(const Rational& k, DivisorClass a) { return a *= k; }
    friend DivisorClass operator*(DivisorClass a, const Rational& k) { return a *= k; }
    friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.coords_ == b.coords_; }

private:
    std::vector<Rational> coords_;
};

/// Comma-joined canonical coordinates, e.g. "1,3/2,0".
std::string to_string(const DivisorClass& d);
/// Inverse of to_string(DivisorClass). Optional surrounding parentheses are accepted.
DivisorClass parse_divisor(std::string_view text);

/// Néron–Severi lattice: named basis plus a symmetric integer Gram matrix.
class IntersectionLattice {
public:
    /// Throws ParseError if the Gram matrix is not square, not symmetric, or
    /// does not match the number of basis names.
    IntersectionLattice(std::vector<std::string> basis_names, std::vector<std::vector<std::int64_t>> gram);

    std::size_t rank() const { return names_.size(); }
    const std::vector<std::string>& basis_names() const { return names_; }
    std::int64_t gram(std::size_t i, std::size_t j) const { return gram_[i * rank() + j]; }
    std::vector<std::vector<std::int64_t>> gram_rows() const;

    /// Index of a named basis element; throws ParseError if unknown.
    std::size_t index_of(std::string_view name) const;
    DivisorClass basis_class(std::size_t i) const { return DivisorClass::basis(rank(), i); }

    /// Throws DimensionError unless d has rank() coordinates.
    void check(const DivisorClass& d) const;

    /// a^T * gram * b.
    Rational pair(const DivisorClass& a, const DivisorClass& b) const;
    Rational square(const DivisorClass& a) const { return pair(a, a); }

    friend bool operator==(const IntersectionLattice&, const IntersectionLattice&) = default;

private:
    std::vector<std::string> names_;
    std::vector<std::int64_t> gram_;
};

struct CdDecomposition {
    Rational c_coeff;
    Rational d_coeff;
    DivisorClass span_part;        // c_coeff*C + d_coeff*D
    DivisorClass orthogonal_part;  // pairs to zero with C and D
};

/// Splits a = x*C + y*D + rest with rest orthogonal to both C and D.
/// Throws DegenerateSublattice when the Gram block on (C, D) is singular.
CdDecomposition decompose_cd(const IntersectionLattice& lattice, const DivisorClass& a, const DivisorClass& c,
                             const DivisorClass& d);

/// Coefficient vectors of all nonzero nonnegative combinations of n generators
/// with coefficient sum at most height. Each combination is identified with the
/// non-decreasing sequence of generator indices it uses; the output is sorted
/// lexicographically on those sequences (depth-first, a prefix precedes its
/// extensions). For two generators and height 2:
///   (1,0) (2,0) (1,1) (0,1) (0,2).
std::vector<std::vector<unsigned>> enumerate_cone_coefficients(std::size_t n_generators, unsigned height);

/// enumerate_cone_coefficients mapped to classes.
std::vector<DivisorClass> enumerate_cone_classes(std::span<const DivisorClass> generators, unsigned height);

/// Number of nonzero lattice points in the simplex: C(n + h, h) - 1.
std::uint64_t cone_class_count(std::size_t n_generators, unsigned height);

}  // namespace k3stab
