#include "k3stab/lattice.hpp"

#include "k3stab/error.hpp"

#include <algorithm>

namespace k3stab {

DivisorClass DivisorClass::basis(std::size_t rank, std::size_t index)
{
    DivisorClass d = zero(rank);
    d.coords_.at(index) = 1;
    return d;
}

bool DivisorClass::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other)
{
    if (other.size() != size())
        throw Error(ErrorCode::DimensionError, "divisor addition",
                    {{"lhs_rank", std::to_string(size())}, {"rhs_rank", std::to_string(other.size())}});
    for (std::size_t i = 0; i < size(); ++i)
        coords_[i] += other.coords_[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other)
{
    if (other.size() != size())
        throw Error(ErrorCode::DimensionError, "divisor subtraction",
                    {{"lhs_rank", std::to_string(size())}, {"rhs_rank", std::to_string(other.size())}});
    for (std::size_t i = 0; i < size(); ++i)
        coords_[i] -= other.coords_[i];
    return *this;
}

DivisorClass& DivisorClass::operator*=(const Rational& k)
{
    for (auto& q : coords_)
        q *= k;
    return *this;
}

std::string to_string(const DivisorClass& d)
{
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i)
            out += ',';
        out += to_string(d[i]);
    }
    return out;
}

DivisorClass parse_divisor(std::string_view text)
{
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    if (text.size() >= 2 && text.front() == '(' && text.back() == ')')
        text = text.substr(1, text.size() - 2);
    std::vector<Rational> coords;
    if (text.empty())
        return DivisorClass(std::move(coords));
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        coords.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return DivisorClass(std::move(coords));
}

IntersectionLattice::IntersectionLattice(std::vector<std::string> basis_names,
                                         std::vector<std::vector<std::int64_t>> gram)
    : names_(std::move(basis_names))
{
    const std::size_t n = names_.size();
    if (gram.size() != n)
        throw Error(ErrorCode::ParseError, "gram dimension differs from number of basis names",
                    {{"basis", std::to_string(n)}, {"gram_rows", std::to_string(gram.size())}});
    gram_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (gram[i].size() != n)
            throw Error(ErrorCode::ParseError, "gram is not square",
                        {{"row", std::to_string(i)}, {"length", std::to_string(gram[i].size())}});
        gram_.insert(gram_.end(), gram[i].begin(), gram[i].end());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram_[i * n + j] != gram_[j * n + i])
                throw Error(ErrorCode::ParseError, "gram is not symmetric",
                            {{"row", std::to_string(i)}, {"column", std::to_string(j)}});
}

std::vector<std::vector<std::int64_t>> IntersectionLattice::gram_rows() const
{
    std::vector<std::vector<std::int64_t>> rows(rank());
    for (std::size_t i = 0; i < rank(); ++i)
        rows[i].assign(gram_.begin() + static_cast<std::ptrdiff_t>(i * rank()),
                       gram_.begin() + static_cast<std::ptrdiff_t>((i + 1) * rank()));
    return rows;
}

std::size_t IntersectionLattice::index_of(std::string_view name) const
{
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        throw Error(ErrorCode::ParseError, "unknown basis label", {{"label", std::string(name)}});
    return static_cast<std::size_t>(it - names_.begin());
}

void IntersectionLattice::check(const DivisorClass& d) const
{
    if (d.size() != rank())
        throw Error(ErrorCode::DimensionError, "class does not live in the lattice",
                    {{"lattice_rank", std::to_string(rank())}, {"class_length", std::to_string(d.size())}});
}

Rational IntersectionLattice::pair(const DivisorClass& a, const DivisorClass& b) const
{
    check(a);
    check(b);
    const std::size_t n = rank();
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0)
            continue;
        Rational row = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (const auto g = gram_[i * n + j]; g != 0 && b[j] != 0)
                row += Rational(static_cast<long>(g)) * b[j];
        total += a[i] * row;
    }
    return total;
}

CdDecomposition decompose_cd(const IntersectionLattice& lattice, const DivisorClass& a, const DivisorClass& c,
                             const DivisorClass& d)
{
    const Rational cc = lattice.square(c);
    const Rational cd = lattice.pair(c, d);
    const Rational dd = lattice.square(d);
    const Rational det = cc * dd - cd * cd;
    if (det == 0)
        throw Error(ErrorCode::DegenerateSublattice, "Gram block on (C, D) is singular",
                    {{"C.C", to_string(cc)}, {"C.D", to_string(cd)}, {"D.D", to_string(dd)}});

    // [cc cd; cd dd] [x; y] = [a.C; a.D]
    const Rational ac = lattice.pair(a, c);
    const Rational ad = lattice.pair(a, d);
    CdDecomposition out;
    out.c_coeff = (ac * dd - ad * cd) / det;
    out.d_coeff = (cc * ad - cd * ac) / det;
    out.span_part = out.c_coeff * c + out.d_coeff * d;
    out.orthogonal_part = a - out.span_part;
    return out;
}

namespace {

void extend(std::vector<unsigned>& coeffs, std::size_t first, unsigned remaining,
            std::vector<std::vector<unsigned>>& out)
{
    for (std::size_t i = first; i < coeffs.size(); ++i) {
        if (remaining == 0)
            return;
        ++coeffs[i];
        out.push_back(coeffs);
        extend(coeffs, i, remaining - 1, out);
        --coeffs[i];
    }
}

}  // namespace

std::vector<std::vector<unsigned>> enumerate_cone_coefficients(std::size_t n_generators, unsigned height)
{
    std::vector<std::vector<unsigned>> out;
    if (n_generators == 0 || height == 0)
        return out;
    out.reserve(static_cast<std::size_t>(cone_class_count(n_generators, height)));
    std::vector<unsigned> coeffs(n_generators, 0);
    extend(coeffs, 0, height, out);
    return out;
}

std::vector<DivisorClass> enumerate_cone_classes(std::span<const DivisorClass> generators, unsigned height)
{
    std::vector<DivisorClass> out;
    if (generators.empty())
        return out;
    const std::size_t rank = generators.front().size();
    for (const auto& coeffs : enumerate_cone_coefficients(generators.size(), height)) {
        DivisorClass sum = DivisorClass::zero(rank);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i])
                sum += Rational(coeffs[i]) * generators[i];
        out.push_back(std::move(sum));
    }
    return out;
}

std::uint64_t cone_class_count(std::size_t n_generators, unsigned height)
{
    if (n_generators == 0)
        return 0;
    // C(n + h, h) computed incrementally; each partial product is itself a binomial.
    std::uint64_t binom = 1;
    for (unsigned k = 1; k <= height; ++k)
        binom = binom * (n_generators + k) / k;
    return binom - 1;
}

}  // namespace k3stab
