#pragma once

#include "k3stab/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3stab {

/// Numerical data of a K3 surface with a (-2)-curve C and a nef class nu that
/// is orthogonal to C and positive on every other effective generator.
struct SurfaceModel {
    std::string name;
    IntersectionLattice lattice;
    DivisorClass curve_c;
    DivisorClass nu;
    std::vector<DivisorClass> effective_generators;
    long e = 2;
    std::optional<DivisorClass> d_class;
};

struct Violation {
    std::string clause;   // stable identifier, e.g. "curve_c_square"
    std::string message;  // human-readable detail with the offending values

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every violated invariant, in a fixed order. Empty means valid.
std::vector<Violation> validate_surface(const SurfaceModel& model);

/// Rank-2 surface whose effective cone is spanned by two (-2)-curves meeting in
/// q points: Gram [[-2,q],[q,-2]], C = C1, nu = (q/2) y C1 + y C2.
/// Throws NotAK3Configuration for q <= 2 and OutOfDomain unless y is even and positive.
SurfaceModel build_example_rank2(long q, long y);

/// Rank-3 instance whose three generators pairwise meet in 3 points,
/// Gram [[-2,3,3],[3,-2,3],[3,3,-2]], C = C1, nu = 3C2 + 3C3.
SurfaceModel build_example_rank3();

/// Rank-3 instance with a generator meeting C in exactly 2 points,
/// Gram [[-2,2,3],[2,-2,3],[3,3,-2]], C = C1, nu = 3C1 + 2C3.
SurfaceModel build_example_rank3_touching();

/// Hyperbolic plane <C, D0> with Gram [[-2,1],[1,0]], nu = C + 2 D0, generators {C}.
SurfaceModel build_example_minimal();

/// D = (nu - C)/e. Throws DClassUnavailable unless nu^2 = 2.
DivisorClass build_d_class(const SurfaceModel& model);
/// Copy of the model with d_class filled in by build_d_class.
SurfaceModel with_d_class(SurfaceModel model);

/// Parses the JSON surface format. Throws ParseError with the offending field
/// on malformed input, and InvalidSurface (one value per violation) if the
/// model does not validate and allow_invalid is false.
SurfaceModel load_surface(std::string_view text, bool allow_invalid = false);
SurfaceModel load_surface_file(const std::string& path, bool allow_invalid = false);

/// Canonical JSON text; load_surface(save_surface(m)) reproduces m.
std::string save_surface(const SurfaceModel& model);

}  // namespace k3stab
