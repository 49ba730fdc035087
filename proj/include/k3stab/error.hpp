#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace k3stab {

enum class ErrorCode {
    DimensionError,
    DegenerateSublattice,
    KernelPhaseUndefined,
    KernelSlopeUndefined,
    OutsideRegion,
    NotSpherical,
    NotNormalized,
    CoordinateOutOfRange,
    Singular,
    OutOfDomain,
    HypothesisViolated,
    NotAK3Configuration,
    DClassUnavailable,
    InvalidSurface,
    ParseError,
};

std::string_view code_name(ErrorCode code);

/// Domain error carrying a machine-readable record: a code, the clause that
/// failed, and the offending values as name/value pairs.
class Error : public std::runtime_error {
public:
    using Values = std::vector<std::pair<std::string, std::string>>;

    Error(ErrorCode code, std::string clause, Values values = {});

    ErrorCode code() const noexcept { return code_; }
    const std::string& clause() const noexcept { return clause_; }
    const Values& values() const noexcept { return values_; }

private:
    ErrorCode code_;
    std::string clause_;
    Values values_;
};

}  // namespace k3stab
