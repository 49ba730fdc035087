#include "k3stab/error.hpp"

namespace k3stab {

std::string_view code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::DegenerateSublattice: return "DegenerateSublattice";
    case ErrorCode::KernelPhaseUndefined: return "KernelPhaseUndefined";
    case ErrorCode::KernelSlopeUndefined: return "KernelSlopeUndefined";
    case ErrorCode::OutsideRegion: return "OutsideRegion";
    case ErrorCode::NotSpherical: return "NotSpherical";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotAK3Configuration: return "NotAK3Configuration";
    case ErrorCode::DClassUnavailable: return "DClassUnavailable";
    case ErrorCode::InvalidSurface: return "InvalidSurface";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

std::string render(ErrorCode code, const std::string& clause, const Error::Values& values)
{
    std::string msg(code_name(code));
    msg += ": ";
    msg += clause;
    for (const auto& [name, value] : values) {
        msg += "; ";
        msg += name;
        msg += '=';
        msg += value;
    }
    return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string clause, Values values)
    : std::runtime_error(render(code, clause, values)),
      code_(code),
      clause_(std::move(clause)),
      values_(std::move(values))
{
}

}  // namespace k3stab
