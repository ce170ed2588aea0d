#include "svcmig/error.hpp"

namespace svcmig {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidProbability: return "InvalidProbability";
        case Errc::InvalidBounds: return "InvalidBounds";
        case Errc::InvalidDiscount: return "InvalidDiscount";
        case Errc::InvalidCost: return "InvalidCost";
        case Errc::InvalidThresholds: return "InvalidThresholds";
        case Errc::ForbiddenAction: return "ForbiddenAction";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::SingularMatrix: return "SingularMatrix";
        case Errc::TooLarge: return "TooLarge";
        case Errc::InvalidStart: return "InvalidStart";
        case Errc::UnknownRule: return "UnknownRule";
        case Errc::Usage: return "UsageError";
        case Errc::Io: return "IoError";
        case Errc::Solver: return "SolverError";
    }
    return "Unknown";
}

}  // namespace svcmig
