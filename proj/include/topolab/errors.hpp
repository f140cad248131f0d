// errors.hpp - domain error hierarchy shared by all modules.
#pragma once

#include <stdexcept>

namespace topolab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bloch
struct NearZeroEigenvalue : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct NonHermitianInput : Error { using Error::Error; };

// mediator
struct ResolventSingular : Error { using Error::Error; };
struct UnsupportedLayout : Error { using Error::Error; };
struct CertificateFailed : Error { using Error::Error; };

// invariants
struct NotChiral : Error { using Error::Error; };
struct GapClosed : Error { using Error::Error; };
struct PointGapClosed : Error { using Error::Error; };
struct UnitarizationFailed : Error { using Error::Error; };

// symmetry
struct AmbiguousClass : Error { using Error::Error; };

// realspace
struct InfiniteRange : Error { using Error::Error; };
struct LayoutMismatch : Error { using Error::Error; };
struct EmptySector : Error { using Error::Error; };

}  // namespace topolab
