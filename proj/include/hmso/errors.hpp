#pragma once

#include <stdexcept>
#include <string>

namespace hmso {

/// Base class of every library error. CLI maps these to exit code 2
/// (bad input) or 1 (internal check failed), see tools/hmso.cpp.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define HMSO_ERROR(Name)                                                   \
    struct Name : Error {                                                  \
        explicit Name(const std::string& what = #Name) : Error(what) {}    \
    }

HMSO_ERROR(NotSquarefree);
HMSO_ERROR(TrivialField);
HMSO_ERROR(DegenerateBasis);
HMSO_ERROR(NoRepresentation);
HMSO_ERROR(ZeroIdeal);
HMSO_ERROR(NotIntegral);
HMSO_ERROR(BadDivisor);
HMSO_ERROR(NotPrimitive);
HMSO_ERROR(NoBezout);
HMSO_ERROR(WrongCase);
HMSO_ERROR(NotTotallyPositiveUnit);
HMSO_ERROR(NotInGamma);
HMSO_ERROR(WrongSignature);
HMSO_ERROR(NotOrthogonal);
HMSO_ERROR(IrrationalEntry);
HMSO_ERROR(NotInImage);
HMSO_ERROR(NotIntegralImage);
HMSO_ERROR(PoleAtPoint);
HMSO_ERROR(SingularAutomorphy);
HMSO_ERROR(ParseError);

#undef HMSO_ERROR

}  // namespace hmso
