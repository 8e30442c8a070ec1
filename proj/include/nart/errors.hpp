#pragma once

#include <stdexcept>
#include <string>

namespace nart {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define NART_ERROR_TYPE(Name)                                        \
    struct Name : Error {                                            \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

NART_ERROR_TYPE(NonAdmissibleIdeal);
NART_ERROR_TYPE(InfiniteDimensional);
NART_ERROR_TYPE(AlgebraMismatch);
NART_ERROR_TYPE(SplittingFailure);
NART_ERROR_TYPE(FieldTooSmall);
NART_ERROR_TYPE(ProjectiveInput);
NART_ERROR_TYPE(SocleSearchFailure);
NART_ERROR_TYPE(IncompleteARQuiver);
NART_ERROR_TYPE(SearchSpaceTooLarge);
NART_ERROR_TYPE(ShapeMismatch);
NART_ERROR_TYPE(ProjectiveEnd);
NART_ERROR_TYPE(ConstructionFailure);
NART_ERROR_TYPE(ResolutionOverrun);
NART_ERROR_TYPE(NotNExact);
NART_ERROR_TYPE(NotFiniteType);
NART_ERROR_TYPE(MemberEscape);
NART_ERROR_TYPE(UnknownEntry);
NART_ERROR_TYPE(BadInput);

#undef NART_ERROR_TYPE

}  // namespace nart
