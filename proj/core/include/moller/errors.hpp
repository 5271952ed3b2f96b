#pragma once

#include <stdexcept>
#include <string>

namespace moller {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MOLLER_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

MOLLER_DEFINE_ERROR(ShapeMismatch);
MOLLER_DEFINE_ERROR(IncompatibleRetracts);
MOLLER_DEFINE_ERROR(RetractInvariantsFailed);
MOLLER_DEFINE_ERROR(DimensionMismatch);
MOLLER_DEFINE_ERROR(JacobiFailed);
MOLLER_DEFINE_ERROR(MCFailed);
MOLLER_DEFINE_ERROR(NotTwoTerm);
MOLLER_DEFINE_ERROR(SplittingInvalid);
MOLLER_DEFINE_ERROR(OrderZeroPerturbation);
MOLLER_DEFINE_ERROR(DegreeRangeViolated);
MOLLER_DEFINE_ERROR(TooFewVertices);
MOLLER_DEFINE_ERROR(InvalidMonomial);

#undef MOLLER_DEFINE_ERROR

} // namespace moller
