#pragma once

#include <stdexcept>
#include <string>

namespace aswn {

// One exception type per error contract. All derive from Error so callers
// can catch coarsely; the CLI maps specific types to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ASWN_ERROR_TYPE(Name)                                      \
    struct Name : Error {                                          \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

ASWN_ERROR_TYPE(NotPrime);
ASWN_ERROR_TYPE(LevelMismatch);
ASWN_ERROR_TYPE(DivisionByZero);
ASWN_ERROR_TYPE(ZeroArgument);
ASWN_ERROR_TYPE(NotInSubfield);
ASWN_ERROR_TYPE(ParamMismatch);
ASWN_ERROR_TYPE(PrecisionExhausted);
ASWN_ERROR_TYPE(EnumerationTooLarge);
ASWN_ERROR_TYPE(IntegralityViolation);
ASWN_ERROR_TYPE(SlopeOutOfRange);
ASWN_ERROR_TYPE(OutOfDomain);
ASWN_ERROR_TYPE(LengthMismatch);
ASWN_ERROR_TYPE(EmptyInput);
ASWN_ERROR_TYPE(TruncationTooSmall);
ASWN_ERROR_TYPE(NegativeValuation);
ASWN_ERROR_TYPE(MultiplicityNotDivisible);
ASWN_ERROR_TYPE(BudgetExceeded);
ASWN_ERROR_TYPE(InvalidConfig);

#undef ASWN_ERROR_TYPE

} // namespace aswn
