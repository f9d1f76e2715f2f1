#ifndef SLT_ERRORS_HPP
#define SLT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parameter outside its admissible range (lambda <= -1/2, non-even grid, ...).
struct InvalidParam : Error {
    using Error::Error;
};

// |<f>| fell below the mean floor: the polar parametrization is undefined.
struct ZeroMean : Error {
    using Error::Error;
};

// The field left the admissible domain of the logarithm.
struct DomainViolation : Error {
    using Error::Error;
};

// A grid value too close to zero for a pointwise log/phase.
struct ZeroModulus : Error {
    using Error::Error;
};

// A field or derived quantity contains NaN/Inf.
struct NonFinite : Error {
    using Error::Error;
};

// Enumeration exceeded its configured combination cap.
struct BudgetExceeded : Error {
    using Error::Error;
};

// Too few usable samples left in a fit window.
struct DegenerateWindow : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace slt

#endif
