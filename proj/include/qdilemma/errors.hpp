#pragma once

#include <stdexcept>
#include <string>

namespace qdilemma {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value is outside its legal range. The message names
/// the offending parameter and the range it must lie in.
struct InvalidParameter : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotUnitary : Error {
    using Error::Error;
};

/// A computed state failed its density-matrix invariants.
struct ValidationFailed : Error {
    using Error::Error;
};

/// A quantity that must be real (up to rounding) carried a significant
/// imaginary part, or a payoff escaped the classical hull.
struct NumericalInconsistency : Error {
    using Error::Error;
};

/// The NE indicator changed sign more than once while scanning mu.
struct NotMonotone : Error {
    using Error::Error;
};

}  // namespace qdilemma
