#ifndef PSA_ERRORS_H
#define PSA_ERRORS_H

#include <stdexcept>
#include <string>

namespace psa {

/// Base class for every failure raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The postselected state is orthogonal to the preselected one, so the weak value diverges.
struct DarkPointSingularity : Error {
    using Error::Error;
};

/// The postselected field vanishes and its phase is undefined.
struct ZeroAmplitude : Error {
    using Error::Error;
};

/// Phase inversion found no angle reproducing the measured amplified phase.
struct NoRoot : Error {
    using Error::Error;
};

/// An argument lies outside the domain where the formula applies.
struct DomainError : Error {
    using Error::Error;
};

/// The amplified phase is zero, so a relative error is undefined.
struct ZeroSignal : Error {
    using Error::Error;
};

/// A detector photon count came out negative beyond rounding.
struct NegativeCount : Error {
    using Error::Error;
};

/// Malformed run configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace psa

#endif
