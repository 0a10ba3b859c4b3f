#ifndef METAQE_ERRORS_HPP
#define METAQE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace metaqe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A physical or numerical parameter is outside its admissible range.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Both imaginary conductivity parts must be nonzero to name a regime.
class DegenerateRegime : public Error {
public:
    using Error::Error;
};

class CoincidentPoints : public Error {
public:
    using Error::Error;
};

/// Detector or field point lies in a region the construction does not cover.
class UnsupportedRegion : public Error {
public:
    using Error::Error;
};

/// Grids of two traces do not coincide.
class GridError : public Error {
public:
    using Error::Error;
};

/// Numerical failures. The CLI maps all of these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class IllConditionedSystem : public NumericalError {
public:
    IllConditionedSystem(const std::string& what, double condition)
        : NumericalError(what), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

class IntegrationFailure : public NumericalError {
public:
    IntegrationFailure(const std::string& what, double error_estimate)
        : NumericalError(what), error_estimate_(error_estimate) {}
    double error_estimate() const { return error_estimate_; }

private:
    double error_estimate_;
};

/// The effective Hamiltonian is not diagonalizable to working precision.
class DegenerateDecomposition : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonDecayingState : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegeneratePole : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InvalidBasis : public Error {
public:
    using Error::Error;
};

/// Malformed configuration; the message carries the offending field path.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace metaqe

#endif
