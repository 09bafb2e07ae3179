#ifndef OPR_ERRORS_HPP
#define OPR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opr {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid numeric parameters (bounds, k, beta, noise factor, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Parameters are well formed but outside the regime where a competitive
/// ratio is defined (e.g. beta >= (U - L)/2 for the min variant).
class RegimeError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Shape mismatches: wrong schedule length, empty sequences.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A schedule that does not buy/sell exactly k units.
class FeasibilityError : public Error {
public:
    using Error::Error;
};

/// An online player was driven outside its step protocol.
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// Enumeration guard exceeded.
class SizeError : public Error {
public:
    using Error::Error;
};

/// The max-variant ratio is undefined because the online profit is <= 0.
class DegenerateProfitError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (trace files).
class DataError : public Error {
public:
    explicit DataError(const std::string& what, long row = -1)
        : Error(row >= 0 ? what + " (row " + std::to_string(row) + ")" : what), row_(row) {}

    /// 1-based data row the error refers to, or -1 when not row-specific.
    long row() const noexcept { return row_; }

private:
    long row_;
};

} // namespace opr

#endif // OPR_ERRORS_HPP
