#ifndef BERGMAN_ERRORS_HPP
#define BERGMAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bergman {

/// Base class for all library errors. `code()` maps onto CLI exit codes:
/// validation failures exit 2, numeric non-convergence exits 3.
class Error : public std::runtime_error {
public:
    enum class Code { Validation = 2, NonConvergence = 3 };

    Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const noexcept { return code_; }

private:
    Code code_;
};

/// Iteration cap hit without meeting the residual tolerance.
/// Signals ill-conditioned input; callers may retry in high-precision mode
/// (raised iteration caps).
class NonConvergence : public Error {
public:
    explicit NonConvergence(const std::string& what)
        : Error(Code::NonConvergence, what) {}
};

class ZeroPolynomial : public Error {
public:
    ZeroPolynomial() : Error(Code::Validation, "identically zero polynomial") {}
};

class DegreeMismatch : public Error {
public:
    explicit DegreeMismatch(const std::string& what) : Error(Code::Validation, what) {}
};

class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& what) : Error(Code::Validation, what) {}
};

class ValidationFailed : public Error {
public:
    explicit ValidationFailed(const std::string& what) : Error(Code::Validation, what) {}
};

class PreconditionViolated : public Error {
public:
    explicit PreconditionViolated(const std::string& what) : Error(Code::Validation, what) {}
};

/// A value sits inside a numeric indeterminacy band and the question
/// cannot be decided in double precision. Reported, never guessed.
class Indeterminate : public Error {
public:
    explicit Indeterminate(const std::string& what) : Error(Code::Validation, what) {}
};

/// The two winding methods (root count vs. discrete argument variation)
/// disagree even after sample doubling; the query point is numerically
/// too close to the essential curve.
class CrossCheckMismatch : public Error {
public:
    explicit CrossCheckMismatch(const std::string& what) : Error(Code::Validation, what) {}
};

class SizeMismatch : public Error {
public:
    explicit SizeMismatch(const std::string& what) : Error(Code::Validation, what) {}
};

class UnsupportedDegree : public Error {
public:
    explicit UnsupportedDegree(const std::string& what) : Error(Code::Validation, what) {}
};

}  // namespace bergman

#endif
