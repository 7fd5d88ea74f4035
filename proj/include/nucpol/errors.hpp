#pragma once

#include <stdexcept>
#include <string>

namespace nucpol {

// Base for every error raised by the library. Callers that only want to
// report a failure catch this; callers that want to react to a specific
// numerical condition catch the subclasses.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Adaptive step size collapsed below the floor, or the state became non-finite.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double time)
        : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

// Raised when a trace has too few oscillation maxima to define a frequency.
class OverdampedError : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class NoJumpError : public Error {
public:
    using Error::Error;
};

// Density-matrix invariant violations during master-equation integration.
class TraceError : public Error {
public:
    TraceError(const std::string& what, double time)
        : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class PositivityError : public Error {
public:
    PositivityError(const std::string& what, double time)
        : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class NormError : public Error {
public:
    NormError(const std::string& what, double time)
        : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace nucpol
