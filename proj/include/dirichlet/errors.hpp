#pragma once

#include <stdexcept>
#include <string>

namespace dirichlet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SpacingTooCoarse : public Error {
public:
    using Error::Error;
};

class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class NotConforming : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, int iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

class MissingNorm : public Error {
public:
    using Error::Error;
};

/// The fixed-point search could neither locate a sign change nor certify
/// that none exists on the search interval.
class BracketNotFound : public Error {
public:
    using Error::Error;
};

class InvalidArc : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace dirichlet
