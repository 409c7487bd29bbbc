#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linkcap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A scalar argument is outside its domain (negative rate, q > 1, n <= m, ...).
class InvalidParameter : public Error {
   public:
    using Error::Error;
};

/// A structured input does not meet a precondition (disconnected graph,
/// unknown edge, mismatched plan).
class InvalidInput : public Error {
   public:
    using Error::Error;
};

/// The operation cannot be applied to the current state (e.g. removing an
/// edge from an edgeless graph).
class InvalidState : public Error {
   public:
    using Error::Error;
};

/// The truncated pmf of an edge retains less mass than the requested
/// quantile; the truncation length Q must be raised.
class TruncationInsufficient : public Error {
   public:
    TruncationInsufficient(std::size_t edge, double retained, double criterion);

    std::size_t edge() const noexcept { return edge_; }
    double retained_mass() const noexcept { return retained_; }
    double criterion() const noexcept { return criterion_; }

   private:
    std::size_t edge_;
    double retained_;
    double criterion_;
};

}  // namespace linkcap
