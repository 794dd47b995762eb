#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace circfn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Order mismatch, d < 2, or a row of the wrong length.
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

/// Bad tolerance, empty coefficient list, malformed path, wrong function kind.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Increment direction for a difference quotient is not invertible.
class InvalidIncrement : public Error {
 public:
  using Error::Error;
};

/// Errors tied to one eigenchannel carry its 1-based index.
class ChannelError : public Error {
 public:
  ChannelError(const std::string& what, std::size_t channel)
      : Error(what + " (channel " + std::to_string(channel) + ")"), channel_(channel) {}
  std::size_t channel() const noexcept { return channel_; }

 private:
  std::size_t channel_;
};

/// Rational channel Q_i(u_i) vanishes where a derivative was requested.
class PoleError : public ChannelError {
 public:
  using ChannelError::ChannelError;
};

/// Channel function has a zero or pole at the evaluation point.
class ChannelSingularity : public ChannelError {
 public:
  using ChannelError::ChannelError;
};

/// Scalar root finder could not produce verified roots.
class SolverFailure : public ChannelError {
 public:
  using ChannelError::ChannelError;
};

/// Root finding was asked for a constant or identically zero polynomial.
class DegeneratePolynomial : public Error {
 public:
  using Error::Error;
};

/// Cartesian recombination of channel roots exceeds the configured cap.
class RecombinationOverflow : public Error {
 public:
  using Error::Error;
};

/// JSON document does not match the expected schema; message names the field.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace circfn
