#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dtfuse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by a caller (bad sizes, invalid config, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

class ImageIoError : public Error {
public:
  enum class Kind { Unreadable, UnsupportedFormat, MalformedHeader, TruncatedPayload, Unwritable };

  ImageIoError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Raised by the swarm optimizer when the objective returns NaN or infinity.
class NonFiniteFitness : public Error {
public:
  NonFiniteFitness(const std::string& what, std::vector<double> position)
      : Error(what), position_(std::move(position)) {}

  const std::vector<double>& position() const noexcept { return position_; }

private:
  std::vector<double> position_;
};

}  // namespace dtfuse
