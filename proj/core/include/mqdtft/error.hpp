#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mqdtft {

enum class ErrorKind {
  InvalidArgument,
  TangentPole,
  NearResonance,
  DivergentScatteringLength,
  PoleProximity,
  BracketFailure,
  AccuracyNotMet,
  AmbiguousClassification,
  IllPosed,
  Config,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; the kind is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mqdtft
