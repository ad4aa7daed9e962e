#include "mqdtft/error.hpp"

#include <cmath>

#include "mqdtft/half_int.hpp"

namespace mqdtft {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::TangentPole: return "tangent-pole";
    case ErrorKind::NearResonance: return "near-resonance";
    case ErrorKind::DivergentScatteringLength: return "divergent-scattering-length";
    case ErrorKind::PoleProximity: return "pole-proximity";
    case ErrorKind::BracketFailure: return "bracket-failure";
    case ErrorKind::AccuracyNotMet: return "accuracy-not-met";
    case ErrorKind::AmbiguousClassification: return "ambiguous-classification";
    case ErrorKind::IllPosed: return "ill-posed";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

HalfInt HalfInt::from_double(double value) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (!std::isfinite(value) || std::abs(twice - rounded) > 2e-9) {
    throw Error(ErrorKind::InvalidArgument, "not an integer or half-integer: " + std::to_string(value));
  }
  return from_twice(static_cast<int>(rounded));
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace mqdtft
