#pragma once

#include <complex>

namespace mqdtft {

/// Distance below which x counts as sitting on a pole of Gamma.
inline constexpr double kGammaPoleWindow = 1e-10;

bool near_gamma_pole(double x, double window = kGammaPoleWindow);

/// Gamma(a) / Gamma(b). Zero when b is a pole; PoleProximity when a is.
double gamma_ratio(double a, double b);

/// Plain power series of 2F1(a, b; c; z), |z| < 1.
std::complex<double> hyp2f1_series(double a, double b, double c, std::complex<double> z);

struct UnitCircleValue {
  std::complex<double> value;
  double error_estimate = 0;  // relative
};

/// H(x, phi) = Gamma(x)/Gamma(x+1/2) 2F1(1, x; x+1/2; e^{i phi}).
///
/// Finite at half-integer x. Evaluated from the Euler integral at x + N >= 2
/// and carried down with H(x) = Gamma(x)/Gamma(x+1/2) + z H(x+1).
UnitCircleValue scaled_hyp2f1_unit_circle(double x, double phi);

/// 2F1(1, x; x+1/2; e^{i phi}) for phi in (0, 2 pi), where the series only
/// converges conditionally. AccuracyNotMet if the error estimate exceeds 1e-8.
std::complex<double> hyp2f1_unit_circle(double x, double phi);

}  // namespace mqdtft
