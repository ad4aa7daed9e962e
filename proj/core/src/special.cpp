#include "mqdtft/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "mqdtft/error.hpp"

namespace mqdtft {
namespace {

constexpr double kTopOrder = 2.0;
constexpr double kAccuracyGate = 1e-8;

// H at x >= 2 from the Euler integral, t = 1 - u^2.
UnitCircleValue euler_integral(double x, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  auto denom = [&](double w) { return 1.0 - 2.0 * w * c + w * w; };
  auto re = [&](double u) {
    const double w = 1.0 - u * u;
    return 2.0 * std::pow(w, x - 1.0) * (1.0 - w * c) / denom(w);
  };
  auto im = [&](double u) {
    const double w = 1.0 - u * u;
    return 2.0 * std::pow(w, x - 1.0) * w * s / denom(w);
  };
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double err_re = 0, err_im = 0;
  const double vr = integrator.integrate(re, 0.0, 1.0, 1e-14, &err_re);
  const double vi = s == 0 ? 0.0 : integrator.integrate(im, 0.0, 1.0, 1e-14, &err_im);
  const double scale = 1.0 / std::sqrt(std::numbers::pi);
  const std::complex<double> value(vr * scale, vi * scale);
  const double abs_err = scale * (err_re + err_im);
  return {value, abs_err};
}

}  // namespace

bool near_gamma_pole(double x, double window) {
  return x <= window && std::abs(x - std::round(x)) < window;
}

double gamma_ratio(double a, double b) {
  if (near_gamma_pole(b)) return 0.0;
  if (near_gamma_pole(a)) {
    throw Error(ErrorKind::PoleProximity, "gamma_ratio: Gamma(" + std::to_string(a) + ") is at a pole");
  }
  int sa = 1, sb = 1;
  const double la = boost::math::lgamma(a, &sa);
  const double lb = boost::math::lgamma(b, &sb);
  return sa * sb * std::exp(la - lb);
}

std::complex<double> hyp2f1_series(double a, double b, double c, std::complex<double> z) {
  if (std::abs(z) >= 1.0) {
    throw Error(ErrorKind::InvalidArgument, "hyp2f1_series: requires |z| < 1");
  }
  if (near_gamma_pole(c)) {
    throw Error(ErrorKind::PoleProximity, "hyp2f1_series: c at a non-positive integer");
  }
  std::complex<double> term = 1.0;
  std::complex<double> sum = 1.0;
  for (int k = 0; k < 1000000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  throw Error(ErrorKind::AccuracyNotMet, "hyp2f1_series: no convergence");
}

UnitCircleValue scaled_hyp2f1_unit_circle(double x, double phi) {
  if (std::abs(std::remainder(phi, 2.0 * std::numbers::pi)) < 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "scaled_hyp2f1_unit_circle: z = 1 is a branch point");
  }
  if (near_gamma_pole(x)) {
    throw Error(ErrorKind::PoleProximity,
                "scaled_hyp2f1_unit_circle: Gamma(x) pole at x = " + std::to_string(x));
  }
  const int steps = x >= kTopOrder ? 0 : static_cast<int>(std::ceil(kTopOrder - x));
  UnitCircleValue top = euler_integral(x + steps, phi);
  const std::complex<double> z = std::polar(1.0, phi);
  std::complex<double> h = top.value;
  for (int k = steps - 1; k >= 0; --k) {
    h = gamma_ratio(x + k, x + k + 0.5) + z * h;
  }
  // |z| = 1, so the absolute error of the top value carries down unchanged.
  const double abs_err = top.error_estimate + steps * 1e-16 * std::abs(h);
  const double mag = std::abs(h);
  return {h, mag > 0 ? abs_err / mag : abs_err};
}

std::complex<double> hyp2f1_unit_circle(double x, double phi) {
  if (near_gamma_pole(x + 0.5)) {
    throw Error(ErrorKind::PoleProximity, "hyp2f1_unit_circle: c = x + 1/2 is a non-positive integer");
  }
  const UnitCircleValue h = scaled_hyp2f1_unit_circle(x, phi);
  if (!(h.error_estimate <= kAccuracyGate)) {
    throw Error(ErrorKind::AccuracyNotMet,
                "hyp2f1_unit_circle: error estimate " + std::to_string(h.error_estimate));
  }
  return h.value / gamma_ratio(x, x + 0.5);
}

}  // namespace mqdtft
