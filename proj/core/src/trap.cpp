#include "mqdtft/trap.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "mqdtft/error.hpp"
#include "mqdtft/special.hpp"

namespace mqdtft {
namespace {

constexpr double kZeroCrossingF = 1e12;
constexpr double kEpsTolerance = 1e-12;
constexpr int kScanPoints = 32;

const double kSqrtPi = std::sqrt(std::numbers::pi);

std::pair<double, double> refine(const std::function<double(double)>& g, double a, double b, double ga, double gb) {
  std::uintmax_t iters = 200;
  auto tol = [](double x, double y) { return std::abs(y - x) <= kEpsTolerance / 2; };
  return boost::math::tools::toms748_solve(g, a, b, ga, gb, tol, iters);
}

// Root of F(x) = target on the open pole-free interval (lo, hi), nearest `pole`.
// F runs between opposite infinities on such an interval, so the end points
// usually bracket the root already; the sign scan is the fallback.
std::optional<double> solve_between(double lo, double hi, double target, int n, double pole) {
  const double inset = 1e-9;
  lo += inset;
  hi -= inset;
  const std::function<double(double)> g = [&](double x) { return std::atan(big_f(x, n)) - std::atan(target); };
  const double glo = g(lo);
  const double ghi = g(hi);
  if ((glo < 0) != (ghi < 0)) {
    const auto r = refine(g, lo, hi, glo, ghi);
    return 0.5 * (r.first + r.second);
  }
  std::vector<double> xs(kScanPoints + 1);
  std::vector<double> gs(kScanPoints + 1);
  for (int i = 0; i <= kScanPoints; ++i) {
    // Cluster points toward both poles, where F varies fastest.
    const double t = 0.5 - 0.5 * std::cos(std::numbers::pi * i / kScanPoints);
    xs[i] = lo + (hi - lo) * t;
    gs[i] = i == 0 ? glo : (i == kScanPoints ? ghi : g(xs[i]));
  }
  std::optional<double> best;
  for (int i = 0; i < kScanPoints; ++i) {
    if (gs[i] == 0) return xs[i];
    if ((gs[i] < 0) == (gs[i + 1] < 0)) continue;
    const auto r = refine(g, xs[i], xs[i + 1], gs[i], gs[i + 1]);
    const double x = 0.5 * (r.first + r.second);
    if (!best || std::abs(x - pole) < std::abs(*best - pole)) best = x;
  }
  return best;
}

}  // namespace

TrapGeometry make_trap(double omega_r, double omega_ax, double reduced_mass_kg, const PhysicalConstants& k,
                       double eta_gate) {
  if (!(omega_ax > 0) || !(omega_r >= omega_ax)) {
    throw Error(ErrorKind::InvalidArgument, "make_trap: need omega_r >= omega_ax > 0");
  }
  if (!(reduced_mass_kg > 0)) throw Error(ErrorKind::InvalidArgument, "make_trap: reduced mass must be positive");
  TrapGeometry t;
  t.omega_r = omega_r;
  t.omega_ax = omega_ax;
  t.eta = omega_r / omega_ax;
  t.n = static_cast<int>(std::lround(t.eta));
  if (!(std::abs(t.eta - t.n) <= eta_gate)) {
    std::ostringstream os;
    os << "make_trap: anisotropy " << t.eta << " is farther than " << eta_gate << " from an integer";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  t.reduced_mass_kg = reduced_mass_kg;
  t.hbar = k.hbar;
  t.planck_h = k.planck_h;
  t.d_r_m = std::sqrt(k.hbar / (reduced_mass_kg * omega_r));
  t.d_ax_m = std::sqrt(k.hbar / (reduced_mass_kg * omega_ax));
  t.unit_omega = omega_r / t.n;
  t.unit_length_m = std::sqrt(k.hbar / (reduced_mass_kg * t.unit_omega));
  t.unit_length_a0 = t.unit_length_m / k.bohr_radius;
  return t;
}

TrapGeometry make_trap_khz(double f_r_khz, double f_ax_khz, double reduced_mass_kg, const PhysicalConstants& k,
                           double eta_gate) {
  const double w = 2.0 * std::numbers::pi * 1e3;
  return make_trap(w * f_r_khz, w * f_ax_khz, reduced_mass_kg, k, eta_gate);
}

double big_f(double x, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "big_f: n must be a positive integer");
  if (near_gamma_pole(x)) {
    throw Error(ErrorKind::PoleProximity, "big_f: x = " + std::to_string(x) + " is at a pole of Gamma");
  }
  std::complex<double> sum = -2.0 * kSqrtPi * gamma_ratio(x, x - 0.5);
  for (int m = 1; m < n; ++m) {
    const UnitCircleValue h = scaled_hyp2f1_unit_circle(x, 2.0 * std::numbers::pi * m / n);
    if (!(h.error_estimate <= 1e-8)) {
      throw Error(ErrorKind::AccuracyNotMet, "big_f: hypergeometric error estimate " +
                                                 std::to_string(h.error_estimate));
    }
    sum += kSqrtPi * h.value;
  }
  if (!(std::abs(sum.imag()) < 1e-10 * (1.0 + std::abs(sum.real())))) {
    throw Error(ErrorKind::AccuracyNotMet, "big_f: imaginary residual " + std::to_string(sum.imag()));
  }
  return sum.real();
}

double noninteracting_energy(int branch) {
  if (branch < 0) throw Error(ErrorKind::InvalidArgument, "branch must be non-negative");
  return 2.0 * branch;
}

double energy_to_a(const TrapEnergy& eps, const TrapGeometry& trap) {
  const double x = -eps.value / 2.0;
  if (near_gamma_pole(x)) return 0.0;
  const double f = big_f(x, trap.n);
  if (std::abs(f) > kZeroCrossingF) return 0.0;
  return -kSqrtPi * trap.unit_length_a0 / f;
}

TrapEnergy a_to_energy(double a_a0, const TrapGeometry& trap, int branch) {
  if (!std::isfinite(a_a0)) throw Error(ErrorKind::InvalidArgument, "a_to_energy: a must be finite");
  const double e0 = noninteracting_energy(branch);
  if (a_a0 == 0) return {e0, branch};
  const double target = -kSqrtPi * trap.unit_length_a0 / a_a0;
  const double pole = -static_cast<double>(branch);
  std::optional<double> x;
  double lo = 0;
  double hi = 0;
  if (a_a0 > 0) {
    lo = pole - 1.0;
    hi = pole;
    x = solve_between(lo, hi, target, trap.n, pole);
  } else if (branch > 0) {
    lo = pole;
    hi = pole + 1.0;
    x = solve_between(lo, hi, target, trap.n, pole);
  } else {
    // Unbounded side: widen until the root is enclosed.
    lo = 0.0;
    for (hi = 4.0; hi <= 4096.0 && !x; hi *= 2.0) x = solve_between(lo, hi, target, trap.n, pole);
  }
  if (!x) {
    std::ostringstream os;
    os << "a_to_energy: no root of F(x) = " << target << " for x in (" << lo << ", " << hi << ")";
    throw Error(ErrorKind::BracketFailure, os.str());
  }
  if (std::abs(*x - std::round(*x)) < 1e-10) {
    throw Error(ErrorKind::PoleProximity, "a_to_energy: solution sits on a pole of F");
  }
  return {-2.0 * *x, branch};
}

double energy_khz(double eps, const TrapGeometry& trap) {
  return eps * trap.unit_omega / (2.0 * std::numbers::pi) * 1e-3;
}

double energy_joule(double eps, const TrapGeometry& trap) { return eps * trap.hbar * trap.unit_omega; }

std::string_view to_string(Validity v) noexcept {
  switch (v) {
    case Validity::Valid: return "valid";
    case Validity::Warning: return "warning";
    case Validity::Invalid: return "invalid";
  }
  return "invalid";
}

ValidityReport pseudopotential_validity(const TrapGeometry& trap, const VdwScales& scales,
                                        const PhysicalConstants&) {
  ValidityReport r;
  r.ratio = scales.beta6_m / trap.d_r_m;
  r.verdict = r.ratio < 0.5 ? Validity::Valid : (r.ratio <= 1.0 ? Validity::Warning : Validity::Invalid);
  return r;
}

}  // namespace mqdtft
