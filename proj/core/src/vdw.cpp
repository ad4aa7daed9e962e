#include "mqdtft/vdw.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "mqdtft/error.hpp"

namespace mqdtft {
namespace {

using State2 = std::array<double, 2>;
using State4 = std::array<double, 4>;

constexpr int kOrder = 8;
constexpr std::size_t kMaxSteps = 5'000'000;

double potential_k(double r, double e) { return std::pow(r, -6) + e; }

// Local wavenumber scale used to weight derivative errors.
double omega(double r, double e) { return std::sqrt(std::pow(r, -6) + std::abs(e)) + 1.0; }

struct Radial {
  double e;
  template <std::size_t N>
  void operator()(const std::array<double, N>& y, std::array<double, N>& dy, double r) const {
    const double k = potential_k(r, e);
    for (std::size_t p = 0; p < N; p += 2) {
      dy[p] = y[p + 1];
      dy[p + 1] = -k * y[p];
    }
  }
};

template <std::size_t N>
double error_norm(const std::array<double, N>& coarse, const std::array<double, N>& fine, double w) {
  double worst = 0;
  for (std::size_t p = 0; p < N; p += 2) {
    const double scale = std::abs(fine[p]) + std::abs(fine[p + 1]) / w + 1e-300;
    worst = std::max(worst, std::abs(fine[p] - coarse[p]) / scale);
    worst = std::max(worst, std::abs(fine[p + 1] - coarse[p + 1]) / (w * scale));
  }
  return worst / ((1 << kOrder) - 1);
}

// Fixed-order RKF78 steps with step-doubling control from `from` to `to`
// (either direction). Calls on_step(r, y) after each accepted step.
template <std::size_t N, class OnStep>
std::size_t drive(std::array<double, N>& y, double from, double to, double e, double tol, double h0,
                  OnStep&& on_step) {
  boost::numeric::odeint::runge_kutta_fehlberg78<std::array<double, N>> stepper;
  const Radial sys{e};
  const double dir = to > from ? 1.0 : -1.0;
  double r = from;
  double h = std::min(h0, std::abs(to - from));
  std::size_t steps = 0;
  while (dir * (to - r) > 0) {
    if (++steps > kMaxSteps) {
      throw Error(ErrorKind::AccuracyNotMet, "chi_c: step budget exhausted at r = " + std::to_string(r));
    }
    const bool last = h >= std::abs(to - r);
    const double step = last ? std::abs(to - r) : h;
    auto coarse = y;
    stepper.do_step(sys, coarse, r, dir * step);
    auto fine = y;
    stepper.do_step(sys, fine, r, dir * step / 2);
    stepper.do_step(sys, fine, r + dir * step / 2, dir * step / 2);
    const double err = error_norm(coarse, fine, omega(r, e));
    if (err <= tol) {
      y = fine;
      r = last ? to : r + dir * step;
      on_step(r, y);
    }
    const double factor = err > 0 ? 0.9 * std::pow(tol / err, 1.0 / (kOrder + 1)) : 4.0;
    h = step * std::clamp(factor, 0.2, 4.0);
    if (h < 1e-14 * std::max(1.0, std::abs(r))) {
      throw Error(ErrorKind::AccuracyNotMet, "chi_c: step size underflow at r = " + std::to_string(r));
    }
  }
  return steps;
}

// Milne phase-amplitude quantities at r: q^2 = K + 5/16 (K'/K)^2 - K''/(4K).
struct Milne {
  double q, dq;
};

Milne milne(double r, double e) {
  const double k = potential_k(r, e);
  const double k1 = -6.0 * std::pow(r, -7);
  const double k2 = 42.0 * std::pow(r, -8);
  const double k3 = -336.0 * std::pow(r, -9);
  const double q2 = k + 5.0 / 16.0 * (k1 / k) * (k1 / k) - k2 / (4.0 * k);
  const double dq2 = k1 + 5.0 / 8.0 * (k1 * k2 / (k * k) - k1 * k1 * k1 / (k * k * k)) - k3 / (4.0 * k) +
                     k2 * k1 / (4.0 * k * k);
  const double q = std::sqrt(q2);
  return {q, dq2 / (2.0 * q)};
}

// Integral of q - r^-3 from 0 to r0. With s = r^6 and D = 1 + e s,
// q = r^-3 sqrt(D + r^4 P), P = 45/(4 D^2) - 21/(2 D), so the integrand is
// (e r^3 + P r) / (sqrt(D + r^4 P) + 1) and stays finite at r = 0.
double phase_correction(double r0, double e) {
  auto integrand = [e](double r) {
    const double r2 = r * r;
    const double d = 1.0 + e * r2 * r2 * r2;
    const double p = 45.0 / (4.0 * d * d) - 21.0 / (2.0 * d);
    return (e * r2 * r + p * r) / (std::sqrt(d + r2 * r2 * p) + 1.0);
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, r0, 15, 1e-13);
}

State4 standardized_start(double e, const ChiOptions& opts) {
  const double r0 = opts.r_start;
  if (!(r0 > 0)) throw Error(ErrorKind::InvalidArgument, "chi_c: r_start must be positive");
  if (e < 0 && r0 > 0.5 * std::pow(-e, -1.0 / 6.0)) {
    throw Error(ErrorKind::InvalidArgument, "chi_c: r_start is not deep inside the classically allowed region");
  }
  const Milne m = milne(r0, e);
  const double phi = 1.0 / (2.0 * r0 * r0) - std::numbers::pi / 4.0 - phase_correction(r0, e) + opts.phase_constant;
  const double amp = 1.0 / std::sqrt(m.q);
  const double damp = -0.5 * std::pow(m.q, -1.5) * m.dq;
  const double norm = std::sqrt(2.0 / std::numbers::pi);
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  // d(phi)/dr = -q.
  return {norm * amp * c, norm * (damp * c + amp * m.q * s), -norm * amp * s, -norm * (damp * s - amp * m.q * c)};
}

double wronskian(const State4& y) { return y[0] * y[3] - y[1] * y[2]; }

double initial_step(double r0, double e) { return 0.01 / omega(r0, e); }

}  // namespace

ScaledEnergy scaled_energy(double gap_ghz, const VdwScales& scales, const PhysicalConstants& k) {
  if (!(gap_ghz >= 0)) {
    throw Error(ErrorKind::InvalidArgument, "scaled_energy: negative gap " + std::to_string(gap_ghz) + " GHz");
  }
  if (!(scales.energy_scale_j > 0)) throw Error(ErrorKind::InvalidArgument, "scaled_energy: missing scales");
  const double value = gap_ghz == 0 ? 0.0 : -(gap_ghz * 1e9 * k.planck_h) / scales.energy_scale_j;
  return {value, gap_ghz};
}

ReferencePair propagate_reference_pair(double e, double r_end, const ChiOptions& opts) {
  if (!(r_end > opts.r_start)) {
    throw Error(ErrorKind::InvalidArgument, "propagate_reference_pair: r_end must exceed r_start");
  }
  State4 y = standardized_start(e, opts);
  ReferencePair out;
  out.wronskian = wronskian(y);
  auto record = [&](double r, const State4& s) {
    out.r.push_back(r);
    out.f.push_back(s[0]);
    out.df.push_back(s[1]);
    out.g.push_back(s[2]);
    out.dg.push_back(s[3]);
    out.max_wronskian_drift =
        std::max(out.max_wronskian_drift, std::abs(wronskian(s) - out.wronskian) / std::abs(out.wronskian));
  };
  record(opts.r_start, y);
  drive(y, opts.r_start, r_end, e, opts.step_tolerance, initial_step(opts.r_start, e), record);
  return out;
}

ChiResult chi_c(const ScaledEnergy& e, const ChiOptions& opts) {
  const double eps = e.value;
  if (!(eps < 0)) {
    throw Error(ErrorKind::InvalidArgument, "chi_c: requires a closed channel (scaled energy < 0)");
  }
  if (!(opts.second_matching_factor > opts.matching_factor) || !(opts.matching_factor > 0)) {
    throw Error(ErrorKind::InvalidArgument, "chi_c: matching factors must satisfy 0 < first < second");
  }
  const double turning = std::pow(-eps, -1.0 / 6.0);
  const double kappa = std::sqrt(-eps);
  ChiResult res;
  res.matching_radius = opts.matching_factor * turning;
  res.second_radius = opts.second_matching_factor * turning;

  State4 y = standardized_start(eps, opts);
  const double w0 = wronskian(y);
  auto track = [&](double, const State4& s) {
    res.wronskian_drift = std::max(res.wronskian_drift, std::abs(wronskian(s) - w0) / std::abs(w0));
  };
  res.steps += drive(y, opts.r_start, res.matching_radius, eps, opts.step_tolerance,
                     initial_step(opts.r_start, eps), track);
  const State4 at_first = y;
  res.steps += drive(y, res.matching_radius, res.second_radius, eps, opts.step_tolerance, 0.1 / kappa, track);
  const State4 at_second = y;

  // Decaying solution, started deep in the forbidden region and carried inward.
  const double far = res.second_radius + opts.decay_lengths / kappa;
  const double local_kappa = std::sqrt(-potential_k(far, eps));
  State2 psi{1.0, -local_kappa};
  auto ignore = [](double, const State2&) {};
  res.steps += drive(psi, far, res.second_radius, eps, opts.step_tolerance, 0.1 / kappa, ignore);
  const State2 psi_second = psi;
  res.steps += drive(psi, res.second_radius, res.matching_radius, eps, opts.step_tolerance, 0.1 / kappa, ignore);

  auto ratio = [](const State4& s, const State2& p) {
    const double wf = s[0] * p[1] - s[1] * p[0];
    const double wg = s[2] * p[1] - s[3] * p[0];
    return wf / wg;
  };
  res.chi = ratio(at_first, psi);
  res.chi_second = ratio(at_second, psi_second);
  res.matching_sensitivity = std::abs(res.chi - res.chi_second) / std::max(1.0, std::abs(res.chi));

  if (!(res.matching_sensitivity <= opts.max_matching_drift) || !(res.wronskian_drift <= 1e-8)) {
    throw Error(ErrorKind::AccuracyNotMet,
                "chi_c: matching did not converge (chi=" + std::to_string(res.chi) +
                    ", second=" + std::to_string(res.chi_second) +
                    ", wronskian drift=" + std::to_string(res.wronskian_drift) + ")");
  }
  return res;
}

double calibrate_phase_constant(const ScaledEnergy& e, double target_chi, const ChiOptions& opts) {
  const double current = chi_c(e, opts).chi;
  double c = opts.phase_constant + std::atan(target_chi) - std::atan(current);
  c = std::remainder(c, std::numbers::pi);
  return c;
}

}  // namespace mqdtft
