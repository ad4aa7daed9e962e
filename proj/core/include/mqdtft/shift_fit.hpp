#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mqdtft/angular.hpp"
#include "mqdtft/physics_data.hpp"
#include "mqdtft/trap.hpp"

namespace mqdtft {

struct HyperfineState {
  HalfInt f, mf;
};

/// Microwave transition of one atom of the pair while the other one is a
/// spectator.
struct TransitionSpec {
  int interrogated = 0;  // 0: first species of the pair, 1: second
  HyperfineState initial_state, final_state;
  FragChannel initial_channel, final_channel;
  /// +1 if the interrogated atom starts in its lower hyperfine manifold.
  int direction = +1;
  std::optional<double> a_initial_a0;
  std::optional<double> a_final_a0;
};

/// Builds the pair channels and the direction from the single-atom states;
/// leave a length unset to mark it as the unknown.
TransitionSpec make_transition(const SpeciesPair& pair, int interrogated, HyperfineState initial,
                               HyperfineState final_state, HyperfineState spectator,
                               std::optional<double> a_initial_a0, std::optional<double> a_final_a0);

/// Per-sweep trap settings: omega_r = eta * omega_ax at every point.
struct SweepSettings {
  double eta = 0;
  double reduced_mass_kg = 0;
  PhysicalConstants constants;
  double eta_gate = kDefaultEtaGate;
  /// When set, predict_shift refuses traps where the pseudopotential is invalid.
  std::optional<VdwScales> scales;
};

/// direction * (eps(a_final) - eps(a_initial)) in kHz.
double predict_shift(const TransitionSpec& t, const TrapGeometry& trap);

struct CurvePoint {
  double omega_ax_khz = 0;
  double shift_khz = 0;
  std::string error;  // empty on success
};

std::vector<CurvePoint> shift_curve(const TransitionSpec& t, const std::vector<double>& omega_ax_khz,
                                    const SweepSettings& sweep);

struct Measurement {
  double omega_ax_khz = 0;
  double shift_khz = 0;
  double sigma_khz = 0;
};

struct FitOptions {
  double a_min_a0 = -1000;
  double a_max_a0 = 1000;
  /// Scan points used to locate the chi^2 basin before Brent refinement.
  int scan_points = 201;
  /// Values of a closer than this to zero are skipped by the scan.
  double zero_exclusion_a0 = 1.0;
  double tolerance_a0 = 1e-4;
};

struct FitResult {
  double a_hat_a0 = 0;
  double sigma_a0 = 0;
  double chi2 = 0;
  int dof = 0;
  std::vector<double> residuals_khz;  // model - measured
};

/// chi^2(a) = sum (model_i - shift_i)^2 / sigma_i^2 over the unknown length.
double chi_squared(const std::vector<Measurement>& data, const TransitionSpec& t, const SweepSettings& sweep,
                   double a_unknown_a0);

FitResult fit_scattering_length(const std::vector<Measurement>& data, const TransitionSpec& t,
                                const SweepSettings& sweep, const FitOptions& opts = {});

/// Model shifts at a_true plus N(0, sigma) noise from a seeded mt19937_64.
std::vector<Measurement> synthesize_measurements(const TransitionSpec& t, const SweepSettings& sweep,
                                                 const std::vector<double>& omega_ax_khz, double a_true_a0,
                                                 double sigma_khz, std::uint64_t seed);

/// Plain mean of independent estimates.
double combine_estimates(const std::vector<double>& estimates);

// Measurement CSV: header omega_ax_khz,shift_khz,sigma_khz; '#' comments.
std::vector<Measurement> read_measurements(std::istream& in, std::optional<double> default_sigma_khz = {});
std::vector<Measurement> read_measurements(const std::filesystem::path& path,
                                           std::optional<double> default_sigma_khz = {});
void write_measurements(std::ostream& out, const std::vector<Measurement>& data);

}  // namespace mqdtft
