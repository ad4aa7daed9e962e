#pragma once

#include <cstddef>
#include <vector>

#include "mqdtft/physics_data.hpp"

namespace mqdtft {

/// Channel energy in units of s_E; negative for a closed channel.
struct ScaledEnergy {
  double value = 0;
  double gap_ghz = 0;
};

/// value = -(h * gap) / s_E.
ScaledEnergy scaled_energy(double gap_ghz, const VdwScales& scales, const PhysicalConstants& k);

struct ChiOptions {
  /// Added to the short-range WKB phase of both reference functions.
  double phase_constant = 0.0;
  /// Inner start of the propagation, in units of beta6.
  double r_start = 0.02;
  /// Local error target of one step-doubled propagation step.
  double step_tolerance = 1e-12;
  /// Matching radii as multiples of the classical turning point |e|^(-1/6).
  double matching_factor = 1.0;
  double second_matching_factor = 1.2;
  /// How far past the matching radius the decaying solution is started,
  /// in units of 1/kappa.
  double decay_lengths = 40.0;
  /// Accepted disagreement between the two matching radii.
  double max_matching_drift = 1e-6;
};

/// f and g on the accepted propagation grid (r in units of beta6).
struct ReferencePair {
  std::vector<double> r, f, g, df, dg;
  double wronskian = 0;
  /// max |W(r) - W(r_start)| / |W(r_start)| along the grid.
  double max_wronskian_drift = 0;
};

/// Propagates the standardized zero-energy-normalized pair from r_start to r_end.
ReferencePair propagate_reference_pair(double scaled_energy, double r_end, const ChiOptions& opts);

struct ChiResult {
  double chi = 0;
  double chi_second = 0;       // same quantity matched at the second radius
  double matching_radius = 0;  // beta6 units
  double second_radius = 0;
  double wronskian_drift = 0;
  double matching_sensitivity = 0;  // |chi - chi_second| / max(1, |chi|)
  std::size_t steps = 0;
};

/// chi^c(e): the ratio for which f - chi g decays at large r, for -1/r^6 + e.
ChiResult chi_c(const ScaledEnergy& e, const ChiOptions& opts = {});

/// Phase constant that makes chi_c(e) equal target; chi transforms as
/// tan(atan(chi) + delta) under a common phase shift delta.
double calibrate_phase_constant(const ScaledEnergy& e, double target_chi, const ChiOptions& opts = {});

}  // namespace mqdtft
