#pragma once

#include <string_view>

#include "mqdtft/physics_data.hpp"

namespace mqdtft {

/// Axially symmetric harmonic trap for the relative motion of a pair.
///
/// The trapped-pair relation needs an integer anisotropy n. Energies and
/// lengths are measured in the axial units of the integer-ratio trap with the
/// radial frequency kept: omega_unit = omega_r / n, length sqrt(hbar / (mu omega_unit)).
/// Energies are measured from the noninteracting zero-point energy.
struct TrapGeometry {
  double omega_r = 0;   // rad/s
  double omega_ax = 0;  // rad/s
  double eta = 0;       // omega_r / omega_ax
  int n = 0;
  double reduced_mass_kg = 0;
  double d_r_m = 0;   // sqrt(hbar / (mu omega_r))
  double d_ax_m = 0;  // sqrt(hbar / (mu omega_ax))
  double unit_omega = 0;
  double unit_length_m = 0;
  double unit_length_a0 = 0;
  double hbar = 0;
  double planck_h = 0;
};

inline constexpr double kDefaultEtaGate = 0.25;

TrapGeometry make_trap(double omega_r, double omega_ax, double reduced_mass_kg,
                       const PhysicalConstants& k, double eta_gate = kDefaultEtaGate);

/// Frequencies given as f = omega / 2 pi in kHz.
TrapGeometry make_trap_khz(double f_r_khz, double f_ax_khz, double reduced_mass_kg,
                           const PhysicalConstants& k, double eta_gate = kDefaultEtaGate);

/// F(x) = -2 sqrt(pi) G(x)/G(x-1/2) + sqrt(pi) G(x)/G(x+1/2) sum_{m=1}^{n-1} 2F1(1,x;x+1/2;e^{2 pi i m/n}).
double big_f(double x, int n);

/// Dimensionless relative-motion energy in units of hbar * unit_omega.
struct TrapEnergy {
  double value = 0;
  int branch = 0;
};

/// Noninteracting level that branch `branch` attaches to.
double noninteracting_energy(int branch);

/// a = -sqrt(pi) L / F(-eps/2), in a0; exactly 0 when |F| > 1e12.
double energy_to_a(const TrapEnergy& eps, const TrapGeometry& trap);

/// Solves the trapped-pair relation for eps on the given branch.
TrapEnergy a_to_energy(double a_a0, const TrapGeometry& trap, int branch = 0);

/// Conversions between the dimensionless energy and frequency units.
double energy_khz(double eps, const TrapGeometry& trap);
double energy_joule(double eps, const TrapGeometry& trap);

enum class Validity { Valid, Warning, Invalid };
std::string_view to_string(Validity v) noexcept;

struct ValidityReport {
  double ratio = 0;  // beta6 / d_r
  Validity verdict = Validity::Valid;
};

/// Valid below 0.5, warning up to 1.0, invalid beyond.
ValidityReport pseudopotential_validity(const TrapGeometry& trap, const VdwScales& scales,
                                        const PhysicalConstants& k);

}  // namespace mqdtft
