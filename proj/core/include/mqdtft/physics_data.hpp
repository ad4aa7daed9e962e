#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mqdtft/half_int.hpp"

namespace mqdtft {

/// SI values; hbar is derived from planck_h.
struct PhysicalConstants {
  double planck_h = 0;          // J s
  double hbar = 0;              // J s
  double atomic_mass_unit = 0;  // kg
  double electron_mass = 0;     // kg
  double bohr_radius = 0;       // m
  double hartree_energy = 0;    // J
};

/// Ground-state alkali atom: one s electron plus a nucleus of spin i.
struct Species {
  std::string name;
  double mass_u = 0;
  HalfInt nuclear_spin;
  double hyperfine_splitting_ghz = 0;

  static constexpr HalfInt electron_spin() { return kHalf; }
  HalfInt lower_f() const { return nuclear_spin - kHalf; }
  HalfInt upper_f() const { return nuclear_spin + kHalf; }
};

struct ChiDefault {
  HalfInt f1, mf1, f2, mf2;
  double chi = 0;
};

/// Data attached to an ordered pair of species (first = "atom 1").
struct PairData {
  std::string first, second;
  double c6_au = 0;
  /// Global short-range phase offset for the closed-channel reference functions.
  double chi_phase_constant = 0;
  std::vector<ChiDefault> chi_defaults;
};

struct PhysicsData {
  std::string version;
  PhysicalConstants constants;
  std::vector<Species> species;
  std::vector<PairData> pairs;

  const Species& species_named(std::string_view name) const;
  /// Null when the file carries no entry for the pair.
  const PairData* pair_data(std::string_view first, std::string_view second) const;
};

PhysicsData parse_physics_data(std::string_view json_text);
PhysicsData load_physics_data(const std::filesystem::path& path);
/// The data file shipped with the library (core/data/physics_data.json).
const PhysicsData& bundled_physics_data();

struct SpeciesPair {
  Species first;
  Species second;
};

/// Reduced mass in atomic mass units.
double reduced_mass(const Species& a, const Species& b);

struct VdwScales {
  double c6_au = 0;
  double reduced_mass_u = 0;
  double beta6_m = 0;
  double beta6_a0 = 0;
  double energy_scale_j = 0;
  double energy_scale_mhz = 0;
};

/// beta6 = (2 mu C6 / hbar^2)^(1/4), s_E = hbar^2 / (2 mu beta6^2).
VdwScales vdw_scales(double c6_au, double reduced_mass_u, const PhysicalConstants& k);

/// Inverts vdw_scales for C6 (atomic units).
double c6_from_beta6(double beta6_a0, double reduced_mass_u, const PhysicalConstants& k);

/// Zero-field threshold of the (f1, f2) hyperfine pair, measured from the
/// (lower, lower) manifold.
double hyperfine_threshold_ghz(const SpeciesPair& pair, HalfInt f1, HalfInt f2);

}  // namespace mqdtft
