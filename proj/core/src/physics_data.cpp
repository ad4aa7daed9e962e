#include "mqdtft/physics_data.hpp"

#include <cmath>
#include <numbers>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mqdtft/error.hpp"

namespace mqdtft {
namespace {

using nlohmann::json;

constexpr char kBundledJson[] =
#include "bundled_physics_data.inc"
    ;

double positive(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorKind::Config, where + ": missing numeric '" + key + "'");
  }
  const double v = j.at(key).get<double>();
  if (!(v > 0)) throw Error(ErrorKind::Config, where + ": '" + key + "' must be positive");
  return v;
}

double constant(const json& c, const char* key) {
  if (!c.contains(key)) throw Error(ErrorKind::Config, std::string("physics data: missing constant ") + key);
  return positive(c.at(key), "value", std::string("constants/") + key);
}

HalfInt quantum_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw Error(ErrorKind::Config, where + ": expected a number");
  try {
    return HalfInt::from_double(j.get<double>());
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, where + ": " + e.what());
  }
}

}  // namespace

const Species& PhysicsData::species_named(std::string_view name) const {
  for (const auto& s : species) {
    if (s.name == name) return s;
  }
  throw Error(ErrorKind::Config, "unknown species '" + std::string(name) + "'");
}

const PairData* PhysicsData::pair_data(std::string_view first, std::string_view second) const {
  for (const auto& p : pairs) {
    if (p.first == first && p.second == second) return &p;
  }
  return nullptr;
}

PhysicsData parse_physics_data(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("physics data: ") + e.what());
  }
  if (root.value("format", "") != "mqdtft-physics-data") {
    throw Error(ErrorKind::Config, "physics data: format tag must be 'mqdtft-physics-data'");
  }

  PhysicsData data;
  data.version = root.value("version", "");
  const json& c = root.at("constants");
  auto& k = data.constants;
  k.planck_h = constant(c, "planck_h_js");
  k.hbar = k.planck_h / (2.0 * std::numbers::pi);
  k.atomic_mass_unit = constant(c, "atomic_mass_unit_kg");
  k.electron_mass = constant(c, "electron_mass_kg");
  k.bohr_radius = constant(c, "bohr_radius_m");
  k.hartree_energy = constant(c, "hartree_energy_j");

  for (const auto& s : root.at("species")) {
    Species sp;
    sp.name = s.at("name").get<std::string>();
    const std::string where = "species/" + sp.name;
    sp.mass_u = positive(s, "mass_u", where);
    sp.nuclear_spin = quantum_number(s.at("nuclear_spin"), where + "/nuclear_spin");
    if (sp.nuclear_spin.twice() < 1) {
      throw Error(ErrorKind::Config, where + ": nuclear spin must be at least 1/2");
    }
    sp.hyperfine_splitting_ghz = positive(s, "hyperfine_splitting_ghz", where);
    data.species.push_back(std::move(sp));
  }

  if (root.contains("pairs")) {
    for (const auto& p : root.at("pairs")) {
      PairData pd;
      const auto& names = p.at("species");
      pd.first = names.at(0).get<std::string>();
      pd.second = names.at(1).get<std::string>();
      const std::string where = "pairs/" + pd.first + "+" + pd.second;
      data.species_named(pd.first);
      data.species_named(pd.second);
      pd.c6_au = positive(p, "c6_au", where);
      pd.chi_phase_constant = p.value("chi_phase_constant", 0.0);
      if (p.contains("chi_defaults")) {
        for (const auto& d : p.at("chi_defaults")) {
          const auto& ch = d.at("channel");
          ChiDefault cd{quantum_number(ch.at(0), where), quantum_number(ch.at(1), where),
                        quantum_number(ch.at(2), where), quantum_number(ch.at(3), where),
                        d.at("chi").get<double>()};
          pd.chi_defaults.push_back(cd);
        }
      }
      data.pairs.push_back(std::move(pd));
    }
  }
  return data;
}

PhysicsData load_physics_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open physics data file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_physics_data(ss.str());
}

const PhysicsData& bundled_physics_data() {
  static const PhysicsData data = parse_physics_data(kBundledJson);
  return data;
}

double reduced_mass(const Species& a, const Species& b) {
  if (!(a.mass_u > 0) || !(b.mass_u > 0)) {
    throw Error(ErrorKind::InvalidArgument, "reduced_mass: masses must be positive");
  }
  return a.mass_u * b.mass_u / (a.mass_u + b.mass_u);
}

VdwScales vdw_scales(double c6_au, double reduced_mass_u, const PhysicalConstants& k) {
  if (!(c6_au > 0) || !(reduced_mass_u > 0)) {
    throw Error(ErrorKind::InvalidArgument, "vdw_scales: C6 and reduced mass must be positive");
  }
  const double mu = reduced_mass_u * k.atomic_mass_unit;
  const double c6 = c6_au * k.hartree_energy * std::pow(k.bohr_radius, 6);
  VdwScales s;
  s.c6_au = c6_au;
  s.reduced_mass_u = reduced_mass_u;
  s.beta6_m = std::pow(2.0 * mu * c6 / (k.hbar * k.hbar), 0.25);
  s.beta6_a0 = s.beta6_m / k.bohr_radius;
  s.energy_scale_j = k.hbar * k.hbar / (2.0 * mu * s.beta6_m * s.beta6_m);
  s.energy_scale_mhz = s.energy_scale_j / k.planck_h * 1e-6;
  return s;
}

double c6_from_beta6(double beta6_a0, double reduced_mass_u, const PhysicalConstants& k) {
  const double mu = reduced_mass_u * k.atomic_mass_unit;
  const double b = beta6_a0 * k.bohr_radius;
  const double c6 = std::pow(b, 4) * k.hbar * k.hbar / (2.0 * mu);
  return c6 / (k.hartree_energy * std::pow(k.bohr_radius, 6));
}

double hyperfine_threshold_ghz(const SpeciesPair& pair, HalfInt f1, HalfInt f2) {
  const auto check = [](const Species& s, HalfInt f) {
    if (f != s.lower_f() && f != s.upper_f()) {
      throw Error(ErrorKind::InvalidArgument, "F=" + f.str() + " is not a ground hyperfine level of " + s.name);
    }
  };
  check(pair.first, f1);
  check(pair.second, f2);
  double e = 0;
  if (f1 == pair.first.upper_f()) e += pair.first.hyperfine_splitting_ghz;
  if (f2 == pair.second.upper_f()) e += pair.second.hyperfine_splitting_ghz;
  return e;
}

}  // namespace mqdtft
