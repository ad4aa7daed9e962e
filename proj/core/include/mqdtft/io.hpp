#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqdtft/mqdt.hpp"
#include "mqdtft/physics_data.hpp"
#include "mqdtft/shift_fit.hpp"
#include "mqdtft/trap.hpp"
#include "mqdtft/vdw.hpp"

namespace mqdtft {

struct DefectRow {
  FragChannel entrance;
  DefectSet defects;
  std::optional<double> a_exp_a0;
  std::optional<double> a_cc_a0;
};

struct TransitionConfig {
  std::string interrogated;
  HyperfineState initial, final_state, spectator;
  std::optional<double> a_initial_a0;
  std::optional<double> a_final_a0;
};

struct SynthesisConfig {
  double a_true_a0 = 0;
  double sigma_khz = 0;
  std::uint64_t seed = 0;
};

/// Parsed run configuration. Relative paths are already resolved against the
/// directory of the configuration file.
struct RunConfig {
  std::string first = "Rb87";
  std::string second = "Rb85";
  std::optional<std::filesystem::path> physics_data;
  std::optional<double> c6_au;

  ClassificationOptions classification;

  bool chi_use_defaults = true;
  bool chi_compute_missing = true;
  std::optional<double> chi_phase_constant;
  std::vector<ChiOverride> chi_values;
  ChiOptions chi_numeric;
  std::vector<double> chi_gaps_ghz;

  std::vector<DefectRow> rows;

  std::optional<double> trap_f_r_khz;
  std::optional<double> trap_f_ax_khz;
  double eta_gate = kDefaultEtaGate;
  std::vector<double> trap_a_a0;
  int trap_branch = 0;

  std::optional<TransitionConfig> transition;

  std::optional<double> sweep_eta;
  std::vector<double> sweep_f_ax_khz;
  bool check_validity = true;

  std::optional<std::filesystem::path> measurements;
  std::optional<double> default_sigma_khz;
  FitOptions fit;

  std::optional<SynthesisConfig> synthesize;

  std::optional<std::filesystem::path> output_csv;
  std::optional<std::filesystem::path> output_table;
};

/// Config errors name the offending JSON pointer, e.g. "/trap/f_r_khz".
RunConfig parse_run_config(std::string_view json_text,
                           const std::filesystem::path& base_dir = std::filesystem::path());
RunConfig load_run_config(const std::filesystem::path& path);

/// Everything derived once from a config: data, species, scales, chi settings.
struct Session {
  PhysicsData data;
  SpeciesPair pair;
  double c6_au = 0;
  VdwScales scales;
  ChiSettings chi;
  ClassificationOptions classification;
};

Session make_session(const RunConfig& cfg);

TransitionSpec make_transition(const Session& s, const TransitionConfig& t);
SweepSettings make_sweep(const Session& s, const RunConfig& cfg);

/// Numeric CSV: one header line, comma separated, round-trip precision.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);
void write_csv_file(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv_file(const std::filesystem::path& path);

/// Fixed-point text with `decimals` digits; "nan" for NaN.
std::string fixed(double value, int decimals);

struct TableRowResult {
  DefectRow row;
  double a_a0 = 0;
};

/// Text table laid out like the published tables (a to 0.1 a0, defects to 4 decimals).
std::string format_scattering_table(const std::vector<TableRowResult>& rows);
CsvTable scattering_table_csv(const std::vector<TableRowResult>& rows);

std::string format_curve(const std::vector<CurvePoint>& curve, double eta);
CsvTable curve_csv(const std::vector<CurvePoint>& curve, double eta);

std::string format_fit(const FitResult& fit, const std::vector<Measurement>& data);
CsvTable fit_csv(const FitResult& fit);

}  // namespace mqdtft
