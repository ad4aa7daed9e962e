#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mqdtft/angular.hpp"
#include "mqdtft/error.hpp"
#include "mqdtft/io.hpp"
#include "mqdtft/mqdt.hpp"
#include "mqdtft/shift_fit.hpp"
#include "mqdtft/trap.hpp"
#include "mqdtft/vdw.hpp"

namespace {

using namespace mqdtft;

struct Common {
  std::string config;
  std::string output;
  std::string table;
  std::optional<double> c6_au;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config, "JSON run configuration");
  cmd->add_option("-o,--output", c.output, "CSV output path");
  cmd->add_option("--table", c.table, "text table output path");
  cmd->add_option("--c6", c.c6_au, "C6 in atomic units");
}

RunConfig load(const Common& c) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : load_run_config(c.config);
  if (c.c6_au) cfg.c6_au = *c.c6_au;
  if (!c.output.empty()) cfg.output_csv = c.output;
  if (!c.table.empty()) cfg.output_table = c.table;
  return cfg;
}

void emit(const RunConfig& cfg, const std::string& text, const CsvTable& csv) {
  std::cout << text;
  if (cfg.output_table) {
    std::ofstream out(*cfg.output_table);
    if (!(out << text)) throw Error(ErrorKind::Io, "cannot write " + cfg.output_table->string());
  }
  if (cfg.output_csv) write_csv_file(*cfg.output_csv, csv);
}

std::vector<HalfInt> parse_quantum_numbers(const std::string& text, std::size_t count, const char* flag) {
  std::vector<HalfInt> out;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      const auto slash = item.find('/');
      out.push_back(slash == std::string::npos ? HalfInt::from_double(std::stod(item))
                                               : HalfInt::from_twice(std::stoi(item.substr(0, slash))));
    }
  } catch (const std::logic_error&) {
    out.clear();
  }
  if (out.size() != count) {
    throw Error(ErrorKind::Config, std::string(flag) + ": expected " + std::to_string(count) +
                                       " comma-separated angular momentum values");
  }
  return out;
}

int run_channels(const Common& common, const std::string& m_text) {
  const RunConfig cfg = load(common);
  const Session s = make_session(cfg);
  const HalfInt m = parse_quantum_numbers(m_text, 1, "--m")[0];
  const ChannelSpace space = build_channel_space(s.pair, m);
  CsvTable csv{{"f1", "mf1", "f2", "mf2", "threshold_ghz"}, {}};
  for (std::size_t a = 0; a < space.eigen.size(); ++a) csv.columns.push_back("u" + std::to_string(a));
  for (std::size_t i = 0; i < space.frag.size(); ++i) {
    const auto& c = space.frag[i];
    std::vector<double> row{c.f1.value(), c.mf1.value(), c.f2.value(), c.mf2.value(), c.threshold_ghz};
    for (Eigen::Index a = 0; a < space.u.cols(); ++a) row.push_back(space.u(static_cast<Eigen::Index>(i), a));
    csv.rows.push_back(row);
  }
  emit(cfg, format_channel_space(space), csv);
  return 0;
}

struct SlFlags {
  std::string entrance;
  std::optional<double> mu_s, mu_t, mu_t_es;
  std::string policy;
  bool compute_chi = false;
};

int run_scattering_length(const Common& common, const SlFlags& f) {
  RunConfig cfg = load(common);
  if (!f.policy.empty()) {
    if (f.policy == "threshold-rank") {
      cfg.classification.policy = ClassificationPolicy::ThresholdRank;
    } else if (f.policy == "turning-point") {
      cfg.classification.policy = ClassificationPolicy::TurningPoint;
    } else {
      throw Error(ErrorKind::Config, "--policy: expected threshold-rank or turning-point");
    }
  }
  if (f.compute_chi) cfg.chi_use_defaults = false;
  if (f.mu_s || f.mu_t || !f.entrance.empty()) {
    if (!f.mu_s || !f.mu_t) throw Error(ErrorKind::Config, "--mu-s and --mu-t are both required for a row");
    DefectRow row;
    const auto q = parse_quantum_numbers(f.entrance.empty() ? "1,-1,3,-3" : f.entrance, 4, "--entrance");
    row.entrance = {q[0], q[1], q[2], q[3], 0.0};
    row.defects = DefectSet::make(*f.mu_s, *f.mu_t, f.mu_t_es);
    cfg.rows = {row};
  }
  if (cfg.rows.empty()) throw Error(ErrorKind::Config, "/scattering_length/rows: no rows to compute");
  const Session s = make_session(cfg);
  std::vector<TableRowResult> results;
  for (const auto& row : cfg.rows) {
    try {
      const auto r = channel_scattering_length(s.pair, row.entrance, row.defects, s.classification, s.chi,
                                               s.scales, s.data.constants);
      results.push_back({row, r.a_a0});
    } catch (const Error& e) {
      throw Error(e.kind(), "channel " + row.entrance.short_label() + ": " + e.what());
    }
  }
  emit(cfg, format_scattering_table(results), scattering_table_csv(results));
  return 0;
}

struct ChiFlags {
  std::vector<double> gaps_ghz;
  std::vector<double> energies;
  std::optional<double> calibrate;
  std::optional<double> phase_constant;
};

int run_chi(const Common& common, const ChiFlags& f) {
  RunConfig cfg = load(common);
  if (f.phase_constant) cfg.chi_phase_constant = *f.phase_constant;
  if (!f.gaps_ghz.empty()) cfg.chi_gaps_ghz = f.gaps_ghz;
  const Session s = make_session(cfg);
  std::vector<ScaledEnergy> energies;
  for (double g : cfg.chi_gaps_ghz) energies.push_back(scaled_energy(g, s.scales, s.data.constants));
  for (double e : f.energies) energies.push_back({e, std::abs(e) * s.scales.energy_scale_mhz * 1e-3});
  if (energies.empty()) throw Error(ErrorKind::Config, "chi: give --gap or --energy (or /chi/gaps_ghz)");

  std::ostringstream os;
  os << "beta6_a0       " << fixed(s.scales.beta6_a0, 4) << '\n';
  os << "sE_MHz         " << fixed(s.scales.energy_scale_mhz, 6) << '\n';
  os << "phase_constant " << s.chi.numeric.phase_constant << '\n';
  if (f.calibrate) {
    const double c = calibrate_phase_constant(energies.front(), *f.calibrate, s.chi.numeric);
    std::ostringstream cs;
    cs.precision(17);
    cs << c;
    os << "calibrated     " << cs.str() << "  (chi = " << *f.calibrate << " at gap "
       << fixed(energies.front().gap_ghz, 6) << " GHz)\n";
  }
  os << "     gap_GHz       energy            chi     chi_second  wronskian_drift  sensitivity\n";
  CsvTable csv{{"gap_ghz", "scaled_energy", "chi", "chi_second", "wronskian_drift", "matching_sensitivity"}, {}};
  for (const auto& e : energies) {
    const ChiResult r = chi_c(e, s.chi.numeric);
    char line[200];
    std::snprintf(line, sizeof line, "%12.6f %13.4f %14.8f %14.8f %16.2e %12.2e\n", e.gap_ghz, e.value, r.chi,
                  r.chi_second, r.wronskian_drift, r.matching_sensitivity);
    os << line;
    csv.rows.push_back({e.gap_ghz, e.value, r.chi, r.chi_second, r.wronskian_drift, r.matching_sensitivity});
  }
  emit(cfg, os.str(), csv);
  return 0;
}

struct TrapFlags {
  std::optional<double> f_r, f_ax;
  std::vector<double> a;
  std::optional<int> branch;
};

int run_trap_levels(const Common& common, const TrapFlags& f) {
  RunConfig cfg = load(common);
  if (f.f_r) cfg.trap_f_r_khz = *f.f_r;
  if (f.f_ax) cfg.trap_f_ax_khz = *f.f_ax;
  if (!f.a.empty()) cfg.trap_a_a0 = f.a;
  if (f.branch) cfg.trap_branch = *f.branch;
  if (!cfg.trap_f_r_khz || !cfg.trap_f_ax_khz) {
    throw Error(ErrorKind::Config, "trap-levels: --f-r and --f-ax (kHz) are required");
  }
  if (cfg.trap_a_a0.empty()) throw Error(ErrorKind::Config, "trap-levels: give at least one --a");
  const Session s = make_session(cfg);
  const double mu = reduced_mass(s.pair.first, s.pair.second) * s.data.constants.atomic_mass_unit;
  const TrapGeometry trap = make_trap_khz(*cfg.trap_f_r_khz, *cfg.trap_f_ax_khz, mu, s.data.constants, cfg.eta_gate);
  const ValidityReport v = pseudopotential_validity(trap, s.scales, s.data.constants);
  std::ostringstream os;
  os << "eta            " << fixed(trap.eta, 6) << "  (n = " << trap.n << ")\n";
  os << "d_r_a0         " << fixed(trap.d_r_m / s.data.constants.bohr_radius, 1) << '\n';
  os << "unit_length_a0 " << fixed(trap.unit_length_a0, 1) << '\n';
  os << "beta6/d_r      " << fixed(v.ratio, 3) << "  " << to_string(v.verdict) << '\n';
  os << "     a_a0       epsilon   shift_kHz\n";
  CsvTable csv{{"a_a0", "branch", "epsilon", "epsilon_khz", "shift_khz"}, {}};
  const double e0 = noninteracting_energy(cfg.trap_branch);
  for (double a : cfg.trap_a_a0) {
    const TrapEnergy e = a_to_energy(a, trap, cfg.trap_branch);
    const double shift = energy_khz(e.value - e0, trap);
    char line[160];
    std::snprintf(line, sizeof line, "%9.1f %13.8f %11.2f\n", a, e.value, shift);
    os << line;
    csv.rows.push_back({a, static_cast<double>(e.branch), e.value, energy_khz(e.value, trap), shift});
  }
  emit(cfg, os.str(), csv);
  return 0;
}

struct CurveFlags {
  std::optional<double> eta;
  std::vector<double> f_ax;
  bool synthesize = false;
  std::optional<double> a_true, sigma;
  std::optional<std::uint64_t> seed;
};

int run_shift_curve(const Common& common, const CurveFlags& f) {
  RunConfig cfg = load(common);
  if (f.eta) cfg.sweep_eta = *f.eta;
  if (!f.f_ax.empty()) cfg.sweep_f_ax_khz = f.f_ax;
  if (!cfg.transition) throw Error(ErrorKind::Config, "/transition: required for shift-curve");
  if (cfg.sweep_f_ax_khz.empty()) {
    if (!cfg.trap_f_ax_khz) throw Error(ErrorKind::Config, "/sweep/f_ax_khz: no axial frequencies given");
    cfg.sweep_f_ax_khz = {*cfg.trap_f_ax_khz};
  }
  const Session s = make_session(cfg);
  const SweepSettings sweep = make_sweep(s, cfg);

  if (f.synthesize) {
    SynthesisConfig syn = cfg.synthesize.value_or(SynthesisConfig{});
    if (f.a_true) syn.a_true_a0 = *f.a_true;
    if (f.sigma) syn.sigma_khz = *f.sigma;
    if (f.seed) syn.seed = *f.seed;
    if (!cfg.synthesize && !f.a_true) throw Error(ErrorKind::Config, "--synthesize needs --a-true");
    const TransitionSpec t = make_transition(s, *cfg.transition);
    const auto data = synthesize_measurements(t, sweep, cfg.sweep_f_ax_khz, syn.a_true_a0, syn.sigma_khz, syn.seed);
    std::ostringstream os;
    write_measurements(os, data);
    std::cout << os.str();
    if (cfg.output_csv) {
      std::ofstream out(*cfg.output_csv);
      if (!(out << os.str())) throw Error(ErrorKind::Io, "cannot write " + cfg.output_csv->string());
    }
    return 0;
  }

  TransitionSpec t = make_transition(s, *cfg.transition);
  std::optional<double> fill = f.a_true;
  if (!fill && cfg.synthesize) fill = cfg.synthesize->a_true_a0;
  if (fill && !t.a_initial_a0) t.a_initial_a0 = fill;
  if (fill && !t.a_final_a0) t.a_final_a0 = fill;
  const auto curve = shift_curve(t, cfg.sweep_f_ax_khz, sweep);
  emit(cfg, format_curve(curve, sweep.eta), curve_csv(curve, sweep.eta));
  for (const auto& p : curve) {
    if (!p.error.empty()) return 1;
  }
  return 0;
}

struct FitFlags {
  std::string measurements;
  std::optional<double> default_sigma;
  std::optional<double> eta;
};

int run_fit(const Common& common, const FitFlags& f) {
  RunConfig cfg = load(common);
  if (!f.measurements.empty()) cfg.measurements = f.measurements;
  if (f.default_sigma) cfg.default_sigma_khz = *f.default_sigma;
  if (f.eta) cfg.sweep_eta = *f.eta;
  if (!cfg.transition) throw Error(ErrorKind::Config, "/transition: required for fit");
  if (!cfg.measurements) throw Error(ErrorKind::Config, "/fit/measurements: no measurement file given");
  const Session s = make_session(cfg);
  const SweepSettings sweep = make_sweep(s, cfg);
  const TransitionSpec t = make_transition(s, *cfg.transition);
  const auto data = read_measurements(*cfg.measurements, cfg.default_sigma_khz);
  const FitResult r = fit_scattering_length(data, t, sweep, cfg.fit);
  emit(cfg, format_fit(r, data), fit_csv(r));
  return 0;
}

void report(std::string_view kind, std::string_view message) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame-transformed MQDT scattering lengths and trapped-pair collisional shifts"};
  app.require_subcommand(1);

  Common common;
  std::string m_text = "-4";
  auto* channels = app.add_subcommand("channels", "list fragmentation channels, eigenchannels and U");
  add_common(channels, common);
  channels->add_option("--m", m_text, "total projection M, e.g. -4 or -7/2");

  SlFlags sl;
  auto* sl_cmd = app.add_subcommand("scattering-length", "scattering lengths in the table layout");
  add_common(sl_cmd, common);
  sl_cmd->add_option("--entrance", sl.entrance, "entrance channel F1,mF1,F2,mF2");
  sl_cmd->add_option("--mu-s", sl.mu_s, "singlet quantum defect");
  sl_cmd->add_option("--mu-t", sl.mu_t, "triplet quantum defect (EI)");
  sl_cmd->add_option("--mu-t-es", sl.mu_t_es, "triplet quantum defect for ES eigenchannels");
  sl_cmd->add_option("--policy", sl.policy, "threshold-rank or turning-point");
  sl_cmd->add_flag("--compute-chi", sl.compute_chi, "ignore bundled chi values and compute them");

  ChiFlags chi;
  auto* chi_cmd = app.add_subcommand("chi", "closed-channel chi^c(E) for the -C6/R^6 potential");
  add_common(chi_cmd, common);
  chi_cmd->add_option("--gap", chi.gaps_ghz, "energy gap below the closed threshold, GHz");
  chi_cmd->add_option("--energy", chi.energies, "scaled energy E/s_E (negative)");
  chi_cmd->add_option("--calibrate", chi.calibrate, "print the phase constant giving this chi at the first gap");
  chi_cmd->add_option("--phase-constant", chi.phase_constant, "short-range phase constant");

  TrapFlags trap;
  auto* trap_cmd = app.add_subcommand("trap-levels", "trapped-pair energies for given scattering lengths");
  add_common(trap_cmd, common);
  trap_cmd->add_option("--f-r", trap.f_r, "radial trap frequency, kHz");
  trap_cmd->add_option("--f-ax", trap.f_ax, "axial trap frequency, kHz");
  trap_cmd->add_option("--a", trap.a, "scattering length, a0");
  trap_cmd->add_option("--branch", trap.branch, "branch index (0 = ground)");

  CurveFlags curve;
  auto* curve_cmd = app.add_subcommand("shift-curve", "collisional shift versus axial trap frequency");
  add_common(curve_cmd, common);
  curve_cmd->add_option("--eta", curve.eta, "omega_r / omega_ax");
  curve_cmd->add_option("--f-ax", curve.f_ax, "axial trap frequencies, kHz");
  curve_cmd->add_flag("--synthesize", curve.synthesize, "emit synthetic measurements instead of a curve");
  curve_cmd->add_option("--a-true", curve.a_true, "scattering length used to synthesize, a0");
  curve_cmd->add_option("--sigma", curve.sigma, "synthetic noise, kHz");
  curve_cmd->add_option("--seed", curve.seed, "random seed");

  FitFlags fit;
  auto* fit_cmd = app.add_subcommand("fit", "least-squares fit of the unknown scattering length");
  add_common(fit_cmd, common);
  fit_cmd->add_option("--measurements", fit.measurements, "measurement CSV");
  fit_cmd->add_option("--default-sigma", fit.default_sigma, "sigma for CSVs without a sigma column, kHz");
  fit_cmd->add_option("--eta", fit.eta, "omega_r / omega_ax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report("usage", e.what());
    return 64;
  }

  try {
    if (channels->parsed()) return run_channels(common, m_text);
    if (sl_cmd->parsed()) return run_scattering_length(common, sl);
    if (chi_cmd->parsed()) return run_chi(common, chi);
    if (trap_cmd->parsed()) return run_trap_levels(common, trap);
    if (curve_cmd->parsed()) return run_shift_curve(common, curve);
    if (fit_cmd->parsed()) return run_fit(common, fit);
  } catch (const Error& e) {
    report(to_string(e.kind()), e.what());
    return 2;
  } catch (const std::exception& e) {
    report("internal", e.what());
    return 3;
  }
  return 0;
}
