#include "mqdtft/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mqdtft/error.hpp"

namespace mqdtft {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Config, (where.empty() ? std::string("/") : where) + ": " + what);
}

// Object view that remembers its JSON pointer and the keys it recognizes.
class Obj {
 public:
  Obj(const json& j, std::string path, std::initializer_list<std::string_view> keys) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
    std::set<std::string_view> allowed(keys);
    for (const auto& [k, v] : j_.items()) {
      if (!allowed.count(k)) fail(path_ + "/" + k, "unknown key");
    }
  }
  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  const json& at(const char* key) const { return j_.at(key); }
  std::string path(const char* key) const { return path_ + "/" + key; }

  std::optional<double> number(const char* key) const {
    if (!has(key)) return std::nullopt;
    if (!at(key).is_number()) fail(path(key), "expected a number");
    const double v = at(key).get<double>();
    if (!std::isfinite(v)) fail(path(key), "must be finite");
    return v;
  }
  std::optional<bool> boolean(const char* key) const {
    if (!has(key)) return std::nullopt;
    if (!at(key).is_boolean()) fail(path(key), "expected true or false");
    return at(key).get<bool>();
  }
  std::optional<std::string> string(const char* key) const {
    if (!has(key)) return std::nullopt;
    if (!at(key).is_string()) fail(path(key), "expected a string");
    return at(key).get<std::string>();
  }
  std::optional<std::int64_t> integer(const char* key) const {
    if (!has(key)) return std::nullopt;
    if (!at(key).is_number_integer()) fail(path(key), "expected an integer");
    return at(key).get<std::int64_t>();
  }
  std::vector<double> numbers(const char* key) const {
    std::vector<double> out;
    if (!has(key)) return out;
    if (!at(key).is_array()) fail(path(key), "expected an array of numbers");
    for (std::size_t i = 0; i < at(key).size(); ++i) {
      const auto& v = at(key)[i];
      if (!v.is_number()) fail(path(key) + "/" + std::to_string(i), "expected a number");
      out.push_back(v.get<double>());
    }
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

HalfInt half_int(const json& v, const std::string& where) {
  try {
    if (v.is_number()) return HalfInt::from_double(v.get<double>());
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      const auto slash = s.find('/');
      if (slash == std::string::npos) return HalfInt::from_double(std::stod(s));
      if (s.substr(slash + 1) != "2") fail(where, "expected an integer or a half-integer like \"3/2\"");
      return HalfInt::from_twice(std::stoi(s.substr(0, slash)));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
  }
  fail(where, "expected an integer or a half-integer");
}

std::vector<HalfInt> quantum_numbers(const json& v, const std::string& where, std::size_t count) {
  if (!v.is_array() || v.size() != count) {
    fail(where, "expected an array of " + std::to_string(count) + " angular momentum values");
  }
  std::vector<HalfInt> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(half_int(v[i], where + "/" + std::to_string(i)));
  return out;
}

FragChannel channel_of(const json& v, const std::string& where) {
  const auto q = quantum_numbers(v, where, 4);
  return {q[0], q[1], q[2], q[3], 0.0};
}

HyperfineState state_of(const json& v, const std::string& where) {
  const auto q = quantum_numbers(v, where, 2);
  return {q[0], q[1]};
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

void parse_classification(const json& j, RunConfig& cfg) {
  Obj o(j, "/classification", {"policy", "turning_radius_a0", "tie_tolerance", "overrides"});
  if (auto p = o.string("policy")) {
    if (*p == "threshold-rank") {
      cfg.classification.policy = ClassificationPolicy::ThresholdRank;
    } else if (*p == "turning-point") {
      cfg.classification.policy = ClassificationPolicy::TurningPoint;
    } else {
      fail(o.path("policy"), "expected \"threshold-rank\" or \"turning-point\"");
    }
  }
  if (auto v = o.number("turning_radius_a0")) cfg.classification.turning_radius_a0 = *v;
  if (auto v = o.number("tie_tolerance")) cfg.classification.tie_tolerance = *v;
  if (o.has("overrides")) {
    const auto& arr = o.at("overrides");
    if (!arr.is_array()) fail(o.path("overrides"), "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = o.path("overrides") + "/" + std::to_string(i);
      Obj e(arr[i], where, {"eigenchannel", "class"});
      if (!e.has("eigenchannel") || !e.has("class")) fail(where, "needs \"eigenchannel\" and \"class\"");
      const auto q = quantum_numbers(e.at("eigenchannel"), e.path("eigenchannel"), 4);
      const auto cls = *e.string("class");
      if (cls != "EI" && cls != "ES") fail(e.path("class"), "expected \"EI\" or \"ES\"");
      cfg.classification.overrides.push_back(
          {{q[0], q[1], q[2], q[3]}, cls == "ES" ? DefectClass::EnergySensitive : DefectClass::EnergyInsensitive});
    }
  }
}

void parse_chi(const json& j, RunConfig& cfg) {
  Obj o(j, "/chi", {"use_defaults", "compute_missing", "phase_constant", "values", "numeric", "gaps_ghz"});
  if (auto v = o.boolean("use_defaults")) cfg.chi_use_defaults = *v;
  if (auto v = o.boolean("compute_missing")) cfg.chi_compute_missing = *v;
  cfg.chi_phase_constant = o.number("phase_constant");
  cfg.chi_gaps_ghz = o.numbers("gaps_ghz");
  if (o.has("values")) {
    const auto& arr = o.at("values");
    if (!arr.is_array()) fail(o.path("values"), "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = o.path("values") + "/" + std::to_string(i);
      Obj e(arr[i], where, {"channel", "chi"});
      if (!e.has("channel") || !e.has("chi")) fail(where, "needs \"channel\" and \"chi\"");
      const auto c = channel_of(e.at("channel"), e.path("channel"));
      cfg.chi_values.push_back({c.f1, c.mf1, c.f2, c.mf2, *e.number("chi")});
    }
  }
  if (o.has("numeric")) {
    Obj n(o.at("numeric"), o.path("numeric"),
          {"r_start", "step_tolerance", "matching_factor", "second_matching_factor", "decay_lengths",
           "max_matching_drift"});
    auto& opt = cfg.chi_numeric;
    if (auto v = n.number("r_start")) opt.r_start = *v;
    if (auto v = n.number("step_tolerance")) opt.step_tolerance = *v;
    if (auto v = n.number("matching_factor")) opt.matching_factor = *v;
    if (auto v = n.number("second_matching_factor")) opt.second_matching_factor = *v;
    if (auto v = n.number("decay_lengths")) opt.decay_lengths = *v;
    if (auto v = n.number("max_matching_drift")) opt.max_matching_drift = *v;
  }
}

void parse_rows(const json& j, RunConfig& cfg) {
  Obj o(j, "/scattering_length", {"rows"});
  if (!o.has("rows")) return;
  const auto& arr = o.at("rows");
  if (!arr.is_array()) fail(o.path("rows"), "expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = o.path("rows") + "/" + std::to_string(i);
    Obj r(arr[i], where, {"entrance", "mu_s", "mu_t", "mu_t_es", "a_exp", "a_cc"});
    if (!r.has("entrance") || !r.has("mu_s") || !r.has("mu_t")) {
      fail(where, "needs \"entrance\", \"mu_s\" and \"mu_t\"");
    }
    DefectRow row;
    row.entrance = channel_of(r.at("entrance"), r.path("entrance"));
    row.defects = DefectSet::make(*r.number("mu_s"), *r.number("mu_t"), r.number("mu_t_es"));
    row.a_exp_a0 = r.number("a_exp");
    row.a_cc_a0 = r.number("a_cc");
    cfg.rows.push_back(row);
  }
}

void parse_trap(const json& j, RunConfig& cfg) {
  Obj o(j, "/trap", {"f_r_khz", "f_ax_khz", "eta_gate", "a_a0", "branch"});
  cfg.trap_f_r_khz = o.number("f_r_khz");
  cfg.trap_f_ax_khz = o.number("f_ax_khz");
  if (auto v = o.number("eta_gate")) cfg.eta_gate = *v;
  cfg.trap_a_a0 = o.numbers("a_a0");
  if (auto v = o.integer("branch")) {
    if (*v < 0) fail(o.path("branch"), "must be non-negative");
    cfg.trap_branch = static_cast<int>(*v);
  }
}

void parse_transition(const json& j, RunConfig& cfg) {
  Obj o(j, "/transition", {"interrogated", "initial", "final", "spectator", "a_initial_a0", "a_final_a0"});
  for (const char* k : {"interrogated", "initial", "final", "spectator"}) {
    if (!o.has(k)) fail(o.path(k), "required");
  }
  TransitionConfig t;
  t.interrogated = *o.string("interrogated");
  t.initial = state_of(o.at("initial"), o.path("initial"));
  t.final_state = state_of(o.at("final"), o.path("final"));
  t.spectator = state_of(o.at("spectator"), o.path("spectator"));
  t.a_initial_a0 = o.number("a_initial_a0");
  t.a_final_a0 = o.number("a_final_a0");
  cfg.transition = t;
}

void parse_sweep(const json& j, RunConfig& cfg) {
  Obj o(j, "/sweep", {"eta", "f_ax_khz", "start_khz", "stop_khz", "points", "check_validity"});
  cfg.sweep_eta = o.number("eta");
  cfg.sweep_f_ax_khz = o.numbers("f_ax_khz");
  if (auto v = o.boolean("check_validity")) cfg.check_validity = *v;
  const bool range = o.has("start_khz") || o.has("stop_khz") || o.has("points");
  if (range) {
    if (!cfg.sweep_f_ax_khz.empty()) fail("/sweep", "give either \"f_ax_khz\" or a start/stop/points range");
    const auto a = o.number("start_khz");
    const auto b = o.number("stop_khz");
    const auto n = o.integer("points");
    if (!a || !b || !n) fail("/sweep", "a range needs \"start_khz\", \"stop_khz\" and \"points\"");
    if (*n < 2) fail(o.path("points"), "must be at least 2");
    for (std::int64_t i = 0; i < *n; ++i) {
      cfg.sweep_f_ax_khz.push_back(*a + (*b - *a) * static_cast<double>(i) / static_cast<double>(*n - 1));
    }
  }
}

void parse_fit(const json& j, RunConfig& cfg, const std::filesystem::path& base) {
  Obj o(j, "/fit", {"measurements", "default_sigma_khz", "a_min_a0", "a_max_a0", "scan_points", "tolerance_a0"});
  if (auto p = o.string("measurements")) cfg.measurements = resolve(base, *p);
  cfg.default_sigma_khz = o.number("default_sigma_khz");
  if (auto v = o.number("a_min_a0")) cfg.fit.a_min_a0 = *v;
  if (auto v = o.number("a_max_a0")) cfg.fit.a_max_a0 = *v;
  if (auto v = o.integer("scan_points")) cfg.fit.scan_points = static_cast<int>(*v);
  if (auto v = o.number("tolerance_a0")) cfg.fit.tolerance_a0 = *v;
}

void parse_synthesize(const json& j, RunConfig& cfg) {
  Obj o(j, "/synthesize", {"a_true_a0", "sigma_khz", "seed"});
  if (!o.has("a_true_a0")) fail(o.path("a_true_a0"), "required");
  SynthesisConfig s;
  s.a_true_a0 = *o.number("a_true_a0");
  s.sigma_khz = o.number("sigma_khz").value_or(0.0);
  if (auto v = o.integer("seed")) s.seed = static_cast<std::uint64_t>(*v);
  cfg.synthesize = s;
}

std::string cell(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
  Obj root(j, "", {"pair", "physics_data", "c6_au", "classification", "chi", "scattering_length", "trap",
                   "transition", "sweep", "fit", "synthesize", "output"});
  RunConfig cfg;
  if (root.has("pair")) {
    const auto& p = root.at("pair");
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      fail("/pair", "expected two species names");
    }
    cfg.first = p[0].get<std::string>();
    cfg.second = p[1].get<std::string>();
  }
  if (auto p = root.string("physics_data")) cfg.physics_data = resolve(base_dir, *p);
  cfg.c6_au = root.number("c6_au");
  if (cfg.c6_au && !(*cfg.c6_au > 0)) fail("/c6_au", "must be positive");
  if (root.has("classification")) parse_classification(root.at("classification"), cfg);
  if (root.has("chi")) parse_chi(root.at("chi"), cfg);
  if (root.has("scattering_length")) parse_rows(root.at("scattering_length"), cfg);
  if (root.has("trap")) parse_trap(root.at("trap"), cfg);
  if (root.has("transition")) parse_transition(root.at("transition"), cfg);
  if (root.has("sweep")) parse_sweep(root.at("sweep"), cfg);
  if (root.has("fit")) parse_fit(root.at("fit"), cfg, base_dir);
  if (root.has("synthesize")) parse_synthesize(root.at("synthesize"), cfg);
  if (root.has("output")) {
    Obj o(root.at("output"), "/output", {"csv", "table"});
    if (auto p = o.string("csv")) cfg.output_csv = resolve(base_dir, *p);
    if (auto p = o.string("table")) cfg.output_table = resolve(base_dir, *p);
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.parent_path());
}

Session make_session(const RunConfig& cfg) {
  Session s;
  s.data = cfg.physics_data ? load_physics_data(*cfg.physics_data) : bundled_physics_data();
  s.pair = {s.data.species_named(cfg.first), s.data.species_named(cfg.second)};
  const PairData* pd = s.data.pair_data(cfg.first, cfg.second);
  if (cfg.c6_au) {
    s.c6_au = *cfg.c6_au;
  } else if (pd) {
    s.c6_au = pd->c6_au;
  } else {
    throw Error(ErrorKind::Config, "/c6_au: no C6 in the physics data for " + cfg.first + "+" + cfg.second);
  }
  s.scales = vdw_scales(s.c6_au, reduced_mass(s.pair.first, s.pair.second), s.data.constants);

  s.chi.compute_missing = cfg.chi_compute_missing;
  s.chi.numeric = cfg.chi_numeric;
  s.chi.numeric.phase_constant = cfg.chi_phase_constant.value_or(pd ? pd->chi_phase_constant : 0.0);
  s.chi.configured = cfg.chi_values;
  if (cfg.chi_use_defaults && pd) {
    for (const auto& d : pd->chi_defaults) {
      const bool overridden = std::any_of(cfg.chi_values.begin(), cfg.chi_values.end(), [&](const ChiOverride& o) {
        return o.f1 == d.f1 && o.mf1 == d.mf1 && o.f2 == d.f2 && o.mf2 == d.mf2;
      });
      if (!overridden) s.chi.configured.push_back({d.f1, d.mf1, d.f2, d.mf2, d.chi});
    }
  }

  s.classification = cfg.classification;
  s.classification.c6_au = s.c6_au;
  s.classification.hartree_ghz = s.data.constants.hartree_energy / s.data.constants.planck_h * 1e-9;
  return s;
}

TransitionSpec make_transition(const Session& s, const TransitionConfig& t) {
  int which = -1;
  if (t.interrogated == s.pair.first.name) which = 0;
  if (t.interrogated == s.pair.second.name) which = 1;
  if (which < 0) fail("/transition/interrogated", "\"" + t.interrogated + "\" is not in the pair");
  return make_transition(s.pair, which, t.initial, t.final_state, t.spectator, t.a_initial_a0, t.a_final_a0);
}

SweepSettings make_sweep(const Session& s, const RunConfig& cfg) {
  SweepSettings w;
  if (cfg.sweep_eta) {
    w.eta = *cfg.sweep_eta;
  } else if (cfg.trap_f_r_khz && cfg.trap_f_ax_khz) {
    w.eta = *cfg.trap_f_r_khz / *cfg.trap_f_ax_khz;
  } else {
    fail("/sweep/eta", "required (or give /trap/f_r_khz and /trap/f_ax_khz)");
  }
  w.reduced_mass_kg = reduced_mass(s.pair.first, s.pair.second) * s.data.constants.atomic_mass_unit;
  w.constants = s.data.constants;
  w.eta_gate = cfg.eta_gate;
  if (cfg.check_validity) w.scales = s.scales;
  return w;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw Error(ErrorKind::InvalidArgument, "write_csv: ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell(row[c]);
    out << '\n';
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  int line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line);
    if (t.columns.empty()) {
      t.columns = fields;
      continue;
    }
    if (fields.size() != t.columns.size()) {
      throw Error(ErrorKind::Io, "csv line " + std::to_string(line_no) + ": wrong number of fields");
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      double v = 0;
      if (f == "nan") {
        v = std::numeric_limits<double>::quiet_NaN();
      } else {
        const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (ec != std::errc() || ptr != f.data() + f.size()) {
          throw Error(ErrorKind::Io, "csv line " + std::to_string(line_no) + ": bad number '" + f + "'");
        }
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw Error(ErrorKind::Io, "csv: missing header");
  return t;
}

void write_csv_file(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_csv(out, table);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_csv(in);
}

std::string fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  // No negative zero in printed tables.
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string format_scattering_table(const std::vector<TableRowResult>& rows) {
  bool es = false;
  bool exp = false;
  bool cc = false;
  for (const auto& r : rows) {
    es = es || r.row.defects.mu_triplet_es.has_value();
    exp = exp || r.row.a_exp_a0.has_value();
    cc = cc || r.row.a_cc_a0.has_value();
  }
  std::ostringstream os;
  os << pad("channel", 10) << pad("mu_s", 9) << pad("mu_t", 9);
  if (es) os << pad("mu_t_ES", 9);
  os << pad("a_MQDT-FT", 11);
  if (exp) os << pad("a_exp", 9);
  if (cc) os << pad("a_CC", 9);
  os << '\n';
  for (const auto& r : rows) {
    os << pad(r.row.entrance.short_label(), 10) << pad(fixed(r.row.defects.mu_singlet, 4), 9)
       << pad(fixed(r.row.defects.mu_triplet, 4), 9);
    if (es) os << pad(r.row.defects.mu_triplet_es ? fixed(*r.row.defects.mu_triplet_es, 4) : "-", 9);
    os << pad(fixed(r.a_a0, 1), 11);
    if (exp) os << pad(r.row.a_exp_a0 ? fixed(*r.row.a_exp_a0, 1) : "-", 9);
    if (cc) os << pad(r.row.a_cc_a0 ? fixed(*r.row.a_cc_a0, 1) : "-", 9);
    os << '\n';
  }
  return os.str();
}

CsvTable scattering_table_csv(const std::vector<TableRowResult>& rows) {
  CsvTable t{{"f1", "mf1", "f2", "mf2", "mu_s", "mu_t", "mu_t_es", "a_a0"}, {}};
  for (const auto& r : rows) {
    const auto& c = r.row.entrance;
    t.rows.push_back({c.f1.value(), c.mf1.value(), c.f2.value(), c.mf2.value(), r.row.defects.mu_singlet,
                      r.row.defects.mu_triplet, r.row.defects.triplet_es(), r.a_a0});
  }
  return t;
}

std::string format_curve(const std::vector<CurvePoint>& curve, double eta) {
  std::ostringstream os;
  os << pad("f_ax_kHz", 10) << pad("f_r_kHz", 10) << pad("shift_kHz", 11) << '\n';
  for (const auto& p : curve) {
    os << pad(fixed(p.omega_ax_khz, 2), 10) << pad(fixed(eta * p.omega_ax_khz, 2), 10)
       << pad(fixed(p.shift_khz, 2), 11);
    if (!p.error.empty()) os << "  " << p.error;
    os << '\n';
  }
  return os.str();
}

CsvTable curve_csv(const std::vector<CurvePoint>& curve, double eta) {
  CsvTable t{{"omega_ax_khz", "omega_r_khz", "shift_khz"}, {}};
  for (const auto& p : curve) t.rows.push_back({p.omega_ax_khz, eta * p.omega_ax_khz, p.shift_khz});
  return t;
}

std::string format_fit(const FitResult& fit, const std::vector<Measurement>& data) {
  std::ostringstream os;
  os << "a_hat_a0  " << fixed(fit.a_hat_a0, 1) << '\n';
  os << "sigma_a0  " << fixed(fit.sigma_a0, 1) << '\n';
  os << "chi2      " << fixed(fit.chi2, 3) << '\n';
  os << "dof       " << fit.dof << '\n';
  os << pad("f_ax_kHz", 10) << pad("shift_kHz", 11) << pad("sigma_kHz", 11) << pad("resid_kHz", 11) << '\n';
  for (std::size_t i = 0; i < data.size() && i < fit.residuals_khz.size(); ++i) {
    os << pad(fixed(data[i].omega_ax_khz, 2), 10) << pad(fixed(data[i].shift_khz, 2), 11)
       << pad(fixed(data[i].sigma_khz, 2), 11) << pad(fixed(fit.residuals_khz[i], 2), 11) << '\n';
  }
  return os.str();
}

CsvTable fit_csv(const FitResult& fit) {
  return {{"a_hat_a0", "sigma_a0", "chi2", "dof"},
          {{fit.a_hat_a0, fit.sigma_a0, fit.chi2, static_cast<double>(fit.dof)}}};
}

}  // namespace mqdtft
