#include "mqdtft/shift_fit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "mqdtft/error.hpp"

namespace mqdtft {
namespace {

void require_state(const Species& s, HyperfineState st, const char* what) {
  if ((st.f != s.lower_f() && st.f != s.upper_f()) || abs(st.mf) > st.f ||
      (st.f - st.mf).twice() % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " |" + st.f.str() + "," + st.mf.str() +
                                                "> is not a ground hyperfine state of " + s.name);
  }
}

FragChannel channel(const SpeciesPair& pair, HyperfineState a, HyperfineState b) {
  return {a.f, a.mf, b.f, b.mf, hyperfine_threshold_ghz(pair, a.f, b.f)};
}

struct Unknown {
  bool final_side;
};

Unknown unknown_side(const TransitionSpec& t) {
  if (t.a_initial_a0.has_value() == t.a_final_a0.has_value()) {
    throw Error(ErrorKind::InvalidArgument, "fit needs exactly one unknown scattering length");
  }
  return {!t.a_final_a0.has_value()};
}

TrapGeometry sweep_trap(double f_ax_khz, const SweepSettings& sweep) {
  TrapGeometry trap = make_trap_khz(sweep.eta * f_ax_khz, f_ax_khz, sweep.reduced_mass_kg, sweep.constants,
                                    sweep.eta_gate);
  if (sweep.scales) {
    const auto v = pseudopotential_validity(trap, *sweep.scales, sweep.constants);
    if (v.verdict == Validity::Invalid) {
      throw Error(ErrorKind::InvalidArgument,
                  "pseudopotential invalid: beta6/d_r = " + std::to_string(v.ratio));
    }
  }
  return trap;
}

// Shift with the known side's energy precomputed.
struct PointModel {
  TrapGeometry trap;
  double known_eps = 0;
};

double model_shift(const TransitionSpec& t, const PointModel& p, bool final_unknown, double a) {
  const double e = a_to_energy(a, p.trap).value;
  const double diff = final_unknown ? e - p.known_eps : p.known_eps - e;
  return t.direction * energy_khz(diff, p.trap);
}

std::vector<PointModel> prepare(const std::vector<Measurement>& data, const TransitionSpec& t,
                                const SweepSettings& sweep, bool final_unknown) {
  std::vector<PointModel> out;
  const double known = final_unknown ? *t.a_initial_a0 : *t.a_final_a0;
  for (const auto& m : data) {
    if (!(m.sigma_khz > 0)) throw Error(ErrorKind::InvalidArgument, "measurement sigma must be positive");
    PointModel p{sweep_trap(m.omega_ax_khz, sweep), 0};
    p.known_eps = a_to_energy(known, p.trap).value;
    out.push_back(p);
  }
  return out;
}

double chi2_of(const std::vector<Measurement>& data, const std::vector<PointModel>& model,
               const TransitionSpec& t, bool final_unknown, double a) {
  double sum = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = (model_shift(t, model[i], final_unknown, a) - data[i].shift_khz) / data[i].sigma_khz;
    sum += r * r;
  }
  return sum;
}

double parse_number(std::string_view s, int line) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::Io, "measurements line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

TransitionSpec make_transition(const SpeciesPair& pair, int interrogated, HyperfineState initial,
                               HyperfineState final_state, HyperfineState spectator,
                               std::optional<double> a_initial_a0, std::optional<double> a_final_a0) {
  if (interrogated != 0 && interrogated != 1) {
    throw Error(ErrorKind::InvalidArgument, "interrogated atom must be 0 or 1");
  }
  const Species& probe = interrogated == 0 ? pair.first : pair.second;
  const Species& other = interrogated == 0 ? pair.second : pair.first;
  require_state(probe, initial, "initial state");
  require_state(probe, final_state, "final state");
  require_state(other, spectator, "spectator state");
  if (initial.f == final_state.f) {
    throw Error(ErrorKind::InvalidArgument, "transition must change the hyperfine manifold");
  }
  TransitionSpec t;
  t.interrogated = interrogated;
  t.initial_state = initial;
  t.final_state = final_state;
  t.initial_channel = interrogated == 0 ? channel(pair, initial, spectator) : channel(pair, spectator, initial);
  t.final_channel =
      interrogated == 0 ? channel(pair, final_state, spectator) : channel(pair, spectator, final_state);
  t.direction = initial.f == probe.lower_f() ? +1 : -1;
  t.a_initial_a0 = a_initial_a0;
  t.a_final_a0 = a_final_a0;
  return t;
}

double predict_shift(const TransitionSpec& t, const TrapGeometry& trap) {
  if (!t.a_initial_a0 || !t.a_final_a0) {
    throw Error(ErrorKind::InvalidArgument, "predict_shift needs both scattering lengths");
  }
  const double ei = a_to_energy(*t.a_initial_a0, trap).value;
  const double ef = a_to_energy(*t.a_final_a0, trap).value;
  return t.direction * energy_khz(ef - ei, trap);
}

std::vector<CurvePoint> shift_curve(const TransitionSpec& t, const std::vector<double>& omega_ax_khz,
                                    const SweepSettings& sweep) {
  std::vector<CurvePoint> out;
  for (double w : omega_ax_khz) {
    CurvePoint p;
    p.omega_ax_khz = w;
    try {
      p.shift_khz = predict_shift(t, sweep_trap(w, sweep));
    } catch (const Error& e) {
      p.shift_khz = std::numeric_limits<double>::quiet_NaN();
      p.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    out.push_back(p);
  }
  return out;
}

double chi_squared(const std::vector<Measurement>& data, const TransitionSpec& t, const SweepSettings& sweep,
                   double a_unknown_a0) {
  const bool final_unknown = unknown_side(t).final_side;
  return chi2_of(data, prepare(data, t, sweep, final_unknown), t, final_unknown, a_unknown_a0);
}

FitResult fit_scattering_length(const std::vector<Measurement>& data, const TransitionSpec& t,
                                const SweepSettings& sweep, const FitOptions& opts) {
  if (data.size() < 2) throw Error(ErrorKind::InvalidArgument, "fit needs at least two measurements");
  if (!(opts.a_max_a0 > opts.a_min_a0) || opts.scan_points < 3) {
    throw Error(ErrorKind::InvalidArgument, "fit: bad scan bracket");
  }
  const bool final_unknown = unknown_side(t).final_side;
  const auto model = prepare(data, t, sweep, final_unknown);
  auto chi2 = [&](double a) { return chi2_of(data, model, t, final_unknown, a); };

  std::vector<double> as;
  std::vector<double> cs;
  for (int i = 0; i < opts.scan_points; ++i) {
    const double a = opts.a_min_a0 + (opts.a_max_a0 - opts.a_min_a0) * i / (opts.scan_points - 1);
    if (std::abs(a) < opts.zero_exclusion_a0) continue;
    as.push_back(a);
    cs.push_back(chi2(a));
  }
  const auto [lo_it, hi_it] = std::minmax_element(cs.begin(), cs.end());
  if (*hi_it - *lo_it <= 1e-12 * (1.0 + *lo_it)) {
    throw Error(ErrorKind::IllPosed, "fit: chi^2 is flat in the unknown scattering length");
  }
  const auto best = static_cast<std::size_t>(lo_it - cs.begin());
  if (best == 0 || best + 1 == as.size()) {
    throw Error(ErrorKind::BracketFailure, "fit: chi^2 minimum at the bracket edge a = " + std::to_string(as[best]) +
                                               " a0");
  }
  const auto [a_hat, c_min] =
      boost::math::tools::brent_find_minima(chi2, as[best - 1], as[best + 1], std::numeric_limits<double>::digits / 2);

  FitResult r;
  r.a_hat_a0 = a_hat;
  r.chi2 = c_min;
  r.dof = static_cast<int>(data.size()) - 1;

  // Delta chi^2 = 1 interval on each side.
  auto crossing = [&](double dir) {
    const double limit = dir > 0 ? opts.a_max_a0 : opts.a_min_a0;
    double step = std::max(1.0, 0.01 * std::abs(a_hat));
    double inner = a_hat;
    double outer = a_hat + dir * step;
    while (chi2(outer) < c_min + 1.0) {
      if (dir * (outer - limit) >= 0) return std::numeric_limits<double>::infinity();
      inner = outer;
      step *= 2;
      outer = dir > 0 ? std::min(outer + step, limit) : std::max(outer - step, limit);
    }
    std::uintmax_t iters = 100;
    auto g = [&](double a) { return chi2(a) - c_min - 1.0; };
    auto tol = [&](double x, double y) { return std::abs(x - y) <= opts.tolerance_a0; };
    const auto root = boost::math::tools::toms748_solve(g, std::min(inner, outer), std::max(inner, outer), tol, iters);
    return std::abs(0.5 * (root.first + root.second) - a_hat);
  };
  r.sigma_a0 = 0.5 * (crossing(+1.0) + crossing(-1.0));

  for (std::size_t i = 0; i < data.size(); ++i) {
    r.residuals_khz.push_back(model_shift(t, model[i], final_unknown, a_hat) - data[i].shift_khz);
  }
  return r;
}

std::vector<Measurement> synthesize_measurements(const TransitionSpec& t, const SweepSettings& sweep,
                                                 const std::vector<double>& omega_ax_khz, double a_true_a0,
                                                 double sigma_khz, std::uint64_t seed) {
  if (!(sigma_khz >= 0)) throw Error(ErrorKind::InvalidArgument, "synthesize: sigma must be non-negative");
  const bool final_unknown = unknown_side(t).final_side;
  TransitionSpec full = t;
  (final_unknown ? full.a_final_a0 : full.a_initial_a0) = a_true_a0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Measurement> out;
  for (double w : omega_ax_khz) {
    const double shift = predict_shift(full, sweep_trap(w, sweep));
    out.push_back({w, shift + (sigma_khz > 0 ? sigma_khz * noise(rng) : 0.0), sigma_khz});
  }
  return out;
}

double combine_estimates(const std::vector<double>& estimates) {
  if (estimates.empty()) throw Error(ErrorKind::InvalidArgument, "combine_estimates: no estimates");
  return std::accumulate(estimates.begin(), estimates.end(), 0.0) / static_cast<double>(estimates.size());
}

std::vector<Measurement> read_measurements(std::istream& in, std::optional<double> default_sigma_khz) {
  std::vector<Measurement> out;
  std::string line;
  int line_no = 0;
  bool header = false;
  bool has_sigma = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto fields = split(line);
    if (!header) {
      std::vector<std::string> names;
      for (auto f : fields) {
        std::string s(f);
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t") + 1);
        names.push_back(s);
      }
      if (names.size() == 3 && names[0] == "omega_ax_khz" && names[1] == "shift_khz" && names[2] == "sigma_khz") {
        has_sigma = true;
      } else if (!(names.size() == 2 && names[0] == "omega_ax_khz" && names[1] == "shift_khz")) {
        throw Error(ErrorKind::Io, "measurements line " + std::to_string(line_no) +
                                       ": expected header omega_ax_khz,shift_khz[,sigma_khz]");
      }
      if (!has_sigma && !default_sigma_khz) {
        throw Error(ErrorKind::Io, "measurements have no sigma column and no default sigma was given");
      }
      header = true;
      continue;
    }
    if (fields.size() != (has_sigma ? 3u : 2u)) {
      throw Error(ErrorKind::Io, "measurements line " + std::to_string(line_no) + ": wrong number of fields");
    }
    Measurement m;
    m.omega_ax_khz = parse_number(fields[0], line_no);
    m.shift_khz = parse_number(fields[1], line_no);
    m.sigma_khz = has_sigma ? parse_number(fields[2], line_no) : *default_sigma_khz;
    if (!(m.sigma_khz > 0)) {
      throw Error(ErrorKind::Io, "measurements line " + std::to_string(line_no) + ": sigma must be positive");
    }
    out.push_back(m);
  }
  if (!header) throw Error(ErrorKind::Io, "measurements: missing header");
  return out;
}

std::vector<Measurement> read_measurements(const std::filesystem::path& path,
                                           std::optional<double> default_sigma_khz) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_measurements(in, default_sigma_khz);
}

void write_measurements(std::ostream& out, const std::vector<Measurement>& data) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "omega_ax_khz,shift_khz,sigma_khz\n";
  for (const auto& m : data) out << m.omega_ax_khz << ',' << m.shift_khz << ',' << m.sigma_khz << '\n';
  out.precision(old);
}

}  // namespace mqdtft
