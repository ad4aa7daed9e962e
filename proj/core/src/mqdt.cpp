#include "mqdtft/mqdt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "mqdtft/error.hpp"

namespace mqdtft {
namespace {

const double kTanPi8 = std::tan(std::numbers::pi / 8.0);
constexpr double kInfiniteK = 1e10;
constexpr double kPoleWindow = 1e-12;

bool threshold_rank_es(const ChannelSpace& space, int dominant) {
  std::vector<double> th;
  for (const auto& c : space.frag) th.push_back(c.threshold_ghz);
  std::sort(th.begin(), th.end());
  const double cut = th.size() >= 2 ? th[th.size() - 2] : th.back();
  // A 1x1 space has no "two highest" distinct from the entrance itself.
  if (th.size() < 2) return false;
  return space.frag[dominant].threshold_ghz >= cut - 1e-9;
}

bool turning_point_es(const ChannelSpace& space, int dominant, const ClassificationOptions& opts) {
  if (!(opts.c6_au > 0) || !(opts.hartree_ghz > 0)) {
    throw Error(ErrorKind::InvalidArgument, "classify_eigenchannels: turning-point policy needs C6 and the hartree");
  }
  const double gap = space.frag[dominant].threshold_ghz - opts.entrance_threshold_ghz;
  if (gap <= 0) return false;
  const double radius = std::pow(opts.c6_au / (gap / opts.hartree_ghz), 1.0 / 6.0);
  return radius < opts.turning_radius_a0;
}

DefectClass policy_class(const ChannelSpace& space, int dominant, const ClassificationOptions& opts) {
  const bool es = opts.policy == ClassificationPolicy::ThresholdRank ? threshold_rank_es(space, dominant)
                                                                     : turning_point_es(space, dominant, opts);
  return es ? DefectClass::EnergySensitive : DefectClass::EnergyInsensitive;
}

}  // namespace

std::string_view to_string(DefectClass c) noexcept {
  return c == DefectClass::EnergySensitive ? "ES" : "EI";
}

double wrap_defect(double mu) {
  if (!std::isfinite(mu)) throw Error(ErrorKind::InvalidArgument, "quantum defect must be finite");
  const double w = mu - std::floor(mu);
  return w >= 1.0 ? 0.0 : w;
}

DefectSet DefectSet::make(double mu_s, double mu_t, std::optional<double> mu_t_es) {
  DefectSet d;
  d.mu_singlet = wrap_defect(mu_s);
  d.mu_triplet = wrap_defect(mu_t);
  if (mu_t_es) d.mu_triplet_es = wrap_defect(*mu_t_es);
  return d;
}

std::vector<DefectClass> classify_eigenchannels(const ChannelSpace& space, const ClassificationOptions& opts) {
  for (const auto& o : opts.overrides) {
    if (o.channel.ms + o.channel.mi != space.m) continue;
    if (std::find(space.eigen.begin(), space.eigen.end(), o.channel) == space.eigen.end()) {
      throw Error(ErrorKind::Config, "class override for " + o.channel.label() + " is not in the M = " +
                                         space.m.str() + " space");
    }
  }
  std::vector<DefectClass> out;
  for (std::size_t a = 0; a < space.eigen.size(); ++a) {
    const auto& e = space.eigen[a];
    auto ov = std::find_if(opts.overrides.begin(), opts.overrides.end(),
                           [&](const ClassOverride& o) { return o.channel == e; });
    if (ov != opts.overrides.end()) {
      out.push_back(ov->cls);
      continue;
    }
    if (e.is_singlet()) {
      out.push_back(DefectClass::EnergyInsensitive);
      continue;
    }
    const auto col = space.u.col(static_cast<Eigen::Index>(a)).cwiseAbs();
    const double best = col.maxCoeff();
    std::optional<DefectClass> cls;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (best - col(i) > opts.tie_tolerance) continue;
      const DefectClass c = policy_class(space, static_cast<int>(i), opts);
      if (cls && *cls != c) {
        throw Error(ErrorKind::AmbiguousClassification,
                    "eigenchannel " + e.label() + " has tied dominant channels with different classes; "
                    "set an explicit class override");
      }
      cls = c;
    }
    out.push_back(*cls);
  }
  return out;
}

std::vector<double> eigen_defects(const ChannelSpace& space, std::span<const DefectClass> classes,
                                  const DefectSet& defects) {
  if (classes.size() != space.eigen.size()) {
    throw Error(ErrorKind::InvalidArgument, "eigen_defects: one class per eigenchannel required");
  }
  std::vector<double> mu;
  for (std::size_t a = 0; a < classes.size(); ++a) {
    if (space.eigen[a].is_singlet()) {
      mu.push_back(defects.mu_singlet);
    } else {
      mu.push_back(classes[a] == DefectClass::EnergySensitive ? defects.triplet_es() : defects.mu_triplet);
    }
  }
  return mu;
}

Eigen::MatrixXd build_kc(const Eigen::MatrixXd& u, std::span<const double> mu) {
  if (static_cast<Eigen::Index>(mu.size()) != u.cols()) {
    throw Error(ErrorKind::InvalidArgument, "build_kc: one defect per eigenchannel required");
  }
  Eigen::VectorXd t(u.cols());
  for (Eigen::Index a = 0; a < u.cols(); ++a) {
    const double angle = std::numbers::pi * mu[static_cast<std::size_t>(a)] + std::numbers::pi / 8.0;
    if (std::abs(std::cos(angle)) < kPoleWindow) {
      throw Error(ErrorKind::TangentPole, "build_kc: tan(pi mu + pi/8) diverges for mu = " +
                                              std::to_string(mu[static_cast<std::size_t>(a)]));
    }
    t(a) = std::tan(angle);
  }
  Eigen::MatrixXd kc = u * t.asDiagonal() * u.transpose();
  return 0.5 * (kc + kc.transpose());
}

ChannelPartition partition_channels(const ChannelSpace& space, const FragChannel& entrance) {
  const int idx = space.index_of(entrance);
  if (idx < 0) {
    throw Error(ErrorKind::InvalidArgument, "entrance channel " + entrance.label() + " is not in the M = " +
                                                space.m.str() + " space");
  }
  const double cut = space.frag[static_cast<std::size_t>(idx)].threshold_ghz;
  ChannelPartition p;
  for (std::size_t i = 0; i < space.frag.size(); ++i) {
    (space.frag[i].threshold_ghz <= cut + 1e-12 ? p.open : p.closed).push_back(static_cast<int>(i));
  }
  return p;
}

Eigen::MatrixXd eliminate_closed(const Eigen::MatrixXd& kc, const ChannelPartition& partition,
                                 const ClosedChannelData& chi, double max_condition) {
  const auto no = static_cast<Eigen::Index>(partition.open.size());
  const auto nc = static_cast<Eigen::Index>(partition.closed.size());
  Eigen::MatrixXd koo(no, no);
  for (Eigen::Index i = 0; i < no; ++i) {
    for (Eigen::Index j = 0; j < no; ++j) koo(i, j) = kc(partition.open[i], partition.open[j]);
  }
  if (nc == 0) return koo;
  if (static_cast<Eigen::Index>(chi.size()) != nc) {
    throw Error(ErrorKind::InvalidArgument, "eliminate_closed: one chi per closed channel required");
  }
  Eigen::MatrixXd koc(no, nc);
  Eigen::MatrixXd m(nc, nc);
  for (Eigen::Index c = 0; c < nc; ++c) {
    const int row = partition.closed[c];
    auto it = std::find_if(chi.begin(), chi.end(), [&](const ClosedChannelChi& x) { return x.index == row; });
    if (it == chi.end()) {
      throw Error(ErrorKind::InvalidArgument, "eliminate_closed: no chi for closed channel " + std::to_string(row));
    }
    if (!std::isfinite(it->chi)) throw Error(ErrorKind::InvalidArgument, "eliminate_closed: chi must be finite");
    for (Eigen::Index i = 0; i < no; ++i) koc(i, c) = kc(partition.open[i], row);
    for (Eigen::Index d = 0; d < nc; ++d) m(c, d) = -kc(row, partition.closed[d]);
    m(c, c) += it->chi;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd ev = eig.eigenvalues();
  Eigen::Index small = 0;
  ev.cwiseAbs().minCoeff(&small);
  const double cond = ev.cwiseAbs().maxCoeff() / std::abs(ev(small));
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "eliminate_closed: chi - K_cc is near-singular (eigenvalue " << ev(small) << ", condition " << cond << ")";
    throw Error(ErrorKind::NearResonance, os.str());
  }
  Eigen::MatrixXd keff = koo + koc * eig.eigenvectors() * ev.cwiseInverse().asDiagonal() *
                                   eig.eigenvectors().transpose() * koc.transpose();
  return 0.5 * (keff + keff.transpose());
}

double scattering_length_prefactor() {
  const double g = boost::math::tgamma(0.25);
  return std::pow(2.0, 1.5) * std::numbers::pi / (g * g);
}

double scattering_length(double k_eff, const VdwScales& scales) {
  if (!(scales.beta6_a0 > 0)) throw Error(ErrorKind::InvalidArgument, "scattering_length: missing scales");
  if (std::isnan(k_eff)) throw Error(ErrorKind::InvalidArgument, "scattering_length: K is NaN");
  const double unit = scattering_length_prefactor() * scales.beta6_a0;
  if (std::abs(k_eff) > kInfiniteK) return unit;
  if (std::abs(k_eff - kTanPi8) < kPoleWindow) {
    throw Error(ErrorKind::DivergentScatteringLength, "scattering_length: K_eff = tan(pi/8), resonance");
  }
  return unit * (k_eff + kTanPi8) / (k_eff - kTanPi8);
}

double mean_scattering_length(const VdwScales& scales) {
  const double g = boost::math::tgamma(0.25);
  return 2.0 * std::numbers::pi / (g * g) * scales.beta6_a0;
}

ClosedChannelData resolve_closed_channel_chi(const ChannelSpace& space, const ChannelPartition& partition,
                                             int entrance, const ChiSettings& settings,
                                             const VdwScales& scales, const PhysicalConstants& k) {
  const double base = space.frag.at(static_cast<std::size_t>(entrance)).threshold_ghz;
  std::map<double, double> computed;
  ClosedChannelData out;
  for (int idx : partition.closed) {
    const auto& c = space.frag[static_cast<std::size_t>(idx)];
    auto it = std::find_if(settings.configured.begin(), settings.configured.end(), [&](const ChiOverride& o) {
      return o.f1 == c.f1 && o.mf1 == c.mf1 && o.f2 == c.f2 && o.mf2 == c.mf2;
    });
    if (it != settings.configured.end()) {
      out.push_back({idx, it->chi, ChiSource::Configured});
      continue;
    }
    if (!settings.compute_missing) {
      throw Error(ErrorKind::Config, "no chi configured for closed channel " + c.label());
    }
    const double gap = c.threshold_ghz - base;
    auto hit = computed.find(gap);
    if (hit == computed.end()) {
      hit = computed.emplace(gap, chi_c(scaled_energy(gap, scales, k), settings.numeric).chi).first;
    }
    out.push_back({idx, hit->second, ChiSource::Computed});
  }
  return out;
}

ScatteringLengthResult scattering_length_in_space(ChannelSpace space, int entrance,
                                                  std::vector<DefectClass> classes,
                                                  const DefectSet& defects, const ClosedChannelData& chi,
                                                  const VdwScales& scales) {
  if (entrance < 0 || entrance >= static_cast<int>(space.frag.size())) {
    throw Error(ErrorKind::InvalidArgument, "scattering_length_in_space: entrance index out of range");
  }
  ScatteringLengthResult r;
  r.partition = partition_channels(space, space.frag[static_cast<std::size_t>(entrance)]);
  if (r.partition.open.size() != 1) {
    throw Error(ErrorKind::InvalidArgument, "scattering length needs exactly one open channel, found " +
                                                std::to_string(r.partition.open.size()));
  }
  r.mu = eigen_defects(space, classes, defects);
  r.kc = build_kc(space.u, r.mu);
  r.chi = chi;
  r.k_eff = eliminate_closed(r.kc, r.partition, chi)(0, 0);
  r.a_a0 = scattering_length(r.k_eff, scales);
  r.space = std::move(space);
  r.entrance = entrance;
  r.classes = std::move(classes);
  return r;
}

ScatteringLengthResult channel_scattering_length(const SpeciesPair& pair, const FragChannel& entrance,
                                                 const DefectSet& defects,
                                                 ClassificationOptions classification, const ChiSettings& chi,
                                                 const VdwScales& scales, const PhysicalConstants& k) {
  ChannelSpace space = build_channel_space(pair, entrance.total_m());
  const int idx = space.index_of(entrance);
  if (idx < 0) {
    throw Error(ErrorKind::InvalidArgument, "entrance channel " + entrance.label() + " does not exist");
  }
  if (classification.policy == ClassificationPolicy::TurningPoint) {
    classification.entrance_threshold_ghz = space.frag[static_cast<std::size_t>(idx)].threshold_ghz;
    if (!(classification.c6_au > 0)) classification.c6_au = scales.c6_au;
    if (!(classification.hartree_ghz > 0)) classification.hartree_ghz = k.hartree_energy / k.planck_h * 1e-9;
  }
  auto classes = classify_eigenchannels(space, classification);
  const auto partition = partition_channels(space, space.frag[static_cast<std::size_t>(idx)]);
  auto chis = resolve_closed_channel_chi(space, partition, idx, chi, scales, k);
  return scattering_length_in_space(std::move(space), idx, std::move(classes), defects, chis, scales);
}

}  // namespace mqdtft
