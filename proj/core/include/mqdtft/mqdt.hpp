#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mqdtft/angular.hpp"
#include "mqdtft/physics_data.hpp"
#include "mqdtft/vdw.hpp"

namespace mqdtft {

enum class DefectClass { EnergyInsensitive, EnergySensitive };

std::string_view to_string(DefectClass c) noexcept;  // "EI" / "ES"

/// Quantum defects, stored modulo 1.
struct DefectSet {
  double mu_singlet = 0;
  double mu_triplet = 0;
  /// Triplet defect of energy-sensitive eigenchannels; mu_triplet when unset.
  std::optional<double> mu_triplet_es;

  static DefectSet make(double mu_s, double mu_t, std::optional<double> mu_t_es = std::nullopt);
  double triplet_es() const { return mu_triplet_es.value_or(mu_triplet); }
};

double wrap_defect(double mu);

enum class ClassificationPolicy {
  /// ES when the dominant channel is one of the two highest-threshold channels.
  ThresholdRank,
  /// ES when the dominant channel's classical turning point (C6/gap)^(1/6)
  /// lies inside turning_radius_a0.
  TurningPoint,
};

struct ClassOverride {
  EigenChannel channel;
  DefectClass cls;
};

struct ClassificationOptions {
  ClassificationPolicy policy = ClassificationPolicy::ThresholdRank;
  std::vector<ClassOverride> overrides;
  double tie_tolerance = 1e-9;
  // TurningPoint only.
  double c6_au = 0;
  double entrance_threshold_ghz = 0;
  double hartree_ghz = 0;
  double turning_radius_a0 = 43.0;
};

/// Singlets are always EI; overrides win over the policy. Overrides whose
/// MS + MI differs from the space's M do not apply.
std::vector<DefectClass> classify_eigenchannels(const ChannelSpace& space,
                                                const ClassificationOptions& opts = {});

/// mu_alpha per eigenchannel, in `space.eigen` order.
std::vector<double> eigen_defects(const ChannelSpace& space, std::span<const DefectClass> classes,
                                  const DefectSet& defects);

/// K^c_ij = sum_a U_ia tan(pi mu_a + pi/8) U_ja.
Eigen::MatrixXd build_kc(const Eigen::MatrixXd& u, std::span<const double> mu);

struct ChannelPartition {
  std::vector<int> open;
  std::vector<int> closed;
};

/// Open: threshold <= threshold(entrance). Throws if entrance is not in the space.
ChannelPartition partition_channels(const ChannelSpace& space, const FragChannel& entrance);

enum class ChiSource { Configured, Computed };

struct ClosedChannelChi {
  int index = -1;  // row in the channel space
  double chi = 0;
  ChiSource source = ChiSource::Configured;
};

using ClosedChannelData = std::vector<ClosedChannelChi>;

/// K_oo + K_oc (chi - K_cc)^-1 K_co over the open block. NearResonance when
/// chi - K_cc has condition number above max_condition.
Eigen::MatrixXd eliminate_closed(const Eigen::MatrixXd& kc, const ChannelPartition& partition,
                                 const ClosedChannelData& chi, double max_condition = 1e12);

/// 2^(3/2) pi / Gamma(1/4)^2.
double scattering_length_prefactor();

/// a = prefactor * beta6 * (K + tan(pi/8)) / (K - tan(pi/8)), in a0.
/// |K| > 1e10 is treated as K = infinity.
double scattering_length(double k_eff, const VdwScales& scales);

/// abar = 2 pi / Gamma(1/4)^2 * beta6, the average of a over a uniformly
/// distributed short-range phase.
double mean_scattering_length(const VdwScales& scales);

struct ChiOverride {
  HalfInt f1, mf1, f2, mf2;
  double chi = 0;
};

struct ChiSettings {
  std::vector<ChiOverride> configured;
  /// Channels without a configured value are computed numerically when set,
  /// otherwise they are an error.
  bool compute_missing = true;
  ChiOptions numeric;
};

/// chi per closed channel: configured value if present, else chi_c at the gap
/// above the entrance threshold.
ClosedChannelData resolve_closed_channel_chi(const ChannelSpace& space, const ChannelPartition& partition,
                                             int entrance, const ChiSettings& settings,
                                             const VdwScales& scales, const PhysicalConstants& k);

struct ScatteringLengthResult {
  ChannelSpace space;
  int entrance = -1;
  ChannelPartition partition;
  std::vector<DefectClass> classes;
  std::vector<double> mu;
  Eigen::MatrixXd kc;
  ClosedChannelData chi;
  double k_eff = 0;
  double a_a0 = 0;
};

/// Everything downstream of the channel space; the space may be in any order.
ScatteringLengthResult scattering_length_in_space(ChannelSpace space, int entrance,
                                                  std::vector<DefectClass> classes,
                                                  const DefectSet& defects,
                                                  const ClosedChannelData& chi,
                                                  const VdwScales& scales);

/// enumerate -> frame transform -> classify -> K^c -> partition -> eliminate -> a.
ScatteringLengthResult channel_scattering_length(const SpeciesPair& pair, const FragChannel& entrance,
                                                 const DefectSet& defects,
                                                 ClassificationOptions classification,
                                                 const ChiSettings& chi, const VdwScales& scales,
                                                 const PhysicalConstants& k);

}  // namespace mqdtft
