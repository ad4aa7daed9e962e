#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "mqdtft/error.hpp"
#include "mqdtft/io.hpp"
#include "mqdtft/mqdt.hpp"
#include "test_support.hpp"

using namespace mqdtft;

namespace {

const FragChannel kEntranceM4{HalfInt(1), HalfInt(-1), HalfInt(3), HalfInt(-3)};
const FragChannel kEntranceM3{HalfInt(1), HalfInt(-1), HalfInt(2), HalfInt(-2)};
const EigenChannel kTiedChannel{HalfInt(1), HalfInt(-1), HalfInt(2), HalfInt(-2)};

Session session() { return make_session(parse_run_config("{}")); }

ClassificationOptions with_tie_override(ClassificationOptions c) {
  c.overrides.push_back({kTiedChannel, DefectClass::EnergySensitive});
  return c;
}

double a_of(const Session& s, const FragChannel& entrance, const DefectSet& d,
            const ClassificationOptions& c) {
  return channel_scattering_length(s.pair, entrance, d, c, s.chi, s.scales, s.data.constants).a_a0;
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
}

}  // namespace

TEST(Defects, WrapModuloOne) {
  EXPECT_NEAR(wrap_defect(1.2), 0.2, 1e-15);
  EXPECT_NEAR(wrap_defect(-0.1), 0.9, 1e-15);
  EXPECT_NEAR(wrap_defect(0.7253), 0.7253, 1e-15);
  const auto d = DefectSet::make(1.7253, -0.8178);
  EXPECT_NEAR(d.mu_singlet, 0.7253, 1e-12);
  EXPECT_NEAR(d.mu_triplet, 0.1822, 1e-12);
  EXPECT_NEAR(d.triplet_es(), 0.1822, 1e-12);
}

TEST(Classification, SingletsAreEnergyInsensitive) {
  const auto s = session();
  for (int m : {-4, -3, -2, 0}) {
    const auto space = build_channel_space(s.pair, HalfInt(m));
    auto opts = with_tie_override(s.classification);
    std::vector<DefectClass> cls;
    try {
      cls = classify_eigenchannels(space, opts);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::AmbiguousClassification);
      continue;
    }
    for (std::size_t a = 0; a < space.eigen.size(); ++a) {
      if (space.eigen[a].is_singlet()) EXPECT_EQ(cls[a], DefectClass::EnergyInsensitive);
    }
  }
}

TEST(Classification, TieAtMinusThreeNeedsOverride) {
  const auto s = session();
  const auto space = build_channel_space(s.pair, HalfInt(-3));
  try {
    (void)classify_eigenchannels(space, s.classification);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AmbiguousClassification);
  }
  const auto cls = classify_eigenchannels(space, with_tie_override(s.classification));
  for (std::size_t a = 0; a < space.eigen.size(); ++a) {
    if (space.eigen[a] == kTiedChannel) EXPECT_EQ(cls[a], DefectClass::EnergySensitive);
  }
}

TEST(Classification, OverrideForOtherMIsIgnored) {
  const auto s = session();
  const auto space = build_channel_space(s.pair, HalfInt(-4));
  EXPECT_EQ(classify_eigenchannels(space, with_tie_override(s.classification)),
            classify_eigenchannels(space, s.classification));
}

TEST(BuildKc, SymmetricForRandomOrthogonal) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int n : {1, 4, 7}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = random_orthogonal(n, rng);
      std::vector<double> mu(n);
      for (auto& m : mu) m = u01(rng);
      const auto kc = build_kc(u, mu);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          EXPECT_LE(std::abs(kc(i, j) - kc(j, i)), 1e-12 * std::max(1.0, std::abs(kc(i, j))));
    }
  }
}

TEST(BuildKc, TangentPoleRejected) {
  const Eigen::MatrixXd u = Eigen::MatrixXd::Identity(2, 2);
  const std::vector<double> mu{0.375, 0.1};
  try {
    (void)build_kc(u, mu);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TangentPole);
  }
}

TEST(ScatteringLength, PrefactorAndMean) {
  const auto sc = fixtures::rb_scales();
  const double g = std::tgamma(0.25);
  EXPECT_NEAR(scattering_length_prefactor(), std::pow(2.0, 1.5) * std::numbers::pi / (g * g), 1e-15);
  EXPECT_NEAR(mean_scattering_length(sc) / sc.beta6_a0, 0.4779888, 1e-6);
  EXPECT_NEAR(scattering_length(0.0, sc), -scattering_length_prefactor() * sc.beta6_a0, 1e-9);
}

TEST(ScatteringLength, MonotoneOnEachSideOfPole) {
  const auto sc = fixtures::rb_scales();
  const double t = std::tan(std::numbers::pi / 8);
  for (auto [lo, hi] : {std::pair{-50.0, t - 1e-3}, std::pair{t + 1e-3, 50.0}}) {
    double prev = scattering_length(lo, sc);
    for (double k = lo + 0.01; k < hi; k += 0.01) {
      const double a = scattering_length(k, sc);
      EXPECT_LT(a, prev) << k;
      prev = a;
    }
  }
}

TEST(ScatteringLength, DivergenceReported) {
  try {
    (void)scattering_length(std::tan(std::numbers::pi / 8), fixtures::rb_scales());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivergentScatteringLength);
  }
}

TEST(Elimination, LargeChiLimitGivesOpenBlock) {
  const auto s = session();
  const auto space = build_channel_space(s.pair, HalfInt(-4));
  const int entrance = space.index_of(kEntranceM4);
  const auto part = partition_channels(space, space.frag[entrance]);
  ASSERT_EQ(part.open.size(), 1u);
  const auto cls = classify_eigenchannels(space, s.classification);
  const auto mu = eigen_defects(space, cls, DefectSet::make(0.7253, 0.1822));
  const auto kc = build_kc(space.u, mu);
  ClosedChannelData chi;
  for (int c : part.closed) chi.push_back({c, 1e8, ChiSource::Configured});
  const auto keff = eliminate_closed(kc, part, chi);
  const double koo = kc(part.open[0], part.open[0]);
  EXPECT_NEAR(keff(0, 0), koo, 1e-6 * std::max(1.0, std::abs(koo)));
}

TEST(Elimination, MatchesDirectBlockInverse) {
  const auto s = session();
  const auto space = build_channel_space(s.pair, HalfInt(-4));
  const int entrance = space.index_of(kEntranceM4);
  const auto part = partition_channels(space, space.frag[entrance]);
  const auto cls = classify_eigenchannels(space, s.classification);
  const auto kc = build_kc(space.u, eigen_defects(space, cls, DefectSet::make(0.7253, 0.1822)));
  ClosedChannelData chi;
  const double values[] = {-0.8155366, 2.5661999, 2.5668389};
  for (std::size_t i = 0; i < part.closed.size(); ++i) chi.push_back({part.closed[i], values[i], ChiSource::Configured});
  const Eigen::Index nc = static_cast<Eigen::Index>(part.closed.size());
  Eigen::MatrixXd kcc(nc, nc);
  Eigen::VectorXd koc(nc);
  for (Eigen::Index i = 0; i < nc; ++i) {
    koc(i) = kc(part.open[0], part.closed[i]);
    for (Eigen::Index j = 0; j < nc; ++j) kcc(i, j) = kc(part.closed[i], part.closed[j]);
  }
  Eigen::MatrixXd x = -kcc;
  for (Eigen::Index i = 0; i < nc; ++i) x(i, i) += chi[i].chi;
  const double direct = kc(part.open[0], part.open[0]) + koc.dot(x.fullPivLu().solve(koc));
  EXPECT_NEAR(eliminate_closed(kc, part, chi)(0, 0), direct, 1e-12 * std::max(1.0, std::abs(direct)));
}

TEST(Elimination, NearResonanceDetected) {
  Eigen::MatrixXd kc(2, 2);
  kc << 0.3, 0.2, 0.2, 1.7;
  ChannelPartition part{{0}, {1}};
  try {
    (void)eliminate_closed(kc, part, {{1, 1.7, ChiSource::Configured}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NearResonance);
  }
}

TEST(ChannelScatteringLength, UniformDefectsDecoupleClosedChannels) {
  auto s = session();
  const auto d = DefectSet::make(0.31, 0.31, 0.31);
  const double a0 = a_of(s, kEntranceM4, d, s.classification);
  for (double v : {-7.0, 0.3, 1e3}) {
    for (auto& c : s.chi.configured) c.chi = v;
    const double a = a_of(s, kEntranceM4, d, s.classification);
    EXPECT_LE(std::abs(a - a0), 1e-10 * std::abs(a0));
  }
}

TEST(ChannelScatteringLength, PermutationInvariant) {
  const auto s = session();
  const auto ref = channel_scattering_length(s.pair, kEntranceM4, DefectSet::make(0.7253, 0.1822),
                                             s.classification, s.chi, s.scales, s.data.constants);
  const auto& sp = ref.space;
  const int n = static_cast<int>(sp.frag.size());
  std::vector<int> rp(n), cp(n);
  std::iota(rp.begin(), rp.end(), 0);
  std::iota(cp.begin(), cp.end(), 0);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    ChannelSpace p;
    p.m = sp.m;
    p.u.resize(n, n);
    std::vector<DefectClass> cls(n);
    for (int i = 0; i < n; ++i) {
      p.frag.push_back(sp.frag[rp[i]]);
      p.eigen.push_back(sp.eigen[cp[i]]);
      cls[i] = ref.classes[cp[i]];
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p.u(i, j) = sp.u(rp[i], cp[j]);
    ClosedChannelData chi;
    for (const auto& c : ref.chi) {
      const int row = static_cast<int>(std::find(rp.begin(), rp.end(), c.index) - rp.begin());
      chi.push_back({row, c.chi, c.source});
    }
    const int entrance = static_cast<int>(std::find(rp.begin(), rp.end(), ref.entrance) - rp.begin());
    const auto r = scattering_length_in_space(p, entrance, cls, DefectSet::make(0.7253, 0.1822), chi, s.scales);
    EXPECT_NEAR(r.a_a0, ref.a_a0, 1e-12 * std::abs(ref.a_a0));
  }
}

TEST(ChannelScatteringLength, TableRowsNearPublishedValues) {
  const auto s = session();
  const auto c3 = with_tie_override(s.classification);
  EXPECT_NEAR(a_of(s, kEntranceM4, DefectSet::make(0.7253, 0.1822), s.classification), 420.2, 1.0);
  EXPECT_NEAR(a_of(s, kEntranceM4, DefectSet::make(0.7253, 0.2045), s.classification), 277.4, 1.0);
  EXPECT_NEAR(a_of(s, kEntranceM4, DefectSet::make(0.7253, 0.1822, 0.1984), s.classification), 315.0, 1.0);
  EXPECT_NEAR(a_of(s, kEntranceM3, DefectSet::make(0.7253, 0.1822), c3), 242.5, 0.05 * 242.5);
  EXPECT_NEAR(a_of(s, kEntranceM3, DefectSet::make(0.7253, 0.2045), c3), 207.7, 0.05 * 207.7);
  EXPECT_NEAR(a_of(s, kEntranceM3, DefectSet::make(0.7253, 0.1822, 0.1984), c3), 234.3, 0.05 * 234.3);
}

TEST(ChannelScatteringLength, ChiSourcesRecorded) {
  const auto s = session();
  const auto r4 = channel_scattering_length(s.pair, kEntranceM4, DefectSet::make(0.7253, 0.1822),
                                            s.classification, s.chi, s.scales, s.data.constants);
  ASSERT_EQ(r4.chi.size(), 3u);
  for (const auto& c : r4.chi) EXPECT_EQ(c.source, ChiSource::Configured);
  const auto r3 = channel_scattering_length(s.pair, kEntranceM3, DefectSet::make(0.7253, 0.1822),
                                            with_tie_override(s.classification), s.chi, s.scales,
                                            s.data.constants);
  ASSERT_EQ(r3.chi.size(), 7u);
  for (const auto& c : r3.chi) EXPECT_EQ(c.source, ChiSource::Computed);
}

TEST(ChannelScatteringLength, MissingChiIsErrorWhenComputationDisabled) {
  auto s = session();
  s.chi.compute_missing = false;
  EXPECT_THROW(a_of(s, kEntranceM3, DefectSet::make(0.7253, 0.1822), with_tie_override(s.classification)), Error);
}

TEST(Partition, EntranceMustBeInSpace) {
  const auto s = session();
  const auto space = build_channel_space(s.pair, HalfInt(-4));
  EXPECT_THROW(partition_channels(space, kEntranceM3), Error);
}
