#include <gtest/gtest.h>

#include <cmath>

#include "mqdtft/error.hpp"
#include "mqdtft/vdw.hpp"
#include "test_support.hpp"

using namespace mqdtft;

namespace {

constexpr double kGapLow = 6.834682610904 - 3.035732439;
constexpr double kGapHigh = 6.834682610904;

ScaledEnergy energy_at(double gap_ghz) {
  return scaled_energy(gap_ghz, fixtures::rb_scales(), bundled_physics_data().constants);
}

ChiOptions calibrated() {
  ChiOptions o;
  o.phase_constant = bundled_physics_data().pair_data("Rb87", "Rb85")->chi_phase_constant;
  return o;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(ScaledEnergy, Values) {
  EXPECT_EQ(energy_at(0.0).value, 0.0);
  const double s_e_mhz = fixtures::rb_scales().energy_scale_mhz;
  EXPECT_NEAR(energy_at(kGapLow).value, -kGapLow * 1e3 / s_e_mhz, 1e-9);
  EXPECT_GT(energy_at(kGapLow).value, -3e3);
  EXPECT_LT(energy_at(kGapLow).value, -2e3);
  EXPECT_NEAR(energy_at(kGapHigh).value, -4.4e3, 0.05e3);
  EXPECT_THROW(energy_at(-1.0), Error);
}

TEST(VdwScales, Homogeneous) {
  const auto& k = bundled_physics_data().constants;
  const auto a = vdw_scales(4710.0, 43.0, k);
  const auto b = vdw_scales(16 * 4710.0, 43.0, k);
  EXPECT_NEAR(b.beta6_a0 / a.beta6_a0, 2.0, 2e-12);
  EXPECT_NEAR(b.energy_scale_j / a.energy_scale_j, 0.25, 1e-12);
}

TEST(ChiC, CalibrationReproducesAnchor) {
  const auto r = chi_c(energy_at(kGapLow), calibrated());
  EXPECT_NEAR(r.chi, -0.8155366, 1e-6);
  const double c = calibrate_phase_constant(energy_at(kGapLow), -0.8155366);
  EXPECT_NEAR(c, calibrated().phase_constant, 1e-8);
}

TEST(ChiC, ValidatesAtHigherGap) {
  const auto r = chi_c(energy_at(kGapHigh), calibrated());
  EXPECT_NEAR(r.chi, 2.566, 0.02 * 2.566);
}

TEST(ChiC, WronskianConserved) {
  for (double gap : {0.5, kGapLow, kGapHigh, 9.870415049904}) {
    const auto r = chi_c(energy_at(gap), calibrated());
    EXPECT_LT(r.wronskian_drift, 1e-8) << gap;
  }
  const auto pair = propagate_reference_pair(energy_at(kGapLow).value, 0.3, ChiOptions{});
  EXPECT_LT(pair.max_wronskian_drift, 1e-8);
  EXPECT_EQ(pair.r.size(), pair.f.size());
  EXPECT_EQ(pair.r.size(), pair.dg.size());
}

TEST(ChiC, MatchingRadiusIndependence) {
  for (double gap : {kGapLow, kGapHigh}) {
    const auto r = chi_c(energy_at(gap), calibrated());
    EXPECT_NEAR(r.second_radius / r.matching_radius, 1.2, 1e-12);
    EXPECT_LT(rel(r.chi_second, r.chi), 1e-6);
  }
}

TEST(ChiC, InnerBoundaryIndependence) {
  const auto e = energy_at(kGapHigh);
  const double ref = chi_c(e, calibrated()).chi;
  for (double r0 : {0.03, 0.04}) {
    auto o = calibrated();
    o.r_start = r0;
    EXPECT_LT(rel(chi_c(e, o).chi, ref), 1e-6) << r0;
  }
}

TEST(ChiC, GridRefinementConverged) {
  const auto e = energy_at(kGapLow);
  auto coarse = calibrated();
  auto fine = calibrated();
  fine.step_tolerance = coarse.step_tolerance / 256.0;
  const auto a = chi_c(e, coarse);
  const auto b = chi_c(e, fine);
  EXPECT_GT(b.steps, a.steps);
  EXPECT_LT(rel(a.chi, b.chi), 1e-8);
}

TEST(ChiC, ContinuousInEnergy) {
  for (double gap : {1.0, 2.0, kGapLow, 5.0}) {
    const auto e = energy_at(gap);
    ScaledEnergy e2 = e;
    e2.value *= 1.001;
    const double a = chi_c(e, calibrated()).chi;
    const double b = chi_c(e2, calibrated()).chi;
    EXPECT_LT(std::abs(a - b), 0.005 * std::max(std::abs(a), 1.0)) << gap;
  }
}

TEST(ChiC, SmoothOnDenseGrid) {
  for (double gap : {1.0, kGapLow, kGapHigh, 9.0}) {
    const auto e = energy_at(gap);
    double c[5];
    for (int k = 0; k < 5; ++k) {
      ScaledEnergy ek = e;
      ek.value *= 1 + 2.5e-4 * k;
      c[k] = chi_c(ek, calibrated()).chi;
    }
    const double first = std::abs(c[4] - c[0]);
    for (int k = 1; k < 4; ++k) {
      EXPECT_LT(std::abs(c[k + 1] - 2 * c[k] + c[k - 1]), 0.05 * first) << gap;
    }
  }
}

TEST(ChiC, PhaseConstantActsAsTangentShift) {
  const auto e = energy_at(kGapLow);
  ChiOptions o;
  const double base = chi_c(e, o).chi;
  o.phase_constant = 0.05;
  const double shifted = chi_c(e, o).chi;
  EXPECT_NEAR(shifted, std::tan(std::atan(base) + 0.05), 1e-7 * (1 + std::abs(shifted)));
}

TEST(ChiC, RejectsOpenChannel) {
  EXPECT_THROW(chi_c(ScaledEnergy{0.0, 0.0}), Error);
}
