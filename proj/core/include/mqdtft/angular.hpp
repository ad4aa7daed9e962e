#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "mqdtft/half_int.hpp"
#include "mqdtft/physics_data.hpp"

namespace mqdtft {

/// <j1 m1; j2 m2 | J M>, Condon-Shortley phase. Zero when the triangle or
/// projection rules fail; InvalidArgument when j and m have mismatched parity.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m);

/// Asymptotic channel |F1 mF1; F2 mF2>.
struct FragChannel {
  HalfInt f1, mf1, f2, mf2;
  double threshold_ghz = 0;

  HalfInt total_m() const { return mf1 + mf2; }
  bool same_state(const FragChannel& o) const {
    return f1 == o.f1 && mf1 == o.mf1 && f2 == o.f2 && mf2 == o.mf2;
  }
  /// "(1,-1;3,-3)"
  std::string label() const;
  /// "{-1;-3}", the mF-only shorthand.
  std::string short_label() const;
};

/// Short-range channel (S, MS; I, MI).
struct EigenChannel {
  HalfInt s, ms, i, mi;

  bool operator==(const EigenChannel&) const = default;
  bool is_singlet() const { return s.twice() == 0; }
  std::string label() const;
};

struct ChannelSpace {
  HalfInt m;
  std::vector<FragChannel> frag;
  std::vector<EigenChannel> eigen;
  /// Rows follow `frag`, columns follow `eigen`.
  Eigen::MatrixXd u;

  int index_of(const FragChannel& c) const;  // -1 if absent
};

/// Every (F1, mF1, F2, mF2) with mF1 + mF2 = M, sorted by ascending threshold
/// and then lexicographically by (F1, mF1, F2, mF2).
std::vector<FragChannel> enumerate_frag_channels(const SpeciesPair& pair, HalfInt m);

/// Every (S, MS, I, MI) with MS + MI = M, sorted by S, then I, then MS.
std::vector<EigenChannel> enumerate_eigenchannels(const SpeciesPair& pair, HalfInt m);

/// U_{i alpha} = <F1 mF1 F2 mF2 | S MS I MI> via four Clebsch-Gordan factors.
Eigen::MatrixXd frame_transform(const SpeciesPair& pair, const std::vector<FragChannel>& frag,
                                const std::vector<EigenChannel>& eigen);

ChannelSpace build_channel_space(const SpeciesPair& pair, HalfInt m);

/// Text dump used by the `channels` subcommand.
std::string format_channel_space(const ChannelSpace& space);

}  // namespace mqdtft
