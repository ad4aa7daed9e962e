#include "mqdtft/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <tuple>

#include "mqdtft/error.hpp"

namespace mqdtft {
namespace {

constexpr int kMaxFactorial = 64;

// ln(n!) for n < kMaxFactorial; filled once, read-only afterwards.
const std::array<double, kMaxFactorial>& log_factorials() {
  static const std::array<double, kMaxFactorial> table = [] {
    std::array<double, kMaxFactorial> t{};
    for (int n = 1; n < kMaxFactorial; ++n) t[n] = t[n - 1] + std::log(static_cast<double>(n));
    return t;
  }();
  return table;
}

double lf(int twice_n) {
  // argument is 2n with n a non-negative integer
  const int n = twice_n / 2;
  if (n < 0 || n >= kMaxFactorial) {
    throw Error(ErrorKind::InvalidArgument, "clebsch_gordan: angular momentum too large");
  }
  return log_factorials()[n];
}

void require_parity(HalfInt j, HalfInt m) {
  if (j.twice() < 0 || (j.twice() - m.twice()) % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "clebsch_gordan: inconsistent j=" + j.str() + ", m=" + m.str());
  }
}

std::vector<HalfInt> projections(HalfInt j) {
  std::vector<HalfInt> out;
  for (int t = -j.twice(); t <= j.twice(); t += 2) out.push_back(HalfInt::from_twice(t));
  return out;
}

std::string signed_str(HalfInt h) { return h.str(); }

}  // namespace

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m) {
  require_parity(j1, m1);
  require_parity(j2, m2);
  require_parity(j, m);
  if ((j1 + j2 + j).twice() % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "clebsch_gordan: j1 + j2 + J must be an integer");
  }
  if (m1 + m2 != m) return 0.0;
  if (abs(m1) > j1 || abs(m2) > j2 || abs(m) > j) return 0.0;
  if (j > j1 + j2 || j < abs(j1 - j2)) return 0.0;

  // All arguments below are twice integers.
  const int a = (j1 + j2 - j).twice();
  const int b = (j1 - j2 + j).twice();
  const int c = (-j1 + j2 + j).twice();
  const int d = (j1 + j2 + j).twice() + 2;
  const double norm = 0.5 * (std::log(static_cast<double>(j.twice() + 1)) + lf(a) + lf(b) + lf(c) - lf(d) +
                             lf((j + m).twice()) + lf((j - m).twice()) + lf((j1 - m1).twice()) +
                             lf((j1 + m1).twice()) + lf((j2 - m2).twice()) + lf((j2 + m2).twice()));

  // k runs over integers keeping every factorial argument non-negative.
  const int t1 = (j - j2 + m1).twice();
  const int t2 = (j - j1 - m2).twice();
  const int kmin = std::max({0, -t1 / 2, -t2 / 2});
  const int kmax = std::min({a / 2, (j1 - m1).twice() / 2, (j2 + m2).twice() / 2});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double log_den = lf(2 * k) + lf(a - 2 * k) + lf((j1 - m1).twice() - 2 * k) +
                           lf((j2 + m2).twice() - 2 * k) + lf(t1 + 2 * k) + lf(t2 + 2 * k);
    const double term = std::exp(norm - log_den);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

std::string FragChannel::label() const {
  return "(" + f1.str() + "," + signed_str(mf1) + ";" + f2.str() + "," + signed_str(mf2) + ")";
}

std::string FragChannel::short_label() const { return "{" + mf1.str() + ";" + mf2.str() + "}"; }

std::string EigenChannel::label() const {
  return "(" + s.str() + "," + ms.str() + ";" + i.str() + "," + mi.str() + ")";
}

int ChannelSpace::index_of(const FragChannel& c) const {
  for (std::size_t k = 0; k < frag.size(); ++k) {
    if (frag[k].same_state(c)) return static_cast<int>(k);
  }
  return -1;
}

std::vector<FragChannel> enumerate_frag_channels(const SpeciesPair& pair, HalfInt m) {
  std::vector<FragChannel> out;
  for (HalfInt f1 : {pair.first.lower_f(), pair.first.upper_f()}) {
    for (HalfInt f2 : {pair.second.lower_f(), pair.second.upper_f()}) {
      const double threshold = hyperfine_threshold_ghz(pair, f1, f2);
      for (HalfInt mf1 : projections(f1)) {
        const HalfInt mf2 = m - mf1;
        if (abs(mf2) > f2 || (f2 - mf2).twice() % 2 != 0) continue;
        out.push_back({f1, mf1, f2, mf2, threshold});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const FragChannel& x, const FragChannel& y) {
    if (x.threshold_ghz != y.threshold_ghz) return x.threshold_ghz < y.threshold_ghz;
    return std::tie(x.f1, x.mf1, x.f2, x.mf2) < std::tie(y.f1, y.mf1, y.f2, y.mf2);
  });
  return out;
}

std::vector<EigenChannel> enumerate_eigenchannels(const SpeciesPair& pair, HalfInt m) {
  const HalfInt i1 = pair.first.nuclear_spin;
  const HalfInt i2 = pair.second.nuclear_spin;
  std::vector<EigenChannel> out;
  for (int s = 0; s <= 1; ++s) {
    const HalfInt total_s(s);
    for (HalfInt i = abs(i1 - i2); i <= i1 + i2; i += HalfInt(1)) {
      for (HalfInt ms : projections(total_s)) {
        const HalfInt mi = m - ms;
        if (abs(mi) > i || (i - mi).twice() % 2 != 0) continue;
        out.push_back({total_s, ms, i, mi});
      }
    }
  }
  return out;
}

Eigen::MatrixXd frame_transform(const SpeciesPair& pair, const std::vector<FragChannel>& frag,
                                const std::vector<EigenChannel>& eigen) {
  if (frag.size() != eigen.size()) {
    throw Error(ErrorKind::InvalidArgument, "frame_transform: " + std::to_string(frag.size()) +
                                                " fragmentation vs " + std::to_string(eigen.size()) +
                                                " eigenchannels");
  }
  const HalfInt s = Species::electron_spin();
  const HalfInt i1 = pair.first.nuclear_spin;
  const HalfInt i2 = pair.second.nuclear_spin;
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(frag.size()),
                                            static_cast<Eigen::Index>(eigen.size()));
  for (std::size_t row = 0; row < frag.size(); ++row) {
    const auto& c = frag[row];
    for (std::size_t col = 0; col < eigen.size(); ++col) {
      const auto& e = eigen[col];
      double sum = 0.0;
      for (HalfInt ms1 : {-s, s}) {
        const HalfInt mi1 = c.mf1 - ms1;
        if (abs(mi1) > i1) continue;
        const HalfInt ms2 = e.ms - ms1;
        if (abs(ms2) > s) continue;
        const HalfInt mi2 = c.mf2 - ms2;
        if (abs(mi2) > i2) continue;
        sum += clebsch_gordan(s, ms1, i1, mi1, c.f1, c.mf1) * clebsch_gordan(s, ms2, i2, mi2, c.f2, c.mf2) *
               clebsch_gordan(s, ms1, s, ms2, e.s, e.ms) * clebsch_gordan(i1, mi1, i2, mi2, e.i, e.mi);
      }
      u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = sum;
    }
  }
  return u;
}

ChannelSpace build_channel_space(const SpeciesPair& pair, HalfInt m) {
  ChannelSpace space;
  space.m = m;
  space.frag = enumerate_frag_channels(pair, m);
  space.eigen = enumerate_eigenchannels(pair, m);
  space.u = frame_transform(pair, space.frag, space.eigen);
  return space;
}

std::string format_channel_space(const ChannelSpace& space) {
  std::ostringstream os;
  os << "# M = " << space.m.str() << "\n";
  os << "# fragmentation channels (F1,mF1;F2,mF2)  threshold_GHz\n";
  for (std::size_t i = 0; i < space.frag.size(); ++i) {
    os << std::setw(3) << i << "  " << std::left << std::setw(16) << space.frag[i].label() << std::right
       << std::fixed << std::setprecision(6) << space.frag[i].threshold_ghz << "\n";
  }
  os << "# eigenchannels (S,MS;I,MI)\n";
  for (std::size_t a = 0; a < space.eigen.size(); ++a) {
    os << std::setw(3) << a << "  " << space.eigen[a].label() << "\n";
  }
  os << "# U (rows: fragmentation, columns: eigen)\n";
  for (Eigen::Index i = 0; i < space.u.rows(); ++i) {
    for (Eigen::Index a = 0; a < space.u.cols(); ++a) {
      os << std::setw(10) << std::fixed << std::setprecision(6) << space.u(i, a);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace mqdtft
