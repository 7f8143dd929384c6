#pragma once

#include "rfad/signal.hpp"
#include "rfad/wpt.hpp"

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace rfad {

/// Per-packet summary statistics. Moments are central; kurtosis is
/// non-excess. Skewness and kurtosis of a zero-variance packet are 0.
struct PacketStats {
  double mean = 0, std_dev = 0, mean_root = 0, abs_mean = 0, skewness = 0, kurtosis = 0;
  double variance = 0, entropy = 0, peak = 0, range = 0, abs_peak = 0;

  static constexpr int kCount = 11;
  Eigen::Matrix<double, 1, kCount> as_row() const;
};

inline constexpr std::array<const char *, PacketStats::kCount> kStatNames = {
    "mean",     "std_dev",  "mean_root", "abs_mean", "skewness", "kurtosis",
    "variance", "entropy",  "peak",      "range",    "abs_peak"};
inline constexpr std::array<const char *, 4> kPacketNames = {"a1", "d1", "a2", "d2"};
inline constexpr int kStatColumns = 4 * PacketStats::kCount;
inline constexpr int kVarianceStat = 6;

/// Column index of `stat` for `packet` in the packet-major 44-column layout.
constexpr int stat_column(int packet, int stat) { return packet * PacketStats::kCount + stat; }

/// Names like "a1_mean", "d2_abs_peak" in column order.
std::vector<std::string> stat_column_names();

/// The fingerprint: sample variances of a1, d1, a2, d2.
using FeatureVector = Eigen::Vector4d;
using StatRow = Eigen::Matrix<double, 1, kStatColumns>;

/// Sample variance with an (n-1) denominator; 0 for a single coefficient.
template <typename Derived> double sample_variance(const Eigen::MatrixBase<Derived> &x) {
  const auto n = x.size();
  if (n < 2) return 0.0;
  const double mean = x.mean();
  return (x.array() - mean).square().sum() / static_cast<double>(n - 1);
}

PacketStats packet_stats(const Eigen::Ref<const Eigen::VectorXd> &packet);
FeatureVector feature_vector(const PacketSet &packets);
StatRow stat_row(const PacketSet &packets);

/// Capture, decompose and fingerprint one raw signal.
FeatureVector fingerprint(const Signal &signal, const TriggerConfig &trigger);

/// Orders the 44 statistic columns by their across-signal sample variance,
/// largest first; equal variances keep ascending column order.
std::vector<int> rank_features(const Eigen::Ref<const Eigen::MatrixXd> &stats);

} // namespace rfad
