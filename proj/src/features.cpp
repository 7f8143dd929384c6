#include "rfad/features.hpp"

#include "rfad/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rfad {

Eigen::Matrix<double, 1, PacketStats::kCount> PacketStats::as_row() const {
  Eigen::Matrix<double, 1, kCount> row;
  row << mean, std_dev, mean_root, abs_mean, skewness, kurtosis, variance, entropy, peak, range, abs_peak;
  return row;
}

std::vector<std::string> stat_column_names() {
  std::vector<std::string> names;
  names.reserve(kStatColumns);
  for (const char *packet : kPacketNames)
    for (const char *stat : kStatNames) names.push_back(std::string(packet) + "_" + stat);
  return names;
}

PacketStats packet_stats(const Eigen::Ref<const Eigen::VectorXd> &x) {
  if (x.size() == 0) throw Error(Errc::EmptyPacket, "packet has no coefficients");
  const double n = static_cast<double>(x.size());
  PacketStats s;
  s.mean = x.mean();
  const Eigen::ArrayXd centered = x.array() - s.mean;
  s.variance = sample_variance(x);
  s.std_dev = std::sqrt(s.variance);
  s.abs_mean = x.cwiseAbs().mean();
  const double smr = x.cwiseAbs().cwiseSqrt().mean();
  s.mean_root = smr * smr;

  const double m2 = centered.square().sum() / n;
  if (m2 > 0.0) {
    s.skewness = centered.cube().sum() / n / std::pow(m2, 1.5);
    s.kurtosis = centered.square().square().sum() / n / (m2 * m2);
  }

  const double energy = x.squaredNorm();
  if (energy > 0.0) {
    for (double v : x) {
      const double p = v * v / energy;
      if (p > 0.0) s.entropy -= p * std::log2(p);
    }
  }

  s.peak = x.maxCoeff();
  s.range = s.peak - x.minCoeff();
  s.abs_peak = x.cwiseAbs().maxCoeff();
  return s;
}

FeatureVector feature_vector(const PacketSet &p) {
  for (const auto *packet : {&p.a1, &p.d1, &p.a2, &p.d2})
    if (packet->size() == 0) throw Error(Errc::EmptyPacket, "packet has no coefficients");
  return {sample_variance(p.a1), sample_variance(p.d1), sample_variance(p.a2), sample_variance(p.d2)};
}

StatRow stat_row(const PacketSet &p) {
  StatRow row;
  row << packet_stats(p.a1).as_row(), packet_stats(p.d1).as_row(), packet_stats(p.a2).as_row(),
      packet_stats(p.d2).as_row();
  return row;
}

FeatureVector fingerprint(const Signal &signal, const TriggerConfig &trigger) {
  return feature_vector(wpt2(extract_transient(signal, trigger)));
}

std::vector<int> rank_features(const Eigen::Ref<const Eigen::MatrixXd> &stats) {
  if (stats.rows() < 2 || stats.cols() != kStatColumns)
    throw Error(Errc::ShapeError, "expected >= 2 rows and " + std::to_string(kStatColumns) + " columns, got " +
                                      std::to_string(stats.rows()) + "x" + std::to_string(stats.cols()));
  Eigen::VectorXd spread(stats.cols());
  for (Eigen::Index c = 0; c < stats.cols(); ++c) spread[c] = sample_variance(stats.col(c));

  std::vector<int> order(static_cast<std::size_t>(stats.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return spread[a] > spread[b]; });
  return order;
}

} // namespace rfad
