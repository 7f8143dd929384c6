#include "rfad/lof.hpp"

#include "rfad/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace rfad {
namespace {

struct Neighbourhood {
  double kdist = 0.0;
  std::vector<Eigen::Index> members;
};

// k-distance and tie-inclusive k-neighbourhood from a vector of distances.
// Entries equal to +inf are excluded (used to drop the point itself).
Neighbourhood neighbourhood(const Eigen::VectorXd &dist, int k) {
  std::vector<double> sorted(dist.data(), dist.data() + dist.size());
  std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end());
  Neighbourhood n;
  n.kdist = sorted[static_cast<std::size_t>(k - 1)];
  for (Eigen::Index j = 0; j < dist.size(); ++j)
    if (dist[j] <= n.kdist) n.members.push_back(j);
  return n;
}

Eigen::VectorXd distances_to(const RowMatrix &points, const Eigen::RowVectorXd &z, Metric metric) {
  if (metric == Metric::Manhattan) return (points.rowwise() - z).cwiseAbs().rowwise().sum();
  return (points.rowwise() - z).rowwise().norm();
}

} // namespace

const char *to_string(Metric m) noexcept { return m == Metric::Manhattan ? "manhattan" : "euclidean"; }
const char *to_string(Prediction p) noexcept { return p == Prediction::Outlier ? "Outlier" : "Inlier"; }

Metric parse_metric(const std::string &text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "manhattan") return Metric::Manhattan;
  if (lower == "euclidean") return Metric::Euclidean;
  throw Error(Errc::ConfigError, "unknown metric '" + text + "'");
}

Scaler Scaler::identity(Eigen::Index dims) {
  return {Eigen::RowVectorXd::Zero(dims), Eigen::RowVectorXd::Ones(dims)};
}

Scaler Scaler::fit(const RowMatrix &data) {
  Scaler s;
  s.mean = data.colwise().mean();
  s.scale = ((data.rowwise() - s.mean).array().square().colwise().sum() / static_cast<double>(data.rows()))
                .sqrt()
                .matrix();
  for (auto &v : s.scale)
    if (!(v > 0.0)) v = 1.0;
  return s;
}

LofModel fit_lof(const RowMatrix &train, const LofParams &params) {
  if (params.k < 1 || train.rows() < params.k + 1)
    throw Error(Errc::NotEnoughTrainingData, "k=" + std::to_string(params.k) + " needs more than " +
                                                 std::to_string(params.k) + " training rows, got " +
                                                 std::to_string(train.rows()));
  if (train.cols() == 0) throw Error(Errc::ShapeError, "training rows have no features");
  if (!train.allFinite()) throw Error(Errc::NonFiniteFeature, "training matrix contains a non-finite value");
  if (!std::isfinite(params.threshold)) throw Error(Errc::ConfigError, "threshold must be finite");

  LofModel m;
  m.params_ = params;
  m.raw_ = train;
  m.scaler_ = params.standardize ? Scaler::fit(train) : Scaler::identity(train.cols());
  m.scaled_ = (train.rowwise() - m.scaler_.mean).array().rowwise() / m.scaler_.scale.array();

  const Eigen::Index n = train.rows();
  RowMatrix dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist.row(i) = distances_to(m.scaled_, m.scaled_.row(i), params.metric).transpose();
    dist(i, i) = std::numeric_limits<double>::infinity();
  }

  std::vector<Neighbourhood> hoods(static_cast<std::size_t>(n));
  m.kdist_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    hoods[i] = neighbourhood(dist.row(i).transpose(), params.k);
    m.kdist_[i] = hoods[i].kdist;
  }
  m.lrd_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double reach = 0.0;
    for (auto o : hoods[i].members) reach += std::max(m.kdist_[o], dist(i, o));
    m.lrd_[i] = 1.0 / (reach / static_cast<double>(hoods[i].members.size()) + kLrdEpsilon);
  }
  return m;
}

double LofModel::score_scaled(const Eigen::RowVectorXd &z) const {
  const Eigen::VectorXd dist = distances_to(scaled_, z, params_.metric);
  const auto hood = neighbourhood(dist, params_.k);
  double reach = 0.0, neighbour_lrd = 0.0;
  for (auto o : hood.members) {
    reach += std::max(kdist_[o], dist[o]);
    neighbour_lrd += lrd_[o];
  }
  const auto count = static_cast<double>(hood.members.size());
  const double query_lrd = 1.0 / (reach / count + kLrdEpsilon);
  return (neighbour_lrd / count) / query_lrd;
}

Eigen::VectorXd LofModel::score_rows(const RowMatrix &queries, unsigned jobs) const {
  Eigen::VectorXd out(queries.rows());
  parallel_for(static_cast<std::size_t>(queries.rows()), jobs,
               [&](std::size_t i) { out[static_cast<Eigen::Index>(i)] = score(queries.row(static_cast<Eigen::Index>(i))); });
  return out;
}

LofModel LofModel::from_state(LofParams params, Scaler scaler, RowMatrix raw, Eigen::VectorXd kdist,
                              Eigen::VectorXd lrd) {
  const Eigen::Index n = raw.rows(), d = raw.cols();
  if (params.k < 1 || n < params.k + 1)
    throw Error(Errc::NotEnoughTrainingData, "persisted model has too few training rows for k");
  if (scaler.mean.size() != d || scaler.scale.size() != d || kdist.size() != n || lrd.size() != n)
    throw Error(Errc::ShapeError, "persisted model arrays have inconsistent sizes");
  if (!raw.allFinite() || !kdist.allFinite() || !lrd.allFinite() || !(lrd.array() > 0.0).all() ||
      !(scaler.scale.array() > 0.0).all())
    throw Error(Errc::NonFiniteFeature, "persisted model contains invalid values");
  LofModel m;
  m.params_ = params;
  m.scaler_ = std::move(scaler);
  m.raw_ = std::move(raw);
  m.scaled_ = (m.raw_.rowwise() - m.scaler_.mean).array().rowwise() / m.scaler_.scale.array();
  m.kdist_ = std::move(kdist);
  m.lrd_ = std::move(lrd);
  return m;
}

} // namespace rfad
