#pragma once

#include "rfad/error.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace rfad {

enum class Metric { Manhattan, Euclidean };
enum class Prediction { Inlier, Outlier };

const char *to_string(Metric m) noexcept;
const char *to_string(Prediction p) noexcept;
Metric parse_metric(const std::string &text);

template <typename A, typename B> void require_same_dimension(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
  if (a.size() != b.size())
    throw Error(Errc::DimensionMismatch,
                "dimension " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

/// L1 distance between two vectors of equal length (row or column).
template <typename A, typename B> double manhattan(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
  require_same_dimension(a, b);
  return (a.reshaped() - b.reshaped()).cwiseAbs().sum();
}

template <typename A, typename B> double euclidean(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
  require_same_dimension(a, b);
  return (a.reshaped() - b.reshaped()).norm();
}

template <typename A, typename B>
double distance(Metric metric, const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
  return metric == Metric::Manhattan ? manhattan(a, b) : euclidean(a, b);
}

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct LofParams {
  int k = 100;
  Metric metric = Metric::Manhattan;
  double threshold = 1.5;
  bool standardize = true;
};

/// Added to every mean reachability distance so duplicate-heavy data keeps a
/// finite local reachability density.
inline constexpr double kLrdEpsilon = 1e-10;

/// Per-column z-scoring fitted on the training matrix. Zero-spread columns
/// get scale 1.
struct Scaler {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;

  static Scaler identity(Eigen::Index dims);
  static Scaler fit(const RowMatrix &data);
  template <typename Derived> Eigen::RowVectorXd apply(const Eigen::MatrixBase<Derived> &x) const {
    return (x.reshaped().transpose() - mean).cwiseQuotient(scale);
  }
};

/// Fitted novelty detector. Queries are scored against the training
/// neighbourhoods only and never join the reference set. Immutable, so a
/// single model can be shared by concurrent scoring threads.
class LofModel {
public:
  const LofParams &params() const noexcept { return params_; }
  int k() const noexcept { return params_.k; }
  Metric metric() const noexcept { return params_.metric; }
  double threshold() const noexcept { return params_.threshold; }
  const Scaler &scaler() const noexcept { return scaler_; }
  /// Raw (unscaled) training rows.
  const RowMatrix &train() const noexcept { return raw_; }
  const Eigen::VectorXd &kdist() const noexcept { return kdist_; }
  const Eigen::VectorXd &lrd() const noexcept { return lrd_; }
  Eigen::Index dims() const noexcept { return raw_.cols(); }

  /// LOF score of a raw feature vector: mean neighbour lrd over the query's lrd.
  template <typename Derived> double score(const Eigen::MatrixBase<Derived> &x) const {
    if (x.size() != dims())
      throw Error(Errc::DimensionMismatch,
                  "query has " + std::to_string(x.size()) + " features, model expects " + std::to_string(dims()));
    if (!x.allFinite()) throw Error(Errc::NonFiniteFeature, "query contains a non-finite feature");
    return score_scaled(scaler_.apply(x));
  }

  /// Outlier iff score > threshold (a score equal to the threshold is an inlier).
  template <typename Derived> Prediction classify(const Eigen::MatrixBase<Derived> &x) const {
    return score(x) > params_.threshold ? Prediction::Outlier : Prediction::Inlier;
  }

  /// Scores every row of `queries`, optionally on several threads.
  Eigen::VectorXd score_rows(const RowMatrix &queries, unsigned jobs = 1) const;

  /// Rebuilds a model from persisted state, validating shapes.
  static LofModel from_state(LofParams params, Scaler scaler, RowMatrix raw, Eigen::VectorXd kdist,
                             Eigen::VectorXd lrd);

private:
  friend LofModel fit_lof(const RowMatrix &train, const LofParams &params);
  LofModel() = default;

  double score_scaled(const Eigen::RowVectorXd &z) const;

  LofParams params_;
  Scaler scaler_;
  RowMatrix raw_;
  RowMatrix scaled_;
  Eigen::VectorXd kdist_;
  Eigen::VectorXd lrd_;
};

/// Fits the detector on recognized-only feature rows. Neighbourhoods follow
/// the tie-inclusive definition: every point within the k-distance counts.
LofModel fit_lof(const RowMatrix &train, const LofParams &params);

/// JSON document with params, scaler, training rows, kdist and lrd.
std::string model_to_json(const LofModel &model);
LofModel model_from_json(const std::string &text);

} // namespace rfad
