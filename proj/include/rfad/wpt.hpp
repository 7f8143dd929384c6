#pragma once

#include "rfad/error.hpp"
#include "rfad/signal.hpp"

#include <Eigen/Core>

#include <cmath>
#include <utility>

namespace rfad {

template <typename Scalar> using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// The four level-2 packets of a two-level Haar wavelet packet tree.
/// a1/d1 split the low-pass branch, a2/d2 split the high-pass branch.
template <typename Scalar> struct BasicPacketSet {
  VectorX<Scalar> a1, d1, a2, d2;

  Scalar energy() const { return a1.squaredNorm() + d1.squaredNorm() + a2.squaredNorm() + d2.squaredNorm(); }
};

using PacketSet = BasicPacketSet<double>;

/// One orthonormal Haar analysis stage: pairwise sum and difference scaled
/// by 1/sqrt(2), decimated by two. A trailing odd sample is dropped.
template <typename Derived>
std::pair<VectorX<typename Derived::Scalar>, VectorX<typename Derived::Scalar>>
haar_step(const Eigen::MatrixBase<Derived> &x) {
  using Scalar = typename Derived::Scalar;
  static_assert(Derived::IsVectorAtCompileTime, "haar_step expects a vector");
  if (x.size() < 2) throw Error(Errc::TooShort, "haar_step needs at least two samples");
  const Eigen::Index half = x.size() / 2;
  VectorX<Scalar> approx(half), detail(half);
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  for (Eigen::Index k = 0; k < half; ++k) {
    const Scalar lo = x(2 * k), hi = x(2 * k + 1);
    approx(k) = (lo + hi) * inv_sqrt2;
    detail(k) = (lo - hi) * inv_sqrt2;
  }
  return {std::move(approx), std::move(detail)};
}

/// Two-level wavelet packet decomposition: both level-1 sub-bands are split
/// again, giving four packets of length floor(floor(N/2)/2).
template <typename Derived> BasicPacketSet<typename Derived::Scalar> wpt2(const Eigen::MatrixBase<Derived> &x) {
  if (x.size() < 4) throw Error(Errc::TooShort, "wpt2 needs at least four samples");
  auto [low, high] = haar_step(x);
  auto [a1, d1] = haar_step(low);
  auto [a2, d2] = haar_step(high);
  return {std::move(a1), std::move(d1), std::move(a2), std::move(d2)};
}

inline PacketSet wpt2(const Signal &signal) { return wpt2(signal.samples()); }

} // namespace rfad
