#pragma once

// Explicit orthogonal basis matrix of the two-level Haar packet tree, built
// from the analysis filters g = (1, 1)/sqrt2 and h = (1, -1)/sqrt2 followed
// by decimation. Rows are ordered a1 | d1 | a2 | d2.

#include <Eigen/Dense>

#include <cmath>

namespace oracle {

/// One analysis stage on n samples: low-pass rows first, then high-pass.
inline Eigen::MatrixXd haar_stage(Eigen::Index n) {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n / 2; ++k) {
    m(k, 2 * k) = r;
    m(k, 2 * k + 1) = r;
    m(n / 2 + k, 2 * k) = r;
    m(n / 2 + k, 2 * k + 1) = -r;
  }
  return m;
}

inline Eigen::MatrixXd packet_basis(Eigen::Index n) {
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(n, n);
  second.topLeftCorner(n / 2, n / 2) = haar_stage(n / 2);
  second.bottomRightCorner(n / 2, n / 2) = haar_stage(n / 2);
  return second * haar_stage(n);
}

} // namespace oracle
