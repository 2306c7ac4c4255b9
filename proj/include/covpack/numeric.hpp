#pragma once

#include <Eigen/Core>

namespace covpack {

// Empty-safe reductions: Eigen's redux asserts on size-0 operands.
inline double vec_sum(const Eigen::VectorXd& v) {
  return v.size() > 0 ? v.sum() : 0.0;
}

inline double vec_max_or(const Eigen::VectorXd& v, double fallback) {
  return v.size() > 0 ? v.maxCoeff() : fallback;
}

inline bool bitwise_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

}  // namespace covpack
