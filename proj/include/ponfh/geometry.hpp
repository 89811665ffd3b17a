#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace ponfh {

template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

// Row i of the result is the i-th point.
template <typename Scalar>
PointMatrix<Scalar> stack_points(
    const std::vector<Eigen::Matrix<Scalar, 2, 1>>& points) {
  PointMatrix<Scalar> out(static_cast<Eigen::Index>(points.size()), 2);
  for (std::size_t i = 0; i < points.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  return out;
}

// Euclidean distances, result(i, j) = |a_i - b_j|.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
pairwise_distances(const Eigen::MatrixBase<DerivedA>& a,
                   const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j)
    out.col(j) = (a.rowwise() - b.row(j)).rowwise().norm();
  return out;
}

// Index of the row of `candidates` closest to `p`; lowest index on ties.
template <typename Derived, typename Point>
Eigen::Index nearest_row(const Eigen::MatrixBase<Derived>& candidates,
                         const Point& p) {
  Eigen::Index best = 0;
  auto best_d = std::numeric_limits<typename Derived::Scalar>::infinity();
  for (Eigen::Index i = 0; i < candidates.rows(); ++i) {
    const auto dx = candidates(i, 0) - p(0);
    const auto dy = candidates(i, 1) - p(1);
    const auto d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace ponfh
