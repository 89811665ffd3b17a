#pragma once

// Lloyd's k-means with k-means++ seeding over 2-D points stored row-wise.

#include "ponfh/geometry.hpp"
#include "ponfh/random.hpp"

#include <stdexcept>
#include <vector>

namespace ponfh {

template <typename Scalar>
struct KMeansResult {
  PointMatrix<Scalar> centers;
  std::vector<int> assignment;  // cluster per point
  int iterations = 0;
  Scalar inertia = 0;  // sum of squared distances to assigned centers
};

namespace detail {

template <typename Scalar>
void assign_points(const PointMatrix<Scalar>& points, const PointMatrix<Scalar>& centers,
                   std::vector<int>& assignment) {
  assignment.resize(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    assignment[static_cast<std::size_t>(i)] =
        static_cast<int>(nearest_row(centers, points.row(i).transpose()));
}

template <typename Scalar>
PointMatrix<Scalar> kmeanspp_seed(const PointMatrix<Scalar>& points, int k, Rng& rng) {
  const Eigen::Index n = points.rows();
  PointMatrix<Scalar> centers(k, 2);
  centers.row(0) = points.row(rng.index(static_cast<std::size_t>(n)));
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d2 =
      (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const Scalar total = d2.sum();
    Eigen::Index pick = 0;
    if (total > Scalar(0)) {
      const Scalar target = static_cast<Scalar>(rng.uniform01()) * total;
      Scalar acc = 0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc > target && d2(i) > Scalar(0)) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.index(static_cast<std::size_t>(n));
    }
    centers.row(c) = points.row(pick);
    d2 = d2.cwiseMin((points.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

}  // namespace detail

template <typename Scalar>
KMeansResult<Scalar> kmeans(const PointMatrix<Scalar>& points, int k, int max_iter,
                            Scalar tolerance, Rng& rng) {
  if (k < 1) throw std::invalid_argument("kmeans: K must be >= 1");
  if (k > points.rows()) throw std::invalid_argument("kmeans: K exceeds the number of points");

  KMeansResult<Scalar> res;
  res.centers = detail::kmeanspp_seed(points, k, rng);
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    detail::assign_points(points, res.centers, res.assignment);
    PointMatrix<Scalar> sums = PointMatrix<Scalar>::Zero(k, 2);
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const int c = res.assignment[static_cast<std::size_t>(i)];
      sums.row(c) += points.row(i);
      ++sizes[static_cast<std::size_t>(c)];
    }
    PointMatrix<Scalar> next(k, 2);
    for (int c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0)
        next.row(c) = sums.row(c) / static_cast<Scalar>(sizes[static_cast<std::size_t>(c)]);
      else
        next.row(c) = points.row(rng.index(static_cast<std::size_t>(points.rows())));
    }
    const Scalar shift = (next - res.centers).rowwise().norm().maxCoeff();
    res.centers = std::move(next);
    if (shift <= tolerance) break;
  }
  detail::assign_points(points, res.centers, res.assignment);
  res.inertia = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    res.inertia += (points.row(i) - res.centers.row(res.assignment[static_cast<std::size_t>(i)]))
                       .squaredNorm();
  return res;
}

template <typename Scalar>
KMeansResult<Scalar> kmeans(const PointMatrix<Scalar>& points, int k, int max_iter,
                            Scalar tolerance, std::uint64_t seed) {
  Rng rng(seed);
  return kmeans(points, k, max_iter, tolerance, rng);
}

}  // namespace ponfh
