#include <doctest.h>

#include "ponfh/geometry.hpp"
#include "ponfh/kmeans.hpp"
#include "ponfh/random.hpp"

#include <set>

using namespace ponfh;

TEST_CASE("pairwise distances work for float and double") {
  PointMatrix<double> a(2, 2), b(1, 2);
  a << 0, 0, 3, 4;
  b << 0, 0;
  const auto d = pairwise_distances(a, b);
  CHECK(d(0, 0) == 0.0);
  CHECK(d(1, 0) == doctest::Approx(5.0));
  PointMatrix<float> af = a.cast<float>();
  CHECK(pairwise_distances(af, b.cast<float>())(1, 0) == doctest::Approx(5.0f));
}

TEST_CASE("nearest row breaks ties by lowest index") {
  PointMatrix<double> c(3, 2);
  c << 1, 0, -1, 0, 0, 5;
  CHECK(nearest_row(c, Eigen::Vector2d(0, 0)) == 0);
  CHECK(nearest_row(c, Eigen::Vector2d(0, 4)) == 2);
}

TEST_CASE("rng is reproducible and streams differ") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) == derive_seed(1, {2}));
  Rng c(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(c.below(7) < 7u);
  }
  std::vector<int> v{0, 1, 2, 3, 4, 5};
  c.shuffle(v);
  CHECK(std::set<int>(v.begin(), v.end()).size() == 6);
}

TEST_CASE("kmeans recovers separated blobs") {
  Rng rng(3);
  PointMatrix<double> pts(60, 2);
  const double cx[3] = {0, 1000, 0}, cy[3] = {0, 0, 1000};
  for (int i = 0; i < 60; ++i) {
    pts(i, 0) = cx[i % 3] + rng.uniform(-10, 10);
    pts(i, 1) = cy[i % 3] + rng.uniform(-10, 10);
  }
  const auto res = kmeans<double>(pts, 3, 100, 1e-6, 9);
  for (int i = 3; i < 60; ++i) CHECK(res.assignment[i] == res.assignment[i % 3]);
  CHECK(std::set<int>(res.assignment.begin(), res.assignment.end()).size() == 3);
  CHECK(res.inertia < 60 * 200.0);
}

TEST_CASE("kmeans edge cases") {
  PointMatrix<double> pts(4, 2);
  pts << 1, 1, 1, 1, 1, 1, 1, 1;
  const auto res = kmeans<double>(pts, 2, 10, 1e-6, 1);
  CHECK(res.inertia == 0.0);
  CHECK_THROWS_AS(kmeans<double>(pts, 5, 10, 1e-6, 1), std::invalid_argument);
  CHECK_THROWS_AS(kmeans<double>(pts, 0, 10, 1e-6, 1), std::invalid_argument);
  const auto a = kmeans<double>(pts, 1, 10, 1e-6, 1);
  CHECK(a.centers(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("kmeans is deterministic per seed") {
  Rng rng(8);
  PointMatrix<double> pts(40, 2);
  for (int i = 0; i < 40; ++i) pts.row(i) << rng.uniform(0, 100), rng.uniform(0, 100);
  const auto a = kmeans<double>(pts, 4, 50, 1e-9, 77);
  const auto b = kmeans<double>(pts, 4, 50, 1e-9, 77);
  CHECK(a.assignment == b.assignment);
  CHECK(a.centers == b.centers);
}
