#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "lodct/boxstats.hpp"
#include "support/oracles.hpp"

using namespace lodct;

TEST_CASE("radius validation") {
  CHECK_THROWS_AS(BoxRadius(-1), std::invalid_argument);
  CHECK(BoxRadius(0).value() == 0);
  CHECK(BoxRadius(7).value() == 7);
}

TEST_CASE("row moving sum, small cases") {
  Image2D row(1, 4);
  row(0, 0) = 1.0;
  row(0, 1) = 2.0;
  row(0, 2) = 3.0;
  row(0, 3) = 4.0;

  const Image2D summed = moving_sum_rows(row, BoxRadius(1));
  CHECK(summed(0, 0) == 3.0);
  CHECK(summed(0, 1) == 6.0);
  CHECK(summed(0, 2) == 9.0);
  CHECK(summed(0, 3) == 7.0);

  const Image2D identity = moving_sum_rows(row, BoxRadius(0));
  for (int j = 0; j < 4; ++j) CHECK(identity(0, j) == row(0, j));
}

TEST_CASE("row moving sum matches brute force on random rows") {
  const Image2D grid = oracle::random_grid(64, 57, 11, -3.0, 3.0);
  const Image2D fast = moving_sum_rows(grid, BoxRadius(5));
  const Image2D slow = oracle::moving_sum_rows(grid, 5);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(fast.data()[k] - slow.data()[k]) <= 1e-9);
  }
}

TEST_CASE("box mean trivial cases") {
  const Image2D constant = Image2D::filled(9, 7, 2.5);
  const Image2D mean = box_mean(constant, BoxRadius(3));
  for (double v : mean.data()) CHECK(v == doctest::Approx(2.5).epsilon(1e-15));

  // Single impulse: every clipped window contains the center pixel.
  Image2D impulse(5, 5, 0.0);
  impulse(2, 2) = 1.0;
  const Image2D spread = box_mean(impulse, BoxRadius(2));
  const Image2D counts = box_count(5, 5, BoxRadius(2));
  CHECK(counts(2, 2) == 25.0);
  CHECK(counts(0, 0) == 9.0);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(spread(i, j) == doctest::Approx(1.0 / counts(i, j)).epsilon(1e-14));
    }
  }
}

TEST_CASE("box mean is the identity at r=0") {
  const Image2D grid = oracle::random_grid(17, 23, 3, -5.0, 5.0);
  const Image2D mean = box_mean(grid, BoxRadius(0));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(mean.data()[k] == grid.data()[k]);  // bit-exact
  }
}

TEST_CASE("box variance trivial cases") {
  const Image2D constant = Image2D::filled(6, 6, 4.0);
  for (int r = 0; r <= 3; ++r) {
    const Image2D var = box_variance(constant, BoxRadius(r));
    for (double v : var.data()) CHECK(v <= 1e-12);
  }

  Image2D pair(1, 2);
  pair(0, 0) = 0.0;
  pair(0, 1) = 2.0;
  const Image2D var = box_variance(pair, BoxRadius(1));
  CHECK(var(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(var(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("oracle suite: 200 random grids, r in 0..4") {
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t seed = 1000 + trial;
    const int rows = 1 + static_cast<int>(counter_hash(seed, 1) % 32);
    const int cols = 1 + static_cast<int>(counter_hash(seed, 2) % 32);
    const int r = trial % 5;
    const Image2D grid = oracle::random_grid(rows, cols, seed, -2.0, 2.0);

    const Image2D mean = box_mean(grid, BoxRadius(r));
    const Image2D mean_oracle = oracle::box_mean(grid, r);
    const Image2D var = box_variance(grid, BoxRadius(r));
    const Image2D var_oracle = oracle::box_variance(grid, r);

    double worst_mean = 0.0;
    double worst_var = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      worst_mean = std::max(worst_mean,
                            std::abs(mean.data()[k] - mean_oracle.data()[k]));
      worst_var =
          std::max(worst_var, std::abs(var.data()[k] - var_oracle.data()[k]));
      CHECK(var.data()[k] >= 0.0);
    }
    CHECK(worst_mean <= 1e-9);
    CHECK(worst_var <= 1e-9);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("column pass matches brute force through box_sum") {
  const Image2D grid = oracle::random_grid(33, 21, 77, 0.0, 10.0);
  for (int r : {1, 2, 6}) {
    const Image2D sum = box_sum(grid, BoxRadius(r));
    for (int i = 0; i < grid.rows(); ++i) {
      for (int j = 0; j < grid.cols(); ++j) {
        double expected = 0.0;
        for (int u = std::max(0, i - r); u <= std::min(grid.rows() - 1, i + r);
             ++u) {
          for (int v = std::max(0, j - r);
               v <= std::min(grid.cols() - 1, j + r); ++v) {
            expected += grid(u, v);
          }
        }
        CHECK(std::abs(sum(i, j) - expected) <= 1e-9);
      }
    }
  }
}

TEST_CASE("wall time is radius-independent" * doctest::timeout(120)) {
  // Linear-time property: r=20 within 1.3x of r=1 on a 1024x1024 grid,
  // median of 9 runs.
  const Image2D grid = oracle::random_grid(1024, 1024, 5);
  auto median_time = [&](int r) {
    std::vector<double> times;
    Image2D sink(1, 1);
    for (int run = 0; run < 9; ++run) {
      const auto start = std::chrono::steady_clock::now();
      sink = box_mean(grid, BoxRadius(r));
      const auto stop = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
  };
  const double t1 = median_time(1);
  const double t20 = median_time(20);
  INFO("t1=", t1, " t20=", t20);
  CHECK(t20 <= 1.3 * t1);
}
