// Test-only brute-force oracles. These deliberately recompute everything with
// plain double loops and direct formulas, independent of the library's
// moving-sum / separable implementations.
#ifndef LODCT_TESTS_SUPPORT_ORACLES_HPP
#define LODCT_TESTS_SUPPORT_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lodct/grid.hpp"
#include "lodct/noise.hpp"

namespace oracle {

inline lodct::Image2D random_grid(int rows, int cols, std::uint64_t seed,
                                  double lo = 0.0, double hi = 1.0) {
  lodct::Image2D grid(rows, cols);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double u =
        static_cast<double>(lodct::counter_hash(seed, k) >> 11) * 0x1.0p-53;
    grid.data()[k] = lo + (hi - lo) * u;
  }
  return grid;
}

inline lodct::Image2D moving_sum_rows(const lodct::Image2D& in, int r) {
  lodct::Image2D out(in.rows(), in.cols());
  for (int i = 0; i < in.rows(); ++i) {
    for (int j = 0; j < in.cols(); ++j) {
      double s = 0.0;
      for (int t = std::max(0, j - r); t <= std::min(in.cols() - 1, j + r); ++t) {
        s += in(i, t);
      }
      out(i, j) = s;
    }
  }
  return out;
}

inline double window_mean(const lodct::Image2D& in, int i, int j, int r) {
  double s = 0.0;
  int n = 0;
  for (int u = std::max(0, i - r); u <= std::min(in.rows() - 1, i + r); ++u) {
    for (int v = std::max(0, j - r); v <= std::min(in.cols() - 1, j + r); ++v) {
      s += in(u, v);
      ++n;
    }
  }
  return s / n;
}

inline double window_variance(const lodct::Image2D& in, int i, int j, int r) {
  const double mean = window_mean(in, i, j, r);
  double s = 0.0;
  int n = 0;
  for (int u = std::max(0, i - r); u <= std::min(in.rows() - 1, i + r); ++u) {
    for (int v = std::max(0, j - r); v <= std::min(in.cols() - 1, j + r); ++v) {
      const double d = in(u, v) - mean;
      s += d * d;
      ++n;
    }
  }
  return s / n;
}

inline lodct::Image2D box_mean(const lodct::Image2D& in, int r) {
  lodct::Image2D out(in.rows(), in.cols());
  for (int i = 0; i < in.rows(); ++i) {
    for (int j = 0; j < in.cols(); ++j) out(i, j) = window_mean(in, i, j, r);
  }
  return out;
}

inline lodct::Image2D box_variance(const lodct::Image2D& in, int r) {
  lodct::Image2D out(in.rows(), in.cols());
  for (int i = 0; i < in.rows(); ++i) {
    for (int j = 0; j < in.cols(); ++j) {
      out(i, j) = window_variance(in, i, j, r);
    }
  }
  return out;
}

inline lodct::Image2D median3x3(const lodct::Image2D& in) {
  lodct::Image2D out(in.rows(), in.cols());
  for (int i = 0; i < in.rows(); ++i) {
    for (int j = 0; j < in.cols(); ++j) {
      std::vector<double> window;
      for (int u = std::max(0, i - 1); u <= std::min(in.rows() - 1, i + 1); ++u) {
        for (int v = std::max(0, j - 1); v <= std::min(in.cols() - 1, j + 1);
             ++v) {
          window.push_back(in(u, v));
        }
      }
      std::sort(window.begin(), window.end());
      out(i, j) = window[(window.size() - 1) / 2];
    }
  }
  return out;
}

inline double gain_at(const lodct::Image2D& q, const lodct::Image2D& sigma2,
                      int i, int j, int r, double floor, bool clamp) {
  const double v = window_variance(q, i, j, r);
  double a = (v - sigma2(i, j)) / std::max(v, floor);
  if (clamp) a = std::clamp(a, 0.0, 1.0);
  return a;
}

/// Direct overlapping-block average: (1/|w|) sum over all blocks w_k
/// containing (i,j) of a_k*q(i,j) + b_k, with the block statistics computed
/// brute-force at each block center. Meaningful at pixels >= 2r away from
/// every border, where all contributing windows are complete.
inline double blockwise_estimate(const lodct::Image2D& q,
                                 const lodct::Image2D& sigma2, int i, int j,
                                 int r, double floor, bool clamp) {
  double acc = 0.0;
  int count = 0;
  for (int s = i - r; s <= i + r; ++s) {
    for (int t = j - r; t <= j + r; ++t) {
      const double a = gain_at(q, sigma2, s, t, r, floor, clamp);
      const double b = (1.0 - a) * window_mean(q, s, t, r);
      acc += a * q(i, j) + b;
      ++count;
    }
  }
  return acc / count;
}

/// Bilinear sample of the image at continuous coordinates, image spanning
/// [-1,1]^2 with y up, zero outside.
inline double sample_bilinear(const lodct::Image2D& img, double x, double y) {
  const int n = img.rows();
  const double h = 2.0 / n;
  const double pr = (1.0 - y) / h - 0.5;
  const double pc = (x + 1.0) / h - 0.5;
  const int r0 = static_cast<int>(std::floor(pr));
  const int c0 = static_cast<int>(std::floor(pc));
  const double wr = pr - r0;
  const double wc = pc - c0;
  double v = 0.0;
  for (int dr = 0; dr <= 1; ++dr) {
    for (int dc = 0; dc <= 1; ++dc) {
      const int rr = r0 + dr;
      const int cc = c0 + dc;
      if (rr < 0 || rr >= n || cc < 0 || cc >= img.cols()) continue;
      v += (dr ? wr : 1.0 - wr) * (dc ? wc : 1.0 - wc) * img(rr, cc);
    }
  }
  return v;
}

/// Fine-step quadrature line integral from (sx,sy) along the unit direction
/// (dx,dy), midpoint rule with the given step in pixel units.
inline double ray_integral(const lodct::Image2D& img, double sx, double sy,
                           double dx, double dy, double step_pixels = 0.1) {
  const double h = 2.0 / img.rows();
  const double dt = step_pixels * h;
  const double t_max = std::hypot(sx, sy) + 2.0;
  double acc = 0.0;
  for (double t = 0.5 * dt; t < t_max; t += dt) {
    acc += sample_bilinear(img, sx + t * dx, sy + t * dy);
  }
  return acc * dt;
}

}  // namespace oracle

#endif
