#include "lodct/ctgeom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lodct {

namespace {

constexpr double kPi = std::numbers::pi;

// Modified Shepp-Logan, the widely published high-contrast variant:
// value, half axes, center, rotation (deg, ccw).
constexpr std::array<PhantomEllipse, 10> kSheppLogan = {{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0},
    {-0.2, 0.11, 0.31, 0.22, 0.0, -18.0},
    {-0.2, 0.16, 0.41, -0.22, 0.0, 18.0},
    {0.1, 0.21, 0.25, 0.0, 0.35, 0.0},
    {0.1, 0.046, 0.046, 0.0, 0.1, 0.0},
    {0.1, 0.046, 0.046, 0.0, -0.1, 0.0},
    {0.1, 0.046, 0.023, -0.08, -0.605, 0.0},
    {0.1, 0.023, 0.023, 0.0, -0.605, 0.0},
    {0.1, 0.023, 0.046, 0.06, -0.605, 0.0},
}};

// Runs fn(begin..end) over [0, count), split into contiguous chunks. Each
// index is processed exactly once, so results do not depend on the thread
// count.
void parallel_chunks(int count, int threads,
                     const std::function<void(int, int)>& fn) {
  threads = std::clamp(threads, 1, count);
  if (threads == 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const int chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int begin = t * chunk;
    const int end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& th : pool) th.join();
}

double sinc(double t) {
  if (std::abs(t) < 1e-8) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

// Continuous impulse response of the band-limited ramp |f|, cutoff F cycles
// per unit: 2F^2 (sinc(w) - sinc^2(w/2)/2) with w = 2*pi*F*x. The sinc form
// stays accurate arbitrarily close to x=0, where the naive (cos(w)-1)/x^2
// expression cancels catastrophically.
double ramp_response(double x, double F) {
  const double w = 2.0 * kPi * F * x;
  const double half = sinc(0.5 * w);
  return 2.0 * F * F * (sinc(w) - 0.5 * half * half);
}

double apodized_response(const ReconFilter& filt, double x, double F) {
  if (filt.kind == ReconFilter::Kind::ramp) return ramp_response(x, F);
  // Hann window in frequency equals a three-point average of the ramp
  // response at spacing 1/(2F).
  const double s = 0.5 / F;
  return 0.5 * ramp_response(x, F) +
         0.25 * (ramp_response(x - s, F) + ramp_response(x + s, F));
}

}  // namespace

std::span<const PhantomEllipse> shepp_logan_ellipses() { return kSheppLogan; }

Image2D shepp_logan(int n) {
  if (n < 16) {
    throw std::invalid_argument("shepp_logan: size must be >= 16, got " +
                                std::to_string(n));
  }
  Image2D image(n, n);
  const double h = 2.0 / n;

  struct Prepared {
    double cx, cy, cos_phi, sin_phi, inv_a2, inv_b2, value;
  };
  std::array<Prepared, kSheppLogan.size()> prepared;
  for (std::size_t e = 0; e < kSheppLogan.size(); ++e) {
    const PhantomEllipse& el = kSheppLogan[e];
    const double phi = el.rotation_deg * kPi / 180.0;
    prepared[e] = {el.center_x,
                   el.center_y,
                   std::cos(phi),
                   std::sin(phi),
                   1.0 / (el.half_axis_x * el.half_axis_x),
                   1.0 / (el.half_axis_y * el.half_axis_y),
                   el.value};
  }

  for (int i = 0; i < n; ++i) {
    const double y = 1.0 - (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double x = -1.0 + (j + 0.5) * h;
      double v = 0.0;
      for (const Prepared& el : prepared) {
        const double dx = x - el.cx;
        const double dy = y - el.cy;
        const double u = dx * el.cos_phi + dy * el.sin_phi;
        const double w = -dx * el.sin_phi + dy * el.cos_phi;
        if (u * u * el.inv_a2 + w * w * el.inv_b2 <= 1.0) v += el.value;
      }
      image(i, j) = v;
    }
  }
  return image;
}

double FanBeamGeometry::half_fan() const {
  if (fan_half_angle > 0.0) return fan_half_angle;
  return std::asin(1.02 / source_to_center);
}

double FanBeamGeometry::view_angle(int view) const {
  return 2.0 * kPi * view / n_angles;
}

void FanBeamGeometry::validate() const {
  if (n_bins < 2 || n_angles < 2) {
    throw std::invalid_argument("FanBeamGeometry: need at least 2 bins and 2 angles");
  }
  if (!(source_to_center > 1.0)) {
    throw std::invalid_argument(
        "FanBeamGeometry: source_to_center must exceed 1 half-width");
  }
  if (!(half_fan() > 0.0) || !(half_fan() < kPi / 2.0)) {
    throw std::invalid_argument("FanBeamGeometry: fan half-angle out of (0, pi/2)");
  }
}

std::vector<double> recon_kernel(const ReconFilter& filt, double spacing,
                                 int half_len) {
  if (!(filt.cutoff > 0.0) || filt.cutoff > 1.0) {
    throw std::invalid_argument("ReconFilter: cutoff must be in (0, 1]");
  }
  const double F = filt.cutoff / (2.0 * spacing);
  std::vector<double> kernel(static_cast<std::size_t>(2 * half_len + 1));
  for (int n = -half_len; n <= half_len; ++n) {
    const double gamma = n * spacing;
    // Equiangular-arc correction (gamma/sin(gamma))^2; unity at the center.
    const double arc = n == 0 ? 1.0 : (gamma / std::sin(gamma)) *
                                          (gamma / std::sin(gamma));
    kernel[static_cast<std::size_t>(n + half_len)] =
        0.5 * arc * apodized_response(filt, gamma, F);
  }
  return kernel;
}

Image2D forward_project_fan(const Image2D& image, const FanBeamGeometry& geom,
                            int threads) {
  geom.validate();
  if (image.rows() != image.cols()) {
    throw std::invalid_argument("forward_project_fan: image must be square");
  }

  const int n = image.rows();
  const double h = 2.0 / n;
  const double D = geom.source_to_center;
  Image2D sino(geom.n_bins, geom.n_angles);

  parallel_chunks(geom.n_angles, threads, [&](int view_begin, int view_end) {
    for (int a = view_begin; a < view_end; ++a) {
      const double beta = geom.view_angle(a);
      const double sx = D * std::cos(beta);
      const double sy = D * std::sin(beta);
      for (int b = 0; b < geom.n_bins; ++b) {
        const double gamma = geom.bin_angle(b);
        const double dx = -std::cos(beta + gamma);
        const double dy = -std::sin(beta + gamma);

        double acc = 0.0;
        if (std::abs(dx) >= std::abs(dy)) {
          const double slope = dy / dx;
          for (int j = 0; j < n; ++j) {
            const double x = -1.0 + (j + 0.5) * h;
            const double y = sy + (x - sx) * slope;
            const double pr = (1.0 - y) / h - 0.5;
            const int r0 = static_cast<int>(std::floor(pr));
            const double w = pr - r0;
            if (r0 >= 0 && r0 < n) acc += (1.0 - w) * image(r0, j);
            if (r0 + 1 >= 0 && r0 + 1 < n) acc += w * image(r0 + 1, j);
          }
          acc *= h / std::abs(dx);
        } else {
          const double slope = dx / dy;
          for (int i = 0; i < n; ++i) {
            const double y = 1.0 - (i + 0.5) * h;
            const double x = sx + (y - sy) * slope;
            const double pc = (x + 1.0) / h - 0.5;
            const int c0 = static_cast<int>(std::floor(pc));
            const double w = pc - c0;
            if (c0 >= 0 && c0 < n) acc += (1.0 - w) * image(i, c0);
            if (c0 + 1 >= 0 && c0 + 1 < n) acc += w * image(i, c0 + 1);
          }
          acc *= h / std::abs(dy);
        }
        sino(b, a) = acc;
      }
    }
  });
  return sino;
}

Image2D fbp_fan(const Image2D& sino, const FanBeamGeometry& geom,
                const ReconFilter& filt, int n_out, int threads) {
  geom.validate();
  if (sino.rows() != geom.n_bins || sino.cols() != geom.n_angles) {
    throw std::invalid_argument(
        "fbp_fan: sinogram is " + std::to_string(sino.rows()) + "x" +
        std::to_string(sino.cols()) + ", geometry expects " +
        std::to_string(geom.n_bins) + "x" + std::to_string(geom.n_angles));
  }
  if (n_out < 1) {
    throw std::invalid_argument("fbp_fan: output size must be positive");
  }

  const int n_bins = geom.n_bins;
  const int n_angles = geom.n_angles;
  const double D = geom.source_to_center;
  const double dgamma = geom.bin_spacing();
  const std::vector<double> kernel = recon_kernel(filt, dgamma, n_bins - 1);

  std::vector<double> cos_gamma(static_cast<std::size_t>(n_bins));
  for (int b = 0; b < n_bins; ++b) cos_gamma[b] = std::cos(geom.bin_angle(b));

  // Cosine pre-weight, then per-view kernel convolution.
  Image2D filtered(n_bins, n_angles);
  parallel_chunks(n_angles, threads, [&](int view_begin, int view_end) {
    std::vector<double> weighted(static_cast<std::size_t>(n_bins));
    for (int a = view_begin; a < view_end; ++a) {
      for (int b = 0; b < n_bins; ++b) {
        weighted[b] = sino(b, a) * D * cos_gamma[b];
      }
      for (int k = 0; k < n_bins; ++k) {
        const double* g = kernel.data() + (n_bins - 1) + k;
        double acc = 0.0;
        for (int m = 0; m < n_bins; ++m) acc += g[-m] * weighted[m];
        filtered(k, a) = acc * dgamma;
      }
    }
  });

  // Distance-weighted backprojection with linear detector interpolation.
  Image2D out(n_out, n_out);
  const double h = 2.0 / n_out;
  const double dbeta = 2.0 * kPi / n_angles;
  const double bin_origin = 0.5 * n_bins - 0.5;

  std::vector<double> cos_beta(static_cast<std::size_t>(n_angles));
  std::vector<double> sin_beta(static_cast<std::size_t>(n_angles));
  for (int a = 0; a < n_angles; ++a) {
    cos_beta[a] = std::cos(geom.view_angle(a));
    sin_beta[a] = std::sin(geom.view_angle(a));
  }

  parallel_chunks(n_out, threads, [&](int row_begin, int row_end) {
    for (int i = row_begin; i < row_end; ++i) {
      const double y = 1.0 - (i + 0.5) * h;
      for (int j = 0; j < n_out; ++j) {
        const double x = -1.0 + (j + 0.5) * h;
        double acc = 0.0;
        for (int a = 0; a < n_angles; ++a) {
          const double cb = cos_beta[a];
          const double sb = sin_beta[a];
          const double along = D - (x * cb + y * sb);
          const double across = x * sb - y * cb;
          const double gamma = std::atan(across / along);
          const double u = gamma / dgamma + bin_origin;
          const int b0 = static_cast<int>(std::floor(u));
          double q = 0.0;
          if (b0 >= 0 && b0 < n_bins) q += (1.0 - (u - b0)) * filtered(b0, a);
          if (b0 + 1 >= 0 && b0 + 1 < n_bins) {
            q += (u - b0) * filtered(b0 + 1, a);
          }
          acc += q / (along * along + across * across);
        }
        out(i, j) = acc * dbeta;
      }
    }
  });
  return out;
}

}  // namespace lodct
