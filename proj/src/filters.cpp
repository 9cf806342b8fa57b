#include "lodct/filters.hpp"

#include <algorithm>
#include <stdexcept>

namespace lodct {

namespace {

void require_same_shape(const Image2D& a, const Image2D& b, const char* where) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(where) +
                                ": image and noise-variance shapes differ");
  }
}

}  // namespace

Image2D median3x3(const Image2D& image) {
  const int rows = image.rows();
  const int cols = image.cols();
  Image2D out(rows, cols);

  double window[9];
  for (int i = 0; i < rows; ++i) {
    const int i0 = std::max(0, i - 1);
    const int i1 = std::min(rows - 1, i + 1);
    for (int j = 0; j < cols; ++j) {
      const int j0 = std::max(0, j - 1);
      const int j1 = std::min(cols - 1, j + 1);
      int m = 0;
      for (int s = i0; s <= i1; ++s) {
        for (int t = j0; t <= j1; ++t) window[m++] = image(s, t);
      }
      // Lower-middle order statistic; for the full 9-window this is the
      // ordinary median.
      const int mid = (m - 1) / 2;
      std::nth_element(window, window + mid, window + m);
      out(i, j) = window[mid];
    }
  }
  return out;
}

CoefficientMaps compute_coefficients(const Image2D& noisy,
                                     const Image2D& noise_variance,
                                     const FilterConfig& cfg) {
  require_same_shape(noisy, noise_variance, "compute_coefficients");

  const Image2D local_variance = box_variance(noisy, cfg.radius);
  Image2D gain(noisy.rows(), noisy.cols());
  Image2D offset = box_mean(noisy, cfg.radius);

  for (std::size_t k = 0; k < gain.size(); ++k) {
    const double vq = local_variance.data()[k];
    double a = (vq - noise_variance.data()[k]) /
               std::max(vq, cfg.variance_floor);
    if (cfg.clamp_coefficients) a = std::clamp(a, 0.0, 1.0);
    gain.data()[k] = a;
    offset.data()[k] *= 1.0 - a;
  }
  return {std::move(gain), std::move(offset)};
}

Image2D llmmse_point(const Image2D& noisy, const Image2D& noise_variance,
                     const FilterConfig& cfg) {
  const CoefficientMaps maps = compute_coefficients(noisy, noise_variance, cfg);
  Image2D out(noisy.rows(), noisy.cols());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.data()[k] = maps.a.data()[k] * noisy.data()[k] + maps.b.data()[k];
  }
  return out;
}

Image2D llmmse_block(const Image2D& noisy, const Image2D& noise_variance,
                     const FilterConfig& cfg) {
  const CoefficientMaps maps = compute_coefficients(noisy, noise_variance, cfg);
  const Image2D gain_mean = box_mean(maps.a, cfg.radius);
  const Image2D offset_mean = box_mean(maps.b, cfg.radius);

  Image2D out(noisy.rows(), noisy.cols());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.data()[k] =
        gain_mean.data()[k] * noisy.data()[k] + offset_mean.data()[k];
  }
  return out;
}

}  // namespace lodct
