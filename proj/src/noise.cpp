#include "lodct/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lodct/errors.hpp"

namespace lodct {

void NoiseParams::validate(int n_bins) const {
  if (!(f > 0.0)) {
    throw std::invalid_argument("NoiseParams: f must be positive");
  }
  if (!(eta > 0.0)) {
    throw std::invalid_argument("NoiseParams: eta must be positive");
  }
  if (!(variance_scale > 0.0)) {
    throw std::invalid_argument("NoiseParams: variance_scale must be positive");
  }
  if (!f_per_bin.empty()) {
    if (static_cast<int>(f_per_bin.size()) != n_bins) {
      throw std::invalid_argument(
          "NoiseParams: f_per_bin has " + std::to_string(f_per_bin.size()) +
          " entries, sinogram has " + std::to_string(n_bins) +
          " detector bins");
    }
    for (double value : f_per_bin) {
      if (!(value > 0.0)) {
        throw std::invalid_argument(
            "NoiseParams: f_per_bin entries must be positive");
      }
    }
  }
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64: stream position seed + (counter+1)*golden-gamma, then the
  // standard finalizer. The +1 keeps (seed=0, counter=0) away from the
  // all-zero state.
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double standard_normal(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits1 = counter_hash(seed, 2 * index);
  const std::uint64_t bits2 = counter_hash(seed, 2 * index + 1);
  // 53-bit mantissas; u1 shifted into (0,1] so log stays finite.
  const double u1 = static_cast<double>((bits1 >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(bits2 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Image2D add_noise(const Image2D& clean, const NoiseParams& params) {
  params.validate(clean.rows());

  const int rows = clean.rows();
  const int cols = clean.cols();
  Image2D noisy(rows, cols);

  for (int i = 0; i < rows; ++i) {
    const double fi = params.f_for_bin(i);
    for (int j = 0; j < cols; ++j) {
      const std::uint64_t k =
          static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(cols) + j;
      const double p = clean(i, j);
      const double variance = fi * std::exp(p / params.eta);
      if (!std::isfinite(variance)) {
        throw NumericError("add_noise: f*exp(p/eta) overflows at bin " +
                           std::to_string(i) + ", angle " + std::to_string(j) +
                           " (p=" + std::to_string(p) + ")");
      }
      noisy(i, j) = p + std::sqrt(variance) * standard_normal(params.seed, k);
    }
  }
  return noisy;
}

Image2D estimate_noise_variance(const Image2D& noisy, const NoiseParams& params,
                                BoxRadius r) {
  params.validate(noisy.rows());

  Image2D sigma2 = box_mean(noisy, r);
  for (int i = 0; i < sigma2.rows(); ++i) {
    const double fi = params.f_for_bin(i);
    for (int j = 0; j < sigma2.cols(); ++j) {
      const double value =
          params.variance_scale * fi * std::exp(sigma2(i, j) / params.eta);
      if (!std::isfinite(value)) {
        throw NumericError(
            "estimate_noise_variance: f*exp(mean/eta) overflows at bin " +
            std::to_string(i) + ", angle " + std::to_string(j));
      }
      sigma2(i, j) = value;
    }
  }
  return sigma2;
}

}  // namespace lodct
