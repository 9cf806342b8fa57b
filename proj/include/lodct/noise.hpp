#ifndef LODCT_NOISE_HPP
#define LODCT_NOISE_HPP

#include <cstdint>
#include <vector>

#include "lodct/boxstats.hpp"
#include "lodct/grid.hpp"

namespace lodct {

/// Parameters of the nonstationary Gaussian sinogram noise model
/// q = p + sqrt(f * exp(p / eta)) * u, with u standard normal.
struct NoiseParams {
  double f = 22500.0;
  double eta = 22000.0;
  /// Multiplies the estimated noise *variance* (not the std).
  double variance_scale = 0.8;
  std::uint64_t seed = 1;
  /// Optional per-detector-bin system factor; empty means the scalar f is
  /// replicated across bins. When set, length must equal the sinogram's row
  /// count.
  std::vector<double> f_per_bin;

  double f_for_bin(int bin) const {
    return f_per_bin.empty() ? f : f_per_bin[static_cast<std::size_t>(bin)];
  }

  void validate(int n_bins) const;
};

/// Counter-based generator: a 64-bit mix of (seed, counter). The mixing
/// function is the splitmix64 finalizer; the algorithm is frozen by golden
/// tests so simulated experiments stay reproducible across platforms.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter);

/// Standard normal deviate for stream position `index`, via Box-Muller on
/// counters 2*index and 2*index+1. Pure function of (seed, index).
double standard_normal(std::uint64_t seed, std::uint64_t index);

/// Adds Eq.-style nonstationary Gaussian noise to a clean sinogram. The
/// deviate at (i,j) depends only on (seed, i, j), so output is deterministic.
/// Throws NumericError when f*exp(p/eta) leaves the finite double range.
Image2D add_noise(const Image2D& clean, const NoiseParams& params);

/// Plug-in noise variance map:
/// sigma2(i,j) = variance_scale * f_i * exp(box_mean(noisy, r)(i,j) / eta).
Image2D estimate_noise_variance(const Image2D& noisy, const NoiseParams& params,
                                BoxRadius r = BoxRadius(1));

}  // namespace lodct

#endif
