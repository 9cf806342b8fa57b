#ifndef LODCT_FILTERS_HPP
#define LODCT_FILTERS_HPP

#include "lodct/boxstats.hpp"
#include "lodct/grid.hpp"

namespace lodct {

/// Configuration shared by the LLMMSE estimators. One radius serves both the
/// local-statistics window and the blockwise coefficient-averaging window.
struct FilterConfig {
  BoxRadius radius{1};
  /// Floor applied to the local variance in the gain division.
  double variance_floor = 1e-12;
  /// Clamp the gain a(i,j) into [0,1]. Raw Eq.-style behavior (which can
  /// amplify noise where the variance estimate undershoots) is available by
  /// switching this off.
  bool clamp_coefficients = true;
};

/// Gain/offset maps of the linear estimate p_hat = a*q + b.
struct CoefficientMaps {
  Image2D a;
  Image2D b;
};

/// Median over the clipped 3x3 neighborhood. Even-count border windows take
/// the lower-middle order statistic.
Image2D median3x3(const Image2D& image);

/// a = (v_q - sigma2) / max(v_q, floor), optionally clamped to [0,1];
/// b = (1 - a) * box_mean(q).
CoefficientMaps compute_coefficients(const Image2D& noisy,
                                     const Image2D& noise_variance,
                                     const FilterConfig& cfg = {});

/// Pointwise LLMMSE estimate a*q + b.
Image2D llmmse_point(const Image2D& noisy, const Image2D& noise_variance,
                     const FilterConfig& cfg = {});

/// Blockwise LLMMSE: the gain/offset maps are box-averaged before being
/// applied, which averages the estimates of all overlapping blocks covering
/// each pixel. Cost is independent of the radius.
Image2D llmmse_block(const Image2D& noisy, const Image2D& noise_variance,
                     const FilterConfig& cfg = {});

}  // namespace lodct

#endif
