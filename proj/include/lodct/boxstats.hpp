#ifndef LODCT_BOXSTATS_HPP
#define LODCT_BOXSTATS_HPP

#include "lodct/grid.hpp"

namespace lodct {

/// Square window radius for local statistics. The window at (i,j) is the set
/// of indices within Chebyshev distance r, clipped to the grid, so windows
/// shrink at the borders. r=0 degenerates to the pixel itself.
class BoxRadius {
public:
  explicit BoxRadius(int r);
  int value() const { return r_; }

private:
  int r_;
};

/// Moving sum along each row: out(i,j) = sum of in(i, j-r .. j+r), clipped.
/// Incremental (add entering, subtract leaving), so per-element cost does not
/// depend on r.
Image2D moving_sum_rows(const Image2D& image, BoxRadius r);

/// Moving sum along each column; same contract as moving_sum_rows.
Image2D moving_sum_cols(const Image2D& image, BoxRadius r);

/// Full box sum: row pass followed by column pass.
Image2D box_sum(const Image2D& image, BoxRadius r);

/// Clipped window element count |w| per pixel, computed by box-summing an
/// all-ones grid.
Image2D box_count(int rows, int cols, BoxRadius r);

/// Local mean over the clipped window.
Image2D box_mean(const Image2D& image, BoxRadius r);

/// Local population variance over the clipped window,
/// mean(x^2) - mean(x)^2, clamped below at zero.
Image2D box_variance(const Image2D& image, BoxRadius r);

}  // namespace lodct

#endif
