#ifndef LODCT_CTGEOM_HPP
#define LODCT_CTGEOM_HPP

#include <span>
#include <vector>

#include "lodct/grid.hpp"

namespace lodct {

/// One phantom ellipse: additive intensity over the region
/// ((x-x0)cos(phi)+(y-y0)sin(phi))^2/a^2 + (-(x-x0)sin(phi)+(y-y0)cos(phi))^2/b^2 <= 1,
/// in image coordinates [-1,1]^2 with y up and phi counterclockwise.
struct PhantomEllipse {
  double value;
  double half_axis_x;
  double half_axis_y;
  double center_x;
  double center_y;
  double rotation_deg;
};

/// The ten-ellipse modified Shepp-Logan table (high-contrast intensity
/// variant). The same table is committed under data/ for golden tests.
std::span<const PhantomEllipse> shepp_logan_ellipses();

/// n x n modified Shepp-Logan phantom; each pixel is the ellipse-intensity
/// sum at the pixel center. Requires n >= 16.
Image2D shepp_logan(int n);

/// Fan-beam scanner description. All lengths are in units of the image
/// half-width; the reconstructed image spans [-1,1]^2. The source rotates on
/// a circle of radius source_to_center; the detector is an equiangular arc
/// centered on the source-to-center line; views are uniform over [0, 2pi).
struct FanBeamGeometry {
  int n_bins = 888;
  int n_angles = 984;
  double source_to_center = 2.5;
  /// Fan half-angle in radians. The default 0 means "auto": the fan covers
  /// the unit circle (the image's inscribed disk) with a 2% margin.
  double fan_half_angle = 0.0;

  double half_fan() const;
  double bin_spacing() const { return 2.0 * half_fan() / n_bins; }
  double bin_angle(int bin) const {
    return (bin + 0.5 - 0.5 * n_bins) * bin_spacing();
  }
  double view_angle(int view) const;

  void validate() const;
};

/// Reconstruction filter: band-limited ramp, optionally Hann-apodized, with
/// cutoff as a fraction of the detector Nyquist frequency.
struct ReconFilter {
  enum class Kind { ramp, hanning };
  Kind kind = Kind::hanning;
  double cutoff = 1.0;
};

/// Spatial-domain filter kernel for equiangular fan-beam FBP, sampled at
/// multiples of `spacing`: taps -half_len..half_len, returned as a vector of
/// length 2*half_len+1 with the center at index half_len. Exposed for tests.
std::vector<double> recon_kernel(const ReconFilter& filt, double spacing,
                                 int half_len);

/// Ray-driven fan-beam forward projection (Joseph's method: unit steps along
/// the dominant axis with linear interpolation across the other). Output is
/// (n_bins x n_angles); values are line integrals in half-width units.
Image2D forward_project_fan(const Image2D& image, const FanBeamGeometry& geom,
                            int threads = 1);

/// Equiangular fan-beam filtered backprojection: cosine pre-weighting,
/// spatial-domain kernel convolution, distance-weighted backprojection with
/// linear detector interpolation, onto an n_out x n_out grid.
Image2D fbp_fan(const Image2D& sino, const FanBeamGeometry& geom,
                const ReconFilter& filt, int n_out, int threads = 1);

}  // namespace lodct

#endif
