#ifndef LODCT_CONFIG_HPP
#define LODCT_CONFIG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "lodct/ctgeom.hpp"
#include "lodct/filters.hpp"
#include "lodct/noise.hpp"

namespace lodct {

/// 1-based profile location, matching figure conventions.
struct ProfileLocation {
  int row_start = 100;
  int row_end = 107;
  int col = 64;
};

/// Full experiment description. Defaults reproduce the desk-scale protocol:
/// 128^2 phantom, 444x492 sinogram, f=22500, eta=22000, 3x3 masks, Hanning
/// FBP. Every field has a JSON counterpart with the same name.
struct PipelineConfig {
  int phantom_size = 128;
  /// 0 means reconstruct at phantom_size.
  int recon_size = 0;
  FanBeamGeometry geometry{.n_bins = 444, .n_angles = 492};
  /// Maps the projector's dimensionless line integrals onto the
  /// scanner-calibrated units the noise model's f and eta were fitted in.
  /// The clean sinogram is multiplied by this before noise is added and
  /// reconstructions are divided by it again, so images stay on the phantom's
  /// [0,1] scale. The default puts the phantom's line integrals at the order
  /// of eta, the regime the f=22500/eta=22000 calibration presumes.
  double sinogram_scale = 10000.0;
  NoiseParams noise;
  FilterConfig filter;
  ReconFilter recon;
  std::vector<std::string> methods = {"none", "med", "llmmse", "llmmse-b"};
  std::string output_dir = "out";
  ProfileLocation profile;
  /// SNR reference: "phantom" or "clean-recon" (FBP of the noise-free
  /// sinogram).
  std::string snr_reference = "phantom";
  int threads = 1;
  /// Timed repetitions per filtering method (median is reported).
  int timing_runs = 5;

  void validate() const;
};

/// Parses a JSON pipeline config; missing fields keep their defaults and
/// unknown keys are rejected.
PipelineConfig parse_pipeline_config(const std::string& json_text);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
std::string pipeline_config_to_json(const PipelineConfig& cfg);

}  // namespace lodct

#endif
