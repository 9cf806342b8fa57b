#ifndef LODCT_PIPELINE_HPP
#define LODCT_PIPELINE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "lodct/config.hpp"
#include "lodct/metrics.hpp"

namespace lodct {

/// Applies one named sinogram filtering method ("none", "med", "llmmse",
/// "llmmse-b"). The noise-variance map is estimated from the noisy input
/// itself via estimate_noise_variance.
Image2D filter_sinogram(const Image2D& noisy, const std::string& method,
                        const NoiseParams& noise, const FilterConfig& filter);

struct PipelineResult {
  std::vector<EvalReport> reports;
  std::filesystem::path report_csv;
  std::filesystem::path profile_csv;
  std::vector<std::filesystem::path> sgf_files;
};

/// Runs phantom -> project -> addnoise -> {filter each method} -> FBP ->
/// metrics, writing SGF1/PGM/CSV artifacts under cfg.output_dir. Stage
/// failures are reported with the stage name. Deterministic given the config
/// except for the measured runtime column.
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace lodct

#endif
