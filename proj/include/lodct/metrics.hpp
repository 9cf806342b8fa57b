#ifndef LODCT_METRICS_HPP
#define LODCT_METRICS_HPP

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lodct/grid.hpp"

namespace lodct {

/// One profile sample; row is 1-based to match figure conventions.
struct ProfilePoint {
  int row;
  double value;
};

/// Evaluation row for one filtering method. runtime_seconds covers the
/// sinogram filtering only, never reconstruction or I/O.
struct EvalReport {
  std::string method;
  double snr_db = 0.0;
  double runtime_seconds = 0.0;
  std::vector<ProfilePoint> profile;
};

/// 10*log10(sum(ref^2) / sum((ref-test)^2)). Identical images return
/// +infinity (the "exact" outcome); an all-zero reference is rejected.
double snr_db(const Image2D& reference, const Image2D& test);

/// Column profile over rows [row_start, row_end], all indices 1-based
/// inclusive.
std::vector<ProfilePoint> extract_profile(const Image2D& image, int row_start,
                                          int row_end, int col);

/// 10%-90% rise distance, in index units, across the profile's principal
/// transition (between its first minimum and first maximum), linearly
/// interpolated. Rejects flat profiles.
double edge_width(std::span<const ProfilePoint> profile);

/// Median wall-clock seconds over `runs` timed executions after one warm-up.
double time_filter(const std::function<void()>& invocation, int runs = 5);

/// CSV with header method,snr_db,runtime_seconds.
void write_report_csv(const std::filesystem::path& path,
                      std::span<const EvalReport> reports);

}  // namespace lodct

#endif
