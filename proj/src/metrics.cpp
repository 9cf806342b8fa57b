#include "lodct/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "lodct/errors.hpp"

namespace lodct {

double snr_db(const Image2D& reference, const Image2D& test) {
  if (!reference.same_shape(test)) {
    throw std::invalid_argument("snr_db: images have different shapes");
  }

  double signal = 0.0;
  double error = 0.0;
  for (std::size_t k = 0; k < reference.size(); ++k) {
    const double r = reference.data()[k];
    const double d = r - test.data()[k];
    signal += r * r;
    error += d * d;
  }
  if (signal == 0.0) {
    throw std::invalid_argument("snr_db: reference image is identically zero");
  }
  if (error == 0.0) {
    return std::numeric_limits<double>::infinity();  // exact match
  }
  return 10.0 * std::log10(signal / error);
}

std::vector<ProfilePoint> extract_profile(const Image2D& image, int row_start,
                                          int row_end, int col) {
  if (row_start < 1 || row_end > image.rows() || row_start > row_end ||
      col < 1 || col > image.cols()) {
    throw std::invalid_argument(
        "extract_profile: rows " + std::to_string(row_start) + ".." +
        std::to_string(row_end) + ", column " + std::to_string(col) +
        " out of range for " + std::to_string(image.rows()) + "x" +
        std::to_string(image.cols()) + " (1-based)");
  }
  std::vector<ProfilePoint> profile;
  profile.reserve(static_cast<std::size_t>(row_end - row_start + 1));
  for (int row = row_start; row <= row_end; ++row) {
    profile.push_back({row, image(row - 1, col - 1)});
  }
  return profile;
}

double edge_width(std::span<const ProfilePoint> profile) {
  if (profile.size() < 2) {
    throw std::invalid_argument("edge_width: need at least two samples");
  }

  std::size_t imin = 0;
  std::size_t imax = 0;
  for (std::size_t s = 1; s < profile.size(); ++s) {
    if (profile[s].value < profile[imin].value) imin = s;
    if (profile[s].value > profile[imax].value) imax = s;
  }
  const double lo = profile[imin].value;
  const double hi = profile[imax].value;
  if (!(hi > lo)) {
    throw std::invalid_argument("edge_width: profile is flat");
  }

  const double t_low = lo + 0.1 * (hi - lo);
  const double t_high = lo + 0.9 * (hi - lo);

  // Walk the principal transition from the extreme-valued end at `from`
  // toward `to`, picking up each threshold at its first crossing.
  const bool rising = imin < imax;
  const std::size_t from = rising ? imin : imax;
  const std::size_t to = rising ? imax : imin;
  const double first = rising ? t_low : t_high;
  const double second = rising ? t_high : t_low;

  auto crossing = [&](std::size_t start, double threshold,
                      double& x) -> std::size_t {
    for (std::size_t s = start; s < to; ++s) {
      const double v0 = profile[s].value;
      const double v1 = profile[s + 1].value;
      const bool crosses = rising ? (v0 < threshold && v1 >= threshold)
                                  : (v0 > threshold && v1 <= threshold);
      if (crosses) {
        const double frac = (threshold - v0) / (v1 - v0);
        x = profile[s].row + frac * (profile[s + 1].row - profile[s].row);
        return s;
      }
    }
    // The extreme itself sits on the threshold side already.
    x = profile[start].row;
    return start;
  };

  double x_first = 0.0;
  double x_second = 0.0;
  const std::size_t s1 = crossing(from, first, x_first);
  crossing(s1, second, x_second);
  return std::abs(x_second - x_first);
}

double time_filter(const std::function<void()>& invocation, int runs) {
  if (runs < 1) {
    throw std::invalid_argument("time_filter: need at least one run");
  }
  invocation();  // warm-up
  std::vector<double> seconds(static_cast<std::size_t>(runs));
  for (int i = 0; i < runs; ++i) {
    const auto start = std::chrono::steady_clock::now();
    invocation();
    const auto stop = std::chrono::steady_clock::now();
    seconds[i] = std::chrono::duration<double>(stop - start).count();
  }
  std::sort(seconds.begin(), seconds.end());
  const std::size_t mid = seconds.size() / 2;
  return seconds.size() % 2 == 1
             ? seconds[mid]
             : 0.5 * (seconds[mid - 1] + seconds[mid]);
}

void write_report_csv(const std::filesystem::path& path,
                      std::span<const EvalReport> reports) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("write_report_csv: cannot open " + path.string());
  }
  out << "method,snr_db,runtime_seconds\n";
  char line[160];
  for (const EvalReport& report : reports) {
    std::snprintf(line, sizeof(line), "%s,%.6f,%.6f", report.method.c_str(),
                  report.snr_db, report.runtime_seconds);
    out << line << "\n";
  }
  if (!out) {
    throw IoError("write_report_csv: write failed for " + path.string());
  }
}

}  // namespace lodct
