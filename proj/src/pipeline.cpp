#include "lodct/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "lodct/errors.hpp"

namespace lodct {

namespace {

// Runs a stage, prefixing any failure with the stage name while keeping the
// exception type (and with it the CLI exit code).
template <typename Fn>
auto run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const NumericError& e) {
    throw NumericError(std::string("stage ") + stage + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(std::string("stage ") + stage + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("stage ") + stage + ": " +
                                e.what());
  }
}

void write_profile_csv(const std::filesystem::path& path,
                       const std::vector<ProfilePoint>& reference,
                       const std::vector<EvalReport>& reports) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("write_profile_csv: cannot open " + path.string());
  }
  out << "row,reference";
  for (const EvalReport& report : reports) out << "," << report.method;
  out << "\n";

  char cell[64];
  for (std::size_t s = 0; s < reference.size(); ++s) {
    std::snprintf(cell, sizeof(cell), "%d,%.9g", reference[s].row,
                  reference[s].value);
    out << cell;
    for (const EvalReport& report : reports) {
      std::snprintf(cell, sizeof(cell), ",%.9g", report.profile[s].value);
      out << cell;
    }
    out << "\n";
  }
  if (!out) {
    throw IoError("write_profile_csv: write failed for " + path.string());
  }
}

}  // namespace

Image2D filter_sinogram(const Image2D& noisy, const std::string& method,
                        const NoiseParams& noise, const FilterConfig& filter) {
  if (method == "none") return noisy;
  if (method == "med") return median3x3(noisy);
  if (method == "llmmse" || method == "llmmse-b") {
    const Image2D sigma2 = estimate_noise_variance(noisy, noise, filter.radius);
    return method == "llmmse" ? llmmse_point(noisy, sigma2, filter)
                              : llmmse_block(noisy, sigma2, filter);
  }
  throw std::invalid_argument("filter_sinogram: unknown method \"" + method +
                              "\"; valid methods: none, med, llmmse, llmmse-b");
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();

  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);

  PipelineResult result;
  auto save_grid = [&](const std::filesystem::path& path, const Image2D& img) {
    save_raw(path, img);
    result.sgf_files.push_back(path);
  };

  const Image2D phantom =
      run_stage("phantom", [&] { return shepp_logan(cfg.phantom_size); });
  run_stage("phantom", [&] {
    save_grid(dir / "phantom.sgf", phantom);
    save_pgm(dir / "phantom.pgm", phantom, 0.0, 1.0);
    return 0;
  });

  const Image2D clean = run_stage("project", [&] {
    return forward_project_fan(phantom, cfg.geometry, cfg.threads);
  });
  run_stage("project", [&] {
    save_grid(dir / "sino_clean.sgf", clean);
    return 0;
  });

  // The noise model's f/eta are scanner-unit calibrations; scale the line
  // integrals up before adding noise and scale reconstructions back down.
  Image2D scaled = clean;
  for (double& v : scaled.data()) v *= cfg.sinogram_scale;
  auto unscaled_fbp = [&](const Image2D& s) {
    Image2D recon =
        fbp_fan(s, cfg.geometry, cfg.recon, recon_size_of(cfg), cfg.threads);
    for (double& v : recon.data()) v /= cfg.sinogram_scale;
    return recon;
  };

  const Image2D noisy =
      run_stage("addnoise", [&] { return add_noise(scaled, cfg.noise); });
  run_stage("addnoise", [&] {
    save_grid(dir / "sino_noisy.sgf", noisy);
    return 0;
  });

  const Image2D reference = run_stage("metrics", [&] {
    if (cfg.snr_reference == "phantom") return phantom;
    return unscaled_fbp(scaled);
  });
  const std::vector<ProfilePoint> reference_profile =
      run_stage("metrics", [&] {
        return extract_profile(reference, cfg.profile.row_start,
                               cfg.profile.row_end, cfg.profile.col);
      });

  for (const std::string& method : cfg.methods) {
    EvalReport report;
    report.method = method;

    const Image2D filtered = run_stage("filter", [&] {
      return filter_sinogram(noisy, method, cfg.noise, cfg.filter);
    });
    // "none" performs no filtering, so no time is attributed to it.
    report.runtime_seconds =
        method == "none"
            ? 0.0
            : run_stage("filter", [&] {
                return time_filter(
                    [&] {
                      Image2D scratch = filter_sinogram(noisy, method,
                                                        cfg.noise, cfg.filter);
                      (void)scratch;
                    },
                    cfg.timing_runs);
              });
    run_stage("filter", [&] {
      save_grid(dir / ("sino_" + method + ".sgf"), filtered);
      return 0;
    });

    const Image2D recon = run_stage("fbp", [&] { return unscaled_fbp(filtered); });
    run_stage("fbp", [&] {
      save_grid(dir / ("recon_" + method + ".sgf"), recon);
      save_pgm(dir / ("recon_" + method + ".pgm"), recon, 0.0, 1.0);
      return 0;
    });

    run_stage("metrics", [&] {
      report.snr_db = snr_db(reference, recon);
      report.profile = extract_profile(recon, cfg.profile.row_start,
                                       cfg.profile.row_end, cfg.profile.col);
      return 0;
    });
    result.reports.push_back(std::move(report));
  }

  result.report_csv = dir / "report.csv";
  result.profile_csv = dir / "profiles.csv";
  run_stage("metrics", [&] {
    write_report_csv(result.report_csv, result.reports);
    write_profile_csv(result.profile_csv, reference_profile, result.reports);
    return 0;
  });
  return result;
}

}  // namespace lodct
