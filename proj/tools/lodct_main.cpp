#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lodct/config.hpp"
#include "lodct/errors.hpp"
#include "lodct/pipeline.hpp"

namespace {

using namespace lodct;

// Exit codes: 0 success, 2 usage/config, 3 data format, 4 numerical failure.
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

Image2D uniform_grid(int n, std::uint64_t seed) {
  Image2D grid(n, n);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid.data()[k] =
        static_cast<double>(counter_hash(seed, k) >> 11) * 0x1.0p-53;
  }
  return grid;
}

struct CommonOptions {
  std::string config_path;
  PipelineConfig cfg;

  // Resolves the config file if one was named; stage commands that run
  // without a config fall back to the bare type defaults where that matters
  // (e.g. 888x984 geometry for `project`).
  void load() {
    if (!config_path.empty()) cfg = load_pipeline_config(config_path);
  }
  bool has_config() const { return !config_path.empty(); }
};

void add_config_flag(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("-c,--config", common.config_path,
                  "JSON pipeline config; flags override config values");
}

void add_geometry_flags(CLI::App* cmd, FanBeamGeometry& geom) {
  cmd->add_option("--bins", geom.n_bins, "Detector bin count");
  cmd->add_option("--angles", geom.n_angles, "View angle count");
  cmd->add_option("--source-distance", geom.source_to_center,
                  "Source-to-center distance in image half-widths");
  cmd->add_option("--fan-half-angle", geom.fan_half_angle,
                  "Fan half-angle in radians (0 = cover the unit circle "
                  "with a 2% margin)");
}

void add_noise_flags(CLI::App* cmd, NoiseParams& noise) {
  cmd->add_option("--f", noise.f, "System noise factor f");
  cmd->add_option("--eta", noise.eta, "Exponential scale eta");
  cmd->add_option("--variance-scale", noise.variance_scale,
                  "Multiplier on the estimated noise variance");
  cmd->add_option("--seed", noise.seed, "RNG seed");
}

int dispatch(CLI::App& app, int argc, char** argv) {
  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-dose CT sinogram filtering toolkit"};
  app.require_subcommand(1);

  // --- phantom ---------------------------------------------------------
  auto* phantom_cmd =
      app.add_subcommand("phantom", "Generate the modified Shepp-Logan phantom");
  auto phantom_common = std::make_shared<CommonOptions>();
  auto phantom_n = std::make_shared<int>(256);
  auto phantom_out = std::make_shared<std::string>();
  add_config_flag(phantom_cmd, *phantom_common);
  phantom_cmd->add_option("-n,--size", *phantom_n, "Phantom size in pixels");
  phantom_cmd->add_option("-o,--out", *phantom_out, "Output SGF1 path")
      ->required();
  phantom_cmd->callback([=] {
    phantom_common->load();
    int n = *phantom_n;
    if (phantom_common->has_config() && phantom_cmd->count("--size") == 0) {
      n = phantom_common->cfg.phantom_size;
    }
    const Image2D image = shepp_logan(n);
    save_raw(*phantom_out, image);
    std::filesystem::path pgm(*phantom_out);
    pgm.replace_extension(".pgm");
    save_pgm(pgm, image, 0.0, 1.0);
    std::cout << "wrote " << *phantom_out << " and " << pgm.string() << " ("
              << n << "x" << n << ")\n";
  });

  // --- project ---------------------------------------------------------
  auto* project_cmd =
      app.add_subcommand("project", "Fan-beam forward projection");
  auto project_common = std::make_shared<CommonOptions>();
  auto project_in = std::make_shared<std::string>();
  auto project_out = std::make_shared<std::string>();
  auto project_geom = std::make_shared<FanBeamGeometry>();
  auto project_threads = std::make_shared<int>(1);
  add_config_flag(project_cmd, *project_common);
  project_cmd->add_option("-i,--image", *project_in, "Input image (SGF1)")
      ->required();
  project_cmd->add_option("-o,--out", *project_out, "Output sinogram (SGF1)")
      ->required();
  add_geometry_flags(project_cmd, *project_geom);
  project_cmd->add_option("--threads", *project_threads, "Worker threads");
  project_cmd->callback([=] {
    project_common->load();
    FanBeamGeometry geom =
        project_common->has_config() ? project_common->cfg.geometry
                                     : FanBeamGeometry{};
    if (project_cmd->count("--bins")) geom.n_bins = project_geom->n_bins;
    if (project_cmd->count("--angles")) geom.n_angles = project_geom->n_angles;
    if (project_cmd->count("--source-distance")) {
      geom.source_to_center = project_geom->source_to_center;
    }
    if (project_cmd->count("--fan-half-angle")) {
      geom.fan_half_angle = project_geom->fan_half_angle;
    }
    const Image2D image = load_raw(*project_in);
    const Image2D sino = forward_project_fan(image, geom, *project_threads);
    save_raw(*project_out, sino);
    std::cout << "wrote " << *project_out << " (" << sino.rows() << "x"
              << sino.cols() << ")\n";
  });

  // --- addnoise --------------------------------------------------------
  auto* noise_cmd =
      app.add_subcommand("addnoise", "Add nonstationary Gaussian sinogram noise");
  auto noise_common = std::make_shared<CommonOptions>();
  auto noise_in = std::make_shared<std::string>();
  auto noise_out = std::make_shared<std::string>();
  auto noise_params = std::make_shared<NoiseParams>();
  add_config_flag(noise_cmd, *noise_common);
  noise_cmd->add_option("-i,--in", *noise_in, "Input sinogram (SGF1)")
      ->required();
  noise_cmd->add_option("-o,--out", *noise_out, "Output sinogram (SGF1)")
      ->required();
  add_noise_flags(noise_cmd, *noise_params);
  noise_cmd->callback([=] {
    noise_common->load();
    NoiseParams params =
        noise_common->has_config() ? noise_common->cfg.noise : NoiseParams{};
    if (noise_cmd->count("--f")) params.f = noise_params->f;
    if (noise_cmd->count("--eta")) params.eta = noise_params->eta;
    if (noise_cmd->count("--variance-scale")) {
      params.variance_scale = noise_params->variance_scale;
    }
    if (noise_cmd->count("--seed")) params.seed = noise_params->seed;
    const Image2D clean = load_raw(*noise_in);
    save_raw(*noise_out, add_noise(clean, params));
    std::cout << "wrote " << *noise_out << "\n";
  });

  // --- filter ----------------------------------------------------------
  auto* filter_cmd = app.add_subcommand("filter", "Denoise a sinogram");
  auto filter_common = std::make_shared<CommonOptions>();
  auto filter_in = std::make_shared<std::string>();
  auto filter_out = std::make_shared<std::string>();
  auto filter_method = std::make_shared<std::string>("llmmse-b");
  auto filter_noise = std::make_shared<NoiseParams>();
  auto filter_radius = std::make_shared<int>(1);
  auto filter_floor = std::make_shared<double>(1e-12);
  auto filter_clamp = std::make_shared<bool>(true);
  add_config_flag(filter_cmd, *filter_common);
  filter_cmd->add_option("-i,--in", *filter_in, "Input sinogram (SGF1)")
      ->required();
  filter_cmd->add_option("-o,--out", *filter_out, "Output sinogram (SGF1)")
      ->required();
  filter_cmd->add_option("-m,--method", *filter_method,
                         "Filtering method: none, med, llmmse, llmmse-b");
  add_noise_flags(filter_cmd, *filter_noise);
  filter_cmd->add_option("--radius", *filter_radius,
                         "Window radius for local statistics and blocks");
  filter_cmd->add_option("--variance-floor", *filter_floor,
                         "Floor for the local variance in the gain division");
  filter_cmd->add_flag("--clamp,!--no-clamp", *filter_clamp,
                       "Clamp gain coefficients into [0,1]");
  filter_cmd->callback([=] {
    filter_common->load();
    NoiseParams noise =
        filter_common->has_config() ? filter_common->cfg.noise : NoiseParams{};
    FilterConfig filter =
        filter_common->has_config() ? filter_common->cfg.filter
                                    : FilterConfig{};
    if (filter_cmd->count("--f")) noise.f = filter_noise->f;
    if (filter_cmd->count("--eta")) noise.eta = filter_noise->eta;
    if (filter_cmd->count("--variance-scale")) {
      noise.variance_scale = filter_noise->variance_scale;
    }
    if (filter_cmd->count("--seed")) noise.seed = filter_noise->seed;
    if (filter_cmd->count("--radius")) {
      filter.radius = BoxRadius(*filter_radius);
    }
    if (filter_cmd->count("--variance-floor")) {
      filter.variance_floor = *filter_floor;
    }
    if (filter_cmd->count("--clamp") || filter_cmd->count("--no-clamp")) {
      filter.clamp_coefficients = *filter_clamp;
    }
    const Image2D noisy = load_raw(*filter_in);
    save_raw(*filter_out, filter_sinogram(noisy, *filter_method, noise, filter));
    std::cout << "wrote " << *filter_out << " (" << *filter_method << ")\n";
  });

  // --- fbp -------------------------------------------------------------
  auto* fbp_cmd = app.add_subcommand("fbp", "Fan-beam filtered backprojection");
  auto fbp_common = std::make_shared<CommonOptions>();
  auto fbp_in = std::make_shared<std::string>();
  auto fbp_out = std::make_shared<std::string>();
  auto fbp_geom = std::make_shared<FanBeamGeometry>();
  auto fbp_size = std::make_shared<int>(256);
  auto fbp_kind = std::make_shared<std::string>("hanning");
  auto fbp_cutoff = std::make_shared<double>(1.0);
  auto fbp_threads = std::make_shared<int>(1);
  add_config_flag(fbp_cmd, *fbp_common);
  fbp_cmd->add_option("-i,--in", *fbp_in, "Input sinogram (SGF1)")->required();
  fbp_cmd->add_option("-o,--out", *fbp_out, "Output image (SGF1)")->required();
  add_geometry_flags(fbp_cmd, *fbp_geom);
  fbp_cmd->add_option("-n,--size", *fbp_size, "Output image size in pixels");
  fbp_cmd->add_option("--filter-kind", *fbp_kind,
                      "Reconstruction filter: ramp or hanning");
  fbp_cmd->add_option("--cutoff", *fbp_cutoff,
                      "Filter cutoff as a fraction of Nyquist, (0,1]");
  fbp_cmd->add_option("--threads", *fbp_threads, "Worker threads");
  fbp_cmd->callback([=] {
    fbp_common->load();
    FanBeamGeometry geom = fbp_common->has_config() ? fbp_common->cfg.geometry
                                                    : FanBeamGeometry{};
    ReconFilter filt =
        fbp_common->has_config() ? fbp_common->cfg.recon : ReconFilter{};
    int size = *fbp_size;
    if (fbp_common->has_config() && fbp_cmd->count("--size") == 0) {
      size = fbp_common->cfg.recon_size > 0 ? fbp_common->cfg.recon_size
                                            : fbp_common->cfg.phantom_size;
    }
    if (fbp_cmd->count("--bins")) geom.n_bins = fbp_geom->n_bins;
    if (fbp_cmd->count("--angles")) geom.n_angles = fbp_geom->n_angles;
    if (fbp_cmd->count("--source-distance")) {
      geom.source_to_center = fbp_geom->source_to_center;
    }
    if (fbp_cmd->count("--fan-half-angle")) {
      geom.fan_half_angle = fbp_geom->fan_half_angle;
    }
    if (fbp_cmd->count("--filter-kind")) {
      if (*fbp_kind == "ramp") {
        filt.kind = ReconFilter::Kind::ramp;
      } else if (*fbp_kind == "hanning") {
        filt.kind = ReconFilter::Kind::hanning;
      } else {
        throw std::invalid_argument(
            "fbp: --filter-kind must be ramp or hanning, got \"" + *fbp_kind +
            "\"");
      }
    }
    if (fbp_cmd->count("--cutoff")) filt.cutoff = *fbp_cutoff;
    const Image2D sino = load_raw(*fbp_in);
    const Image2D recon = fbp_fan(sino, geom, filt, size, *fbp_threads);
    save_raw(*fbp_out, recon);
    std::filesystem::path pgm(*fbp_out);
    pgm.replace_extension(".pgm");
    save_pgm(pgm, recon, 0.0, 1.0);
    std::cout << "wrote " << *fbp_out << " and " << pgm.string() << "\n";
  });

  // --- pipeline --------------------------------------------------------
  auto* pipe_cmd = app.add_subcommand(
      "pipeline", "Run the full simulate/filter/reconstruct/evaluate pipeline");
  auto pipe_common = std::make_shared<CommonOptions>();
  auto pipe_out_dir = std::make_shared<std::string>();
  auto pipe_methods = std::make_shared<std::vector<std::string>>();
  auto pipe_seed = std::make_shared<std::uint64_t>(0);
  auto pipe_threads = std::make_shared<int>(1);
  add_config_flag(pipe_cmd, *pipe_common);
  pipe_cmd->add_option("-o,--output-dir", *pipe_out_dir, "Output directory");
  pipe_cmd->add_option("-m,--methods", *pipe_methods, "Methods to evaluate")
      ->delimiter(',');
  pipe_cmd->add_option("--seed", *pipe_seed, "RNG seed");
  pipe_cmd->add_option("--threads", *pipe_threads, "Worker threads");
  pipe_cmd->callback([=] {
    pipe_common->load();
    PipelineConfig cfg = pipe_common->cfg;
    if (pipe_cmd->count("--output-dir")) cfg.output_dir = *pipe_out_dir;
    if (pipe_cmd->count("--methods")) cfg.methods = *pipe_methods;
    if (pipe_cmd->count("--seed")) cfg.noise.seed = *pipe_seed;
    if (pipe_cmd->count("--threads")) cfg.threads = *pipe_threads;
    const PipelineResult result = run_pipeline(cfg);
    for (const EvalReport& report : result.reports) {
      std::printf("%-10s snr=%9.4f dB  filter_time=%.4f s\n",
                  report.method.c_str(), report.snr_db,
                  report.runtime_seconds);
    }
    std::cout << "report: " << result.report_csv.string() << "\n";
    std::cout << "profiles: " << result.profile_csv.string() << "\n";
  });

  // --- bench -----------------------------------------------------------
  auto* bench_cmd = app.add_subcommand(
      "bench", "Time box_mean and llmmse_block across sizes and radii");
  auto bench_sizes = std::make_shared<std::vector<int>>(
      std::vector<int>{512, 1024});
  auto bench_radii =
      std::make_shared<std::vector<int>>(std::vector<int>{1, 5, 15});
  auto bench_repeats = std::make_shared<int>(5);
  auto bench_out = std::make_shared<std::string>();
  bench_cmd->add_option("--sizes", *bench_sizes, "Square grid sizes")
      ->delimiter(',');
  bench_cmd->add_option("--radii", *bench_radii, "Window radii")
      ->delimiter(',');
  bench_cmd->add_option("--repeats", *bench_repeats,
                        "Timed repetitions per cell (median reported)");
  bench_cmd->add_option("-o,--out", *bench_out, "Output CSV path");
  bench_cmd->callback([=] {
    std::string csv = "op,size,radius,seconds\n";
    char line[128];
    for (int size : *bench_sizes) {
      const Image2D grid = uniform_grid(size, 7);
      const NoiseParams noise;
      for (int radius : *bench_radii) {
        const BoxRadius r(radius);
        const double mean_s = time_filter(
            [&] {
              Image2D scratch = box_mean(grid, r);
              (void)scratch;
            },
            *bench_repeats);
        FilterConfig fc;
        fc.radius = r;
        const Image2D sigma2 = estimate_noise_variance(grid, noise, r);
        const double block_s = time_filter(
            [&] {
              Image2D scratch = llmmse_block(grid, sigma2, fc);
              (void)scratch;
            },
            *bench_repeats);
        std::snprintf(line, sizeof(line), "box_mean,%d,%d,%.6f\n", size,
                      radius, mean_s);
        csv += line;
        std::snprintf(line, sizeof(line), "llmmse_block,%d,%d,%.6f\n", size,
                      radius, block_s);
        csv += line;
      }
    }
    if (bench_out->empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(*bench_out, std::ios::trunc);
      if (!out) throw IoError("bench: cannot open " + *bench_out);
      out << csv;
      std::cout << "wrote " << *bench_out << "\n";
    }
  });

  return dispatch(app, argc, argv);
}
