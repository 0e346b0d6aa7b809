#pragma once

// Benchmark sweeps and their CSV/JSON reports.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "admm/image.hpp"
#include "admm/pipeline.hpp"

namespace admm {

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view name);

struct BenchmarkRow {
  std::string image;
  std::string blur;
  double bsnr_db = 0.0;
  std::string variant;
  double lambda = 0.0;
  /// Over the observed region.
  Decibels isnr;
  /// Full image; empty for periodic baselines, whose output is the observed window only.
  std::optional<Decibels> snr;
  int iterations = 0;
  double wall_seconds = 0.0;
  double seconds_per_iteration = 0.0;
};

/// CSV columns, in order.
inline constexpr const char* kReportHeader =
    "image,blur,bsnr_db,variant,lambda,isnr_db,snr_db,iterations,wall_seconds,seconds_per_iteration";

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;

  /// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote or line break.
  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
  void save(const std::filesystem::path& path, ReportFormat format) const;
};

/// Quotes a CSV field when needed.
std::string csv_field(const std::string& s);

struct BlurSetting {
  KernelKind kind = KernelKind::uniform;
  int half_width = 4;
  KernelParams params;
};

/// Sweep matrix. Images are file paths or "scene:<size>[:<seed>]" for the
/// built-in synthetic scene.
struct BenchmarkConfig {
  std::vector<std::string> images{"scene:128"};
  std::vector<BlurSetting> blurs;
  std::vector<double> bsnr_db{30.0, 40.0, 50.0, 60.0};
  double dropout = 0.0;
  std::vector<std::string> variants{"tv-bc", "tv-et", "tv-cg", "tv-md", "fa-bc", "fa-et", "fa-cg", "fa-md"};
  std::vector<double> lambdas{1e-3, 1e-2, 1e-1};
  int max_iters = 500;
  double tol = 1e-4;
  int cg_iters = 1;
  int frame_levels = 4;
  std::uint64_t seed = 7;
  /// Run cg variants until they reach the objective of the matching md run.
  bool match_cg_to_md = true;
  ReportFormat format = ReportFormat::csv;

  void validate() const;
};

/// Parses the JSON document form; missing keys keep their defaults
/// (the default blur list is the four kernels at l = 4).
BenchmarkConfig parse_benchmark_config(const std::string& json_text);
BenchmarkConfig load_benchmark_config(const std::filesystem::path& path);

/// Loads an image entry of the config.
ImageGrid load_benchmark_image(const std::string& entry);

/// Runs every (image, blur, bsnr, lambda, variant) cell; rows are ordered that way.
BenchmarkReport run_benchmark(const BenchmarkConfig& cfg);

}  // namespace admm
