#pragma once

// End-to-end restoration: compensate -> balance -> illumination ->
// transmission -> solve, plus single-file and batch drivers and reports.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uwr/config.hpp"
#include "uwr/metrics.hpp"

namespace uwr {

struct PipelineStages {
  RgbImage compensated;
  RgbImage balanced;
  IlluminationStages illumination;
  TransmissionStages transmission;
  Restoration restoration;
  RgbImage output;  // R, or R * L^rho in shaded display mode
};

PipelineStages run_pipeline(const RgbImage& img, const PipelineConfig& config);

// <dir>/<stem><suffix>.png
std::filesystem::path output_path_for(const std::filesystem::path& input, const std::string& suffix);

struct SingleResult {
  std::filesystem::path output;
  MetricReport metrics;  // of the requantized output
  std::array<SolveReport, 3> solve;
  std::vector<std::filesystem::path> dumps;

  int iterations() const;  // max over channels
  bool converged() const;  // all channels
};

// Reads, restores and writes one image. `out` defaults to output_path_for.
// Metrics use the 8-bit output; ciede2000 is filled when `reference` is given.
SingleResult run_single(const std::filesystem::path& input, const PipelineConfig& config,
                        const std::optional<std::filesystem::path>& out = std::nullopt,
                        const std::optional<std::filesystem::path>& reference = std::nullopt);

// Writes compensated, balanced, L0, refined L, raw t and refined t next to
// `base` (as <stem>_<stage>.png), values scaled by 255. Returns the paths.
std::vector<std::filesystem::path> dump_intermediates(const PipelineStages& stages,
                                                      const std::filesystem::path& base);

struct BatchRow {
  MetricReport metrics;
  int iterations = 0;
  bool converged = false;
};

struct BatchFailure {
  std::filesystem::path path;
  std::string message;
};

struct BatchResult {
  std::vector<BatchRow> rows;  // sorted by path
  std::vector<BatchFailure> failures;
};

// PNG/JPEG files in `dir`, sorted, skipping previous outputs (stem ending in
// the configured suffix). Throws EmptyBatchError when there are none.
std::vector<std::filesystem::path> batch_inputs(const std::filesystem::path& dir,
                                                const std::string& suffix);

// Restores every input with a worker pool. Per-file failures are collected
// and logged to stderr; the batch carries on. `reference_dir`, when given, is
// searched for a file of the same name to score ciede2000.
BatchResult run_batch(const std::filesystem::path& dir, const PipelineConfig& config,
                      const std::optional<std::filesystem::path>& reference_dir = std::nullopt,
                      unsigned workers = 0);

// Header, one row per image, then a "mean" row of column means. The
// ciede2000 mean is left empty unless every row has a value.
std::string batch_csv(const BatchResult& result);
std::string batch_json(const BatchResult& result);
std::string single_json(const SingleResult& result);

}  // namespace uwr
