#pragma once

// Pipeline configuration. The on-disk form is a flat text file of dotted keys:
//
//   # comment
//   solver.mu1 = 0.1
//   output.panel = true
//
// Unknown keys and malformed values are ConfigErrors. Defaults: d = 5,
// phi = 2.3, theta = 0.8, delta = 0.5, alpha = beta = 1e-3, gamma = 10.

#include <filesystem>
#include <string>
#include <string_view>

#include "uwr/color.hpp"
#include "uwr/guided_filter.hpp"
#include "uwr/illumination.hpp"
#include "uwr/solver.hpp"
#include "uwr/transmission.hpp"

namespace uwr {

enum class DisplayMode { reflectance, shaded };

struct OutputOptions {
  bool panel = false;              // write input|restored side by side as well
  bool dump_intermediates = false;
  std::string suffix = "_restored";
  DisplayMode display = DisplayMode::reflectance;
  double rho = 0.5;                // exponent on L in shaded mode
  int max_side = 1024;             // warn above this long side

  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

struct PipelineConfig {
  ColorParams color;
  IlluminationParams illumination;
  TransmissionParams transmission;
  GuidedFilterParams mask_filter{8, 1e-4};
  GuidedFilterParams transmission_filter{16, 1e-3};
  SolverParams solver;
  OutputOptions output;

  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

// Applies the key/value lines in `text` on top of the defaults, then validates.
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

// Every key, one per line, in a fixed order; doubles use the shortest
// representation that reads back to the same value.
std::string serialize_config(const PipelineConfig& config);

}  // namespace uwr
