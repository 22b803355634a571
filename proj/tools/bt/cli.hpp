#pragma once

#include <string>
#include <vector>

#include "gazetrack/gaze.hpp"
#include "gazetrack/simulator.hpp"

namespace gazetrack::cli {

/// Everything a subcommand needs. Loaded from defaults, then an optional
/// JSON config file (or a previous run manifest), then command-line flags.
struct RunConfig {
  SceneSpec scene;
  GazeSpec gaze;
  std::vector<int> targets{0};

  SpineFilterParams filter;
  double min_prominence = 0.0;
  double noise_floor_fraction = 0.1;
  double z_threshold = 2.0;

  double cell_diameter = 0.0;  // <= 0: use 2 * scene.blob_radius

  std::string out_dir = ".";
  std::string in_dir;
  std::string dataset;
  std::vector<std::string> spines;
  std::string tracks;
  std::string truth;

  double effective_cell_diameter() const { return cell_diameter > 0.0 ? cell_diameter : 2.0 * scene.blob_radius; }
  void validate() const;
};

// Parameter block (no I/O paths) as stored in run manifests.
std::string parameters_json(const RunConfig& config);

// Accepts either a config document or a run manifest (its "parameters"
// block is used). Missing keys keep their current values.
void apply_config_json(RunConfig& config, const std::string& json_text);

enum ExitCode : int { kOk = 0, kInternalError = 1, kUsageError = 2 };

/// Entry point shared by the `bt` binary and the tests.
int run(int argc, const char* const* argv);

}  // namespace gazetrack::cli
