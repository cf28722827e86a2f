#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cutcell/io.hpp"

namespace cutcell {

// Declarative description of one study; flat JSON in the config file, with
// presets mapping to the bundled figure setups.
struct ExperimentConfig {
  std::string name = "run";
  std::string mode = "adaptive";  // adaptive | equal_sweep | thumb |
                                  // marking_compare | depth_scaling |
                                  // geometry_sweep

  // geometry
  std::string kind = "ellipsoid";
  double r1 = 0.6;
  double r2 = 0.6;
  double phi_deg = 0.0;
  int dim = 2;

  int rho_max = 3;
  int k = 8;
  SobolevNorm norm = SobolevNorm::H1;
  Marking marking = Marking::SubCell;
  BoxRuleKind box_kind = BoxRuleKind::Gauss;

  std::optional<long> budget;
  std::optional<double> target_error;
  int max_order = 8;
  int compare_equal_order = -1;  // also emit the equal-order scheme of this order
  int k_max = 8;                 // rules of thumb

  // geometry_sweep case lists
  std::vector<double> sweep_r1;
  std::vector<double> sweep_phi;

  std::string out_dir = "out";
  bool svg = false;
  int threads = 0;
  std::uint64_t seed = 0;
};

ExperimentConfig config_from_json(const nlohmann::json& j);

std::vector<std::string> preset_names();
nlohmann::json preset_config(const std::string& name);

// Runs the experiment and writes its artifact files (partition JSON, trace
// and scheme CSVs, optional SVG) under out_dir. Throws on invalid configs.
void run_experiment(const ExperimentConfig& cfg);

}  // namespace cutcell
