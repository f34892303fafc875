#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gptlab/json_io.hpp"

namespace gptlab {

// One experiment: a task name, the space it runs against, and the shared
// numeric knobs. Assembled from a JSON config file and/or command-line
// flags; unknown JSON fields are rejected.
struct ExperimentConfig {
  std::string task;
  std::optional<StateSpace> space;
  std::vector<double> alphas{0.0, 0.5, 1.0, 2.0,
                             std::numeric_limits<double>::infinity()};
  int budget = 100;
  int states = 20;   // sampled states for the entropy task
  int seeds = 1000;  // instances for the property suite
  std::uint64_t seed = 1;
  int n_boxes = 1000;
  double temperature = 300.0;
  double boltzmann = 1.0;
  std::vector<double> p_grid{0.1, 0.25, 0.5, 0.75, 0.9};
  std::array<double, 4> pure_entropies{0.0, 0.0, 0.0, 0.0};
  std::string out_dir = ".";
};

// Strict parse: every key must be known and well typed. Accepted keys
// mirror the command-line flags: task, space, alpha, budget, states,
// seeds, seed, n_boxes, temp, kb, p_grid, pure_entropies, out.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& config);

// Runs the task, writes results.json and results.csv into out_dir, and
// returns the process exit code: 0 clean, 2 when an invariant check
// failed (the failing records are listed under "violations" in
// results.json). Configuration problems throw ConfigError, which the
// caller maps to exit code 1.
int run_experiment(const ExperimentConfig& config);

}  // namespace gptlab
