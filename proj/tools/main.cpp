// Command line front end. Flags mirror the config-file keys; when both are
// given the flag wins. Exit codes: 0 clean run, 1 bad configuration, 2 a
// checked invariant failed (details land in results.json).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gptlab/runner.hpp"

namespace {

double parse_real(const std::string& token, const std::string& flag) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw gptlab::ConfigError(flag + " entry \"" + token +
                              "\" is not a number");
  }
  if (pos != token.size())
    throw gptlab::ConfigError(flag + " entry \"" + token +
                              "\" is not a number");
  return value;
}

std::vector<double> parse_list(const std::string& text,
                               const std::string& flag) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ','))
    values.push_back(parse_real(token, flag));
  if (values.empty())
    throw gptlab::ConfigError(flag + " needs at least one value");
  return values;
}

gptlab::Json list_to_json(const std::vector<double>& values) {
  gptlab::Json out = gptlab::Json::array();
  for (double v : values) out.push_back(gptlab::json_real(v));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for convex state spaces"};

  std::string config_path, task, space, out, alpha, p_grid, pure_entropies;
  int budget = 0, states = 0, seeds = 0, n_boxes = 0;
  std::uint64_t seed = 0;
  double temp = 0.0, kb = 0.0;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--task", task,
                 "one of entropy, second-law, vn-protocol, petz, gbit-demo, "
                 "interference, property-suite");
  app.add_option("--space", space,
                 "state space, e.g. classical:3, quantum-c:2, bloch:4, gbit");
  app.add_option("--alpha", alpha, "comma list of orders, inf allowed");
  app.add_option("--budget", budget, "search budget per optimizer run");
  app.add_option("--states", states, "states sampled by the entropy task");
  app.add_option("--seeds", seeds, "instances per property-suite check");
  app.add_option("--seed", seed, "base seed for every sampled object");
  app.add_option("--n-boxes", n_boxes, "number of gas systems in a protocol");
  app.add_option("--temp", temp, "reservoir temperature");
  app.add_option("--kb", kb, "Boltzmann constant");
  app.add_option("--p-grid", p_grid, "comma list of mixing weights");
  app.add_option("--pure-entropies", pure_entropies,
                 "comma list of four assigned pure-state entropies");
  app.add_option("--out", out, "output directory for results.json/.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    gptlab::Json merged = gptlab::Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in)
        throw gptlab::ConfigError("cannot open config file " + config_path);
      try {
        in >> merged;
      } catch (const std::exception& e) {
        throw gptlab::ConfigError(std::string("config file is not JSON: ") +
                                  e.what());
      }
    }

    if (app.count("--task")) merged["task"] = task;
    if (app.count("--space")) merged["space"] = space;
    if (app.count("--alpha"))
      merged["alpha"] = list_to_json(parse_list(alpha, "--alpha"));
    if (app.count("--budget")) merged["budget"] = budget;
    if (app.count("--states")) merged["states"] = states;
    if (app.count("--seeds")) merged["seeds"] = seeds;
    if (app.count("--seed")) merged["seed"] = seed;
    if (app.count("--n-boxes")) merged["n_boxes"] = n_boxes;
    if (app.count("--temp")) merged["temp"] = temp;
    if (app.count("--kb")) merged["kb"] = kb;
    if (app.count("--p-grid"))
      merged["p_grid"] = parse_list(p_grid, "--p-grid");
    if (app.count("--pure-entropies"))
      merged["pure_entropies"] =
          parse_list(pure_entropies, "--pure-entropies");
    if (app.count("--out")) merged["out"] = out;

    if (!merged.contains("task"))
      throw gptlab::ConfigError(
          "no task given; pass --task or set one in the config file");

    return gptlab::run_experiment(gptlab::config_from_json(merged));
  } catch (const gptlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const gptlab::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const gptlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
