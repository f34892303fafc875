#include "gptlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <set>

#include "gptlab/rng.hpp"

namespace gptlab {

using Eigen::VectorXd;

namespace {

const std::set<std::string> kTasks = {
    "entropy",   "second-law",   "vn-protocol",   "petz",
    "gbit-demo", "interference", "property-suite"};

void record_violation(Json& violations, const std::string& context,
                      const std::string& message) {
  violations.push_back({{"context", context}, {"message", message}});
}

std::string alpha_label(double alpha) { return csv_real(alpha); }

Json run_entropy(const ExperimentConfig& cfg, Json& violations,
                 std::optional<Csv>& csv) {
  const StateSpace& space = *cfg.space;
  csv.emplace(std::vector<std::string>{
      "space", "state", "alpha", "spectral", "measurement", "decomposition",
      "gap_measurement", "gap_decomposition"});

  Rng master = Rng::derive(cfg.seed, 0xe547u);
  Json reports = Json::array();
  for (int s = 0; s < cfg.states; ++s) {
    const State w = random_state(space, master.next_u64(), Purity::Mixed);
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
      const double alpha = cfg.alphas[a];
      const std::string context =
          space.name() + " state " + std::to_string(s) + " alpha " +
          alpha_label(alpha);
      EntropyReport rep;
      try {
        rep = entropy_report(w, alpha, cfg.budget,
                             master.next_u64() + a);
      } catch (const Error& e) {
        record_violation(violations, context, e.what());
        continue;
      }
      csv->row({space.name(), std::to_string(s), alpha_label(alpha),
                csv_real(rep.spectral), csv_real(rep.measurement_best),
                csv_real(rep.decomposition_best),
                csv_real(rep.gap_measurement),
                csv_real(rep.gap_decomposition)});

      if (rep.gap_measurement < -1e-6)
        record_violation(violations, context,
                         "a sampled measurement beat the spectral entropy");
      if (rep.gap_decomposition < -1e-6)
        record_violation(violations, context,
                         "decomposition entropy exceeded the spectral value");
      if ((alpha == 2.0 || std::isinf(alpha)) &&
          rep.gap_decomposition > 2e-5)
        record_violation(violations, context,
                         "decomposition optimizer missed the spectral value");
      if (rep.decomposition.residual > 10 * tol::residual)
        record_violation(violations, context,
                         "reported decomposition does not reconstruct the state");

      Json entry;
      entry["state"] = s;
      entry["report"] = entropy_report_to_json(rep);
      reports.push_back(std::move(entry));
    }
  }
  Json payload;
  payload["reports"] = std::move(reports);
  return payload;
}

Json run_second_law(const ExperimentConfig& cfg, Json& violations,
                    std::optional<Csv>& csv) {
  const StateSpace& space = *cfg.space;
  csv.emplace(std::vector<std::string>{"check", "lhs", "rhs", "margin"});
  Rng master = Rng::derive(cfg.seed, 0x2a40u);
  Json payload;

  {
    const State w = random_state(space, master.next_u64(), Purity::Mixed);
    const auto inst = random_instrument(space, master.next_u64());
    try {
      const SecondLawCheck c = second_law_projective(w, inst);
      csv->row({"projective", csv_real(c.before), csv_real(c.after),
                csv_real(c.after - c.before)});
      payload["projective"] = {{"before", c.before}, {"after", c.after}};
    } catch (const InvariantViolation& e) {
      record_violation(violations, "projective", e.what());
    }
  }
  {
    std::vector<State> parts;
    for (int i = 0; i < 3; ++i)
      parts.push_back(random_state(space, master.next_u64(), Purity::Mixed));
    const VectorXd weights = Rng(master.next_u64()).dirichlet(3);
    try {
      const MixingCheck c = second_law_mixing(space, parts, weights);
      csv->row({"mixing", csv_real(c.mixed), csv_real(c.averaged),
                csv_real(c.mixed - c.averaged)});
      payload["mixing"] = {{"mixed", c.mixed}, {"averaged", c.averaged}};
    } catch (const InvariantViolation& e) {
      record_violation(violations, "mixing", e.what());
    }
  }
  {
    const State w = random_state(space, master.next_u64(), Purity::Mixed);
    const State phi = random_state(space, master.next_u64(), Purity::Mixed);
    try {
      const double rel = klein_check(w, phi);
      csv->row({"klein", csv_real(rel), csv_real(0.0), csv_real(rel)});
      payload["klein"] = {{"value", json_real(rel)}};
    } catch (const InvariantViolation& e) {
      record_violation(violations, "klein", e.what());
    }
  }
  return payload;
}

Json run_property_suite(const ExperimentConfig& cfg, Json& violations,
                        std::optional<Csv>& csv) {
  const StateSpace& space = *cfg.space;
  csv.emplace(std::vector<std::string>{"check", "instances", "violations",
                                       "worst_margin"});
  struct Tally {
    int failures = 0;
    double worst = std::numeric_limits<double>::infinity();
    void add(double margin) { worst = std::min(worst, margin); }
  };
  Tally klein, projective, concavity;
  Rng master = Rng::derive(cfg.seed, 0x9905u);

  for (int s = 0; s < cfg.seeds; ++s) {
    {
      const State w = random_state(space, master.next_u64(), Purity::Mixed);
      const State phi = random_state(space, master.next_u64(), Purity::Mixed);
      try {
        klein.add(klein_check(w, phi));
      } catch (const InvariantViolation& e) {
        ++klein.failures;
        if (klein.failures <= 5)
          record_violation(violations, "klein " + std::to_string(s), e.what());
      }
    }
    {
      const State w = random_state(space, master.next_u64(), Purity::Mixed);
      const auto inst = random_instrument(space, master.next_u64());
      try {
        const SecondLawCheck c = second_law_projective(w, inst);
        projective.add(c.after - c.before);
      } catch (const InvariantViolation& e) {
        ++projective.failures;
        if (projective.failures <= 5)
          record_violation(violations, "projective " + std::to_string(s),
                           e.what());
      }
    }
    {
      std::vector<State> parts;
      for (int i = 0; i < 3; ++i)
        parts.push_back(random_state(space, master.next_u64(), Purity::Mixed));
      const VectorXd weights = Rng(master.next_u64()).dirichlet(3);
      try {
        const MixingCheck c = second_law_mixing(space, parts, weights);
        concavity.add(c.mixed - c.averaged);
      } catch (const InvariantViolation& e) {
        ++concavity.failures;
        if (concavity.failures <= 5)
          record_violation(violations, "concavity " + std::to_string(s),
                           e.what());
      }
    }
  }

  const auto emit = [&](const std::string& name, const Tally& t) {
    csv->row({name, std::to_string(cfg.seeds), std::to_string(t.failures),
              csv_real(t.worst)});
    return Json{{"instances", cfg.seeds},
                {"violations", t.failures},
                {"worst_margin", json_real(t.worst)}};
  };
  Json payload;
  payload["klein"] = emit("klein", klein);
  payload["projective"] = emit("projective", projective);
  payload["concavity"] = emit("concavity", concavity);
  return payload;
}

void ledger_rows(Csv& csv, const ProtocolLedger& ledger) {
  for (const LedgerStep& s : ledger.steps)
    csv.row({s.label, csv_real(s.work_in), csv_real(s.heat_out),
             csv_real(s.gpt_entropy_delta)});
}

Json run_vn_protocol(const ExperimentConfig& cfg, Json& violations,
                     std::optional<Csv>& csv) {
  const StateSpace& space = *cfg.space;
  csv.emplace(std::vector<std::string>{"step", "work_in", "heat_out",
                                       "gpt_entropy_delta"});
  const State w =
      random_state(space, Rng::derive(cfg.seed, 0x7e02u).next_u64(),
                   Purity::Mixed);
  const ProtocolLedger ledger =
      von_neumann_run(w, cfg.n_boxes, cfg.temperature, cfg.boltzmann);
  ledger_rows(*csv, ledger);

  // The ledger's per-system entropy must agree with the information
  // entropy of its own rounded weights.
  const double reference = cfg.boltzmann * renyi(ledger.rounded_weights, 1.0);
  if (std::abs(ledger.per_system_entropy() - reference) >
      1e-8 * std::max(1.0, std::abs(reference)))
    record_violation(violations, "vn-protocol",
                     "ledger totals disagree with the weight entropy");

  Json payload;
  payload["state"] = state_to_json(w);
  payload["ledger"] = ledger_to_json(ledger);
  return payload;
}

Json run_petz(const ExperimentConfig& cfg, Json& violations,
              std::optional<Csv>& csv) {
  const StateSpace& space = *cfg.space;
  csv.emplace(std::vector<std::string>{"step", "work_in", "heat_out",
                                       "gpt_entropy_delta"});
  Rng master = Rng::derive(cfg.seed, 0x9e72u);

  std::vector<State> components;
  if (space.kind() == Kind::Gbit) {
    components = random_frame_states(space, master.next_u64());
  } else {
    // Uniform mixtures on the faces of a random instrument: perfectly
    // distinguishable and generically mixed.
    const auto inst = random_instrument(space, master.next_u64(), 2);
    for (int j = 0; j < inst.size(); ++j)
      components.push_back(
          make_state(space, inst.units[static_cast<std::size_t>(j)] /
                                inst.ranks[static_cast<std::size_t>(j)]));
  }
  const VectorXd weights =
      Rng(master.next_u64()).dirichlet(static_cast<int>(components.size()));

  Json payload;
  try {
    const ProtocolLedger ledger =
        petz_run(space, components, weights, cfg.n_boxes, cfg.temperature,
                 cfg.boltzmann);
    ledger_rows(*csv, ledger);
    payload["ledger"] = ledger_to_json(ledger);
  } catch (const InvariantViolation& e) {
    record_violation(violations, "petz", e.what());
  }
  Json parts = Json::array();
  for (const State& c : components) parts.push_back(state_to_json(c));
  payload["components"] = std::move(parts);
  return payload;
}

Json run_gbit_demo(const ExperimentConfig& cfg, Json& violations,
                   std::optional<Csv>& csv) {
  csv.emplace(std::vector<std::string>{"p", "candidate_entropy"});
  const GbitDemoTable table =
      gbit_demo(cfg.p_grid, cfg.pure_entropies, cfg.boltzmann);
  for (const GbitDemoRow& r : table.rows)
    csv->row({csv_real(r.p), csv_real(r.candidate_entropy)});

  const ExperimentConfig defaults;
  const bool default_setup =
      cfg.p_grid == defaults.p_grid &&
      std::all_of(cfg.pure_entropies.begin(), cfg.pure_entropies.end(),
                  [](double h) { return h == 0.0; });
  if (default_setup && !(table.spread > 0.1 * cfg.boltzmann))
    record_violation(violations, "gbit-demo",
                     "candidate-entropy spread collapsed on the default grid");

  Json payload = gbit_demo_to_json(table);
  payload["default_grid"] = default_setup;
  return payload;
}

Json run_interference(const ExperimentConfig& cfg, Json& violations,
                      std::optional<Csv>& csv) {
  const StateSpace& space = *cfg.space;
  csv.emplace(std::vector<std::string>{"partition", "i3_norm"});
  Rng master = Rng::derive(cfg.seed, 0x1350u);
  const Frame frame = random_maximal_frame(space, master.next_u64());
  const int rank = frame.size();

  Json partitions = Json::array();
  for (int a = 1; a <= rank - 2; ++a) {
    for (int b = 1; b <= rank - 1 - a; ++b) {
      const int c = rank - a - b;
      std::vector<std::vector<State>> blocks(3);
      blocks[0].assign(frame.states.begin(), frame.states.begin() + a);
      blocks[1].assign(frame.states.begin() + a,
                       frame.states.begin() + a + b);
      blocks[2].assign(frame.states.begin() + a + b, frame.states.end());

      const std::string label = std::to_string(a) + "+" + std::to_string(b) +
                                "+" + std::to_string(c);
      const InterferenceReport rep =
          sorkin_i3(space, blocks, 8, master.next_u64());
      csv->row({label, csv_real(rep.i3_operator_norm)});
      if (rep.i3_operator_norm > 1e-8)
        record_violation(violations, "partition " + label,
                         "third-order defect above tolerance");
      Json entry = interference_to_json(rep);
      entry["partition"] = label;
      partitions.push_back(std::move(entry));
    }
  }

  Json payload;
  payload["partitions"] = std::move(partitions);
  payload["pairwise_defect"] = json_real(pairwise_defect(
      space, {frame.states[0]}, {frame.states[1]}));
  return payload;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const std::set<std::string> known = {
      "task",    "space", "alpha",  "budget", "states",         "seeds",
      "seed",    "n_boxes", "temp", "kb",     "p_grid",         "pure_entropies",
      "out"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (known.count(it.key()) == 0)
      throw ConfigError("unknown config field \"" + it.key() + "\"");

  ExperimentConfig c;
  const auto integer = [&](const char* key, int lo) -> std::optional<int> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_number_integer())
      throw ConfigError(std::string(key) + " must be an integer");
    const int v = j[key].get<int>();
    if (v < lo)
      throw ConfigError(std::string(key) + " must be at least " +
                        std::to_string(lo));
    return v;
  };

  if (j.contains("task")) {
    if (!j["task"].is_string()) throw ConfigError("task must be a string");
    c.task = j["task"].get<std::string>();
  }
  if (j.contains("space")) c.space = space_from_json(j["space"]);
  if (j.contains("alpha")) {
    if (!j["alpha"].is_array()) throw ConfigError("alpha must be a list");
    c.alphas.clear();
    for (const Json& a : j["alpha"]) {
      const double alpha = real_from_json(a);
      if (std::isnan(alpha) || alpha < 0.0)
        throw ConfigError("alpha values must be nonnegative");
      c.alphas.push_back(alpha);
    }
    if (c.alphas.empty()) throw ConfigError("alpha list is empty");
  }
  if (const auto v = integer("budget", 1)) c.budget = *v;
  if (const auto v = integer("states", 1)) c.states = *v;
  if (const auto v = integer("seeds", 1)) c.seeds = *v;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0)
      throw ConfigError("seed must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (const auto v = integer("n_boxes", 1)) c.n_boxes = *v;
  if (j.contains("temp")) {
    if (!j["temp"].is_number()) throw ConfigError("temp must be a number");
    c.temperature = j["temp"].get<double>();
  }
  if (j.contains("kb")) {
    if (!j["kb"].is_number() || !(j["kb"].get<double>() > 0.0))
      throw ConfigError("kb must be a positive number");
    c.boltzmann = j["kb"].get<double>();
  }
  if (j.contains("p_grid")) {
    if (!j["p_grid"].is_array()) throw ConfigError("p_grid must be a list");
    c.p_grid.clear();
    for (const Json& p : j["p_grid"]) {
      if (!p.is_number()) throw ConfigError("p_grid entries must be numbers");
      c.p_grid.push_back(p.get<double>());
    }
    if (c.p_grid.empty()) throw ConfigError("p_grid is empty");
  }
  if (j.contains("pure_entropies")) {
    if (!j["pure_entropies"].is_array() || j["pure_entropies"].size() != 4)
      throw ConfigError("pure_entropies must be a list of four numbers");
    for (std::size_t i = 0; i < 4; ++i) {
      if (!j["pure_entropies"][i].is_number())
        throw ConfigError("pure_entropies must be a list of four numbers");
      c.pure_entropies[i] = j["pure_entropies"][i].get<double>();
    }
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("out must be a string");
    c.out_dir = j["out"].get<std::string>();
  }
  return c;
}

Json config_to_json(const ExperimentConfig& config) {
  Json j;
  j["task"] = config.task;
  if (config.space) j["space"] = space_to_json(*config.space);
  j["alpha"] = Json::array();
  for (double a : config.alphas) j["alpha"].push_back(json_real(a));
  j["budget"] = config.budget;
  j["states"] = config.states;
  j["seeds"] = config.seeds;
  j["seed"] = config.seed;
  j["n_boxes"] = config.n_boxes;
  j["temp"] = config.temperature;
  j["kb"] = config.boltzmann;
  j["p_grid"] = config.p_grid;
  j["pure_entropies"] = config.pure_entropies;
  j["out"] = config.out_dir;
  return j;
}

int run_experiment(const ExperimentConfig& config) {
  if (kTasks.count(config.task) == 0)
    throw ConfigError("unknown task \"" + config.task + "\"");

  const bool needs_space = config.task != "gbit-demo";
  if (needs_space && !config.space)
    throw ConfigError("task " + config.task + " needs a space");
  const bool needs_spectral =
      config.task == "entropy" || config.task == "second-law" ||
      config.task == "vn-protocol" || config.task == "interference" ||
      config.task == "property-suite";
  if (needs_spectral && !config.space->satisfies_postulates())
    throw ConfigError("task " + config.task +
                      " relies on the spectral machinery the square model "
                      "does not have");
  if (config.task == "interference" && config.space->frame_rank() < 3)
    throw ConfigError("interference needs at least three orthogonal "
                      "directions; " +
                      config.space->name() + " has fewer");
  if (config.task == "petz" && config.space->frame_rank() < 2)
    throw ConfigError("petz needs at least two distinguishable components");

  Json violations = Json::array();
  std::optional<Csv> csv;
  Json payload;
  if (config.task == "entropy")
    payload = run_entropy(config, violations, csv);
  else if (config.task == "second-law")
    payload = run_second_law(config, violations, csv);
  else if (config.task == "vn-protocol")
    payload = run_vn_protocol(config, violations, csv);
  else if (config.task == "petz")
    payload = run_petz(config, violations, csv);
  else if (config.task == "gbit-demo")
    payload = run_gbit_demo(config, violations, csv);
  else if (config.task == "interference")
    payload = run_interference(config, violations, csv);
  else
    payload = run_property_suite(config, violations, csv);

  Json results;
  results["schema_version"] = 1;
  results["task"] = config.task;
  results["config"] = config_to_json(config);
  results["results"] = std::move(payload);
  results["violations"] = violations;

  std::filesystem::create_directories(config.out_dir);
  write_text_file(config.out_dir + "/results.json", results.dump(2) + "\n");
  csv->save(config.out_dir + "/results.csv");
  return violations.empty() ? 0 : 2;
}

}  // namespace gptlab
