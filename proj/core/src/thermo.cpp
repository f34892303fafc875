#include "gptlab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gptlab/entropy.hpp"
#include "gptlab/frames.hpp"

namespace gptlab {

using Eigen::VectorXd;

namespace {

// Whole-box rationalization of a weight vector: counts round(p_j N) with
// the residual box assigned to the largest weight.
std::vector<int> rationalize(const VectorXd& weights, int n_boxes) {
  std::vector<int> counts(static_cast<std::size_t>(weights.size()), 0);
  int assigned = 0;
  int argmax = 0;
  for (int j = 0; j < weights.size(); ++j) {
    counts[static_cast<std::size_t>(j)] =
        static_cast<int>(std::lround(weights(j) * n_boxes));
    assigned += counts[static_cast<std::size_t>(j)];
    if (weights(j) > weights(argmax)) argmax = j;
  }
  counts[static_cast<std::size_t>(argmax)] += n_boxes - assigned;
  if (counts[static_cast<std::size_t>(argmax)] < 0)
    throw DomainError("weight rounding produced a negative box count");
  return counts;
}

VectorXd counts_to_weights(const std::vector<int>& counts, int n_boxes) {
  VectorXd p(static_cast<int>(counts.size()));
  for (std::size_t j = 0; j < counts.size(); ++j)
    p(static_cast<int>(j)) = static_cast<double>(counts[j]) / n_boxes;
  return p;
}

// Appends the isothermal piston stages, one per occupied component, and
// returns the summed entropy change. Expansion from the fractional volume
// to the full vessel recovers work p_j N kB T log p_j and draws the same
// amount of heat from the bath.
double append_expansion_steps(ProtocolLedger& ledger) {
  const double n = ledger.n_boxes;
  const double kbt = ledger.boltzmann * ledger.temperature;
  double delta_total = 0.0;
  for (int j = 0; j < ledger.rounded_weights.size(); ++j) {
    const double p = ledger.rounded_weights(j);
    if (p <= 0.0) continue;
    const double work = p * n * kbt * std::log(p);
    const double delta = -p * n * ledger.boltzmann * std::log(p);
    ledger.steps.push_back({"expand component " + std::to_string(j + 1),
                            work, work, delta});
    ledger.totals.work += work;
    ledger.totals.heat += work;
    delta_total += delta;
  }
  return delta_total;
}

void check_distribution(const VectorXd& weights) {
  double total = 0.0;
  for (int i = 0; i < weights.size(); ++i) {
    if (weights(i) < -1e-12)
      throw DomainError("mixing weights have a negative entry");
    total += std::max(0.0, weights(i));
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw DomainError("mixing weights do not sum to one");
}

}  // namespace

ProtocolLedger von_neumann_run(const State& w, int n_boxes, double temperature,
                               double boltzmann) {
  if (n_boxes < 1) throw DomainError("ensemble needs at least one box");
  if (!w.normalized()) throw DomainError("state is not normalized");
  const auto dec = spectral_decompose_state(w);

  ProtocolLedger ledger;
  ledger.n_boxes = n_boxes;
  ledger.temperature = temperature;
  ledger.boltzmann = boltzmann;
  ledger.ideal_weights = dec.weights;
  ledger.box_counts = rationalize(dec.weights, n_boxes);
  ledger.rounded_weights = counts_to_weights(ledger.box_counts, n_boxes);

  ledger.totals.entropy_initial = 0.0;
  ledger.steps.push_back({"prepare uniform pure gas", 0.0, 0.0, 0.0});
  ledger.steps.push_back({"partition volume by box count", 0.0, 0.0, 0.0});
  ledger.steps.push_back({"rotate components onto the eigenbasis", 0.0, 0.0, 0.0});
  const double gained = append_expansion_steps(ledger);
  ledger.steps.push_back({"merge components through membranes", 0.0, 0.0, 0.0});
  ledger.totals.entropy_final = gained;
  return ledger;
}

ProtocolLedger petz_run(const StateSpace& space,
                        const std::vector<State>& components,
                        const VectorXd& weights, int n_boxes,
                        double temperature, double boltzmann,
                        const std::optional<std::vector<double>>&
                            component_entropies) {
  if (n_boxes < 1) throw DomainError("ensemble needs at least one box");
  if (components.empty()) throw DomainError("no components given");
  if (static_cast<int>(components.size()) != weights.size())
    throw DimensionError("one weight per component required");
  check_distribution(weights);
  for (const State& c : components) {
    if (c.space != space) throw DimensionError("component from another space");
    if (!c.normalized()) throw DomainError("components must be normalized");
  }
  if (component_entropies &&
      component_entropies->size() != components.size())
    throw DimensionError("one entropy per component required");
  if (!are_distinguishable(space, components).distinguishable)
    throw DomainError("components are not perfectly distinguishable");

  ProtocolLedger ledger;
  ledger.n_boxes = n_boxes;
  ledger.temperature = temperature;
  ledger.boltzmann = boltzmann;
  ledger.ideal_weights = weights;
  ledger.box_counts = rationalize(weights, n_boxes);
  ledger.rounded_weights = counts_to_weights(ledger.box_counts, n_boxes);

  std::vector<double> per_box(components.size(), 0.0);
  if (component_entropies) {
    per_box = *component_entropies;
  } else if (space.satisfies_postulates()) {
    for (std::size_t j = 0; j < components.size(); ++j)
      per_box[j] = spectral_entropy(components[j], 1.0);
  }
  ledger.decomposition_dependent = !space.satisfies_postulates();

  double initial = 0.0;
  for (std::size_t j = 0; j < components.size(); ++j) {
    const int count = ledger.box_counts[j];
    ledger.steps.push_back({"assemble component " + std::to_string(j + 1) +
                                " (" + std::to_string(count) + " boxes)",
                            0.0, 0.0, 0.0});
    initial += count * boltzmann * per_box[j];
  }
  ledger.totals.entropy_initial = initial;
  ledger.steps.push_back({"stack components behind membranes", 0.0, 0.0, 0.0});
  const double gained = append_expansion_steps(ledger);
  ledger.steps.push_back({"merge components through membranes", 0.0, 0.0, 0.0});
  ledger.totals.entropy_final = initial + gained;

  // On spectral spaces the chained protocol must assign the mixture the
  // same per-system entropy the eigenbasis route does.
  if (space.satisfies_postulates() && !component_entropies) {
    VectorXd mix = VectorXd::Zero(space.ambient_dim());
    for (std::size_t j = 0; j < components.size(); ++j)
      mix += ledger.rounded_weights(static_cast<int>(j)) * components[j].coords;
    const double direct =
        boltzmann * spectral_entropy(make_state(space, mix), 1.0);
    const double chained = ledger.per_system_entropy();
    if (std::abs(direct - chained) > 1e-8 * std::max(1.0, std::abs(direct)))
      throw InvariantViolation("chained and direct entropies disagree");
  }
  return ledger;
}

GbitDemoTable gbit_demo(const std::vector<double>& p_grid,
                        const std::array<double, 4>& pure_entropies,
                        double boltzmann) {
  if (p_grid.empty()) throw DomainError("empty weight grid");
  GbitDemoTable table;
  table.pure_entropies = pure_entropies;
  table.boltzmann = boltzmann;

  for (double p : p_grid) {
    if (!(p > 0.0 && p < 1.0))
      throw DomainError("mixing weights must lie strictly between 0 and 1");
    const double corner_part =
        0.5 * p * (pure_entropies[0] + pure_entropies[2]) +
        0.5 * (1.0 - p) * (pure_entropies[1] + pure_entropies[3]);
    const double mixing_part =
        boltzmann * (-p * std::log(p) - (1.0 - p) * std::log(1.0 - p) +
                     std::log(2.0));
    table.rows.push_back({p, corner_part + mixing_part});
  }

  double lo = table.rows.front().candidate_entropy;
  double hi = lo;
  for (const auto& row : table.rows) {
    lo = std::min(lo, row.candidate_entropy);
    hi = std::max(hi, row.candidate_entropy);
  }
  table.spread = hi - lo;

  const std::set<double> distinct(p_grid.begin(), p_grid.end());
  if (distinct.size() >= 3 && !(table.spread > 0.0))
    throw InvariantViolation(
        "candidate entropy came out constant across the grid");
  return table;
}

SecondLawCheck second_law_projective(const State& w,
                                     const ProjectiveInstrument& instrument) {
  if (instrument.space != w.space)
    throw DimensionError("instrument acts on another space");
  SecondLawCheck check;
  check.before = spectral_entropy(w, 1.0);
  const State dephased = instrument.dephase(w);
  check.after = spectral_entropy(dephased, 1.0);
  if (check.after < check.before - 1e-9)
    throw InvariantViolation("projective instrument decreased entropy");

  // The dephased state's logarithm is blockwise constant, so the relative
  // entropy collapses to the entropy difference; a mismatch means the
  // projectors and the entropy code disagree about the block structure.
  const double rel = relative_entropy(w, dephased);
  const double scale = std::max(1.0, std::abs(check.before) + std::abs(check.after));
  if (!std::isfinite(rel) ||
      std::abs(rel - (check.after - check.before)) > 1e-8 * scale)
    throw InvariantViolation("dephasing identity violated");
  return check;
}

MixingCheck second_law_mixing(const StateSpace& space,
                              const std::vector<State>& states,
                              const VectorXd& weights) {
  if (states.empty()) throw DomainError("no states to mix");
  if (static_cast<int>(states.size()) != weights.size())
    throw DimensionError("one weight per state required");
  check_distribution(weights);

  VectorXd mix = VectorXd::Zero(space.ambient_dim());
  MixingCheck check;
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (states[j].space != space)
      throw DimensionError("state from another space");
    const double p = std::max(0.0, weights(static_cast<int>(j)));
    mix += p * states[j].coords;
    if (p > 0.0) check.averaged += p * spectral_entropy(states[j], 1.0);
  }
  check.mixed = spectral_entropy(make_state(space, mix), 1.0);
  if (check.mixed < check.averaged - 1e-9)
    throw InvariantViolation("mixing decreased entropy");
  return check;
}

double mixing_entropy_gain(const StateSpace& space,
                           const std::vector<State>& states,
                           const std::vector<int>& box_counts,
                           double boltzmann) {
  if (states.size() != box_counts.size())
    throw DimensionError("one box count per state required");
  int n = 0;
  for (int c : box_counts) {
    if (c < 0) throw DomainError("box counts must be nonnegative");
    n += c;
  }
  if (n < 1) throw DomainError("ensemble needs at least one box");

  VectorXd weights(static_cast<int>(box_counts.size()));
  for (std::size_t j = 0; j < box_counts.size(); ++j)
    weights(static_cast<int>(j)) = static_cast<double>(box_counts[j]) / n;
  const MixingCheck check = second_law_mixing(space, states, weights);
  return n * boltzmann * (check.mixed - check.averaged);
}

}  // namespace gptlab
