#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gptlab/spectral.hpp"
#include "gptlab/state_space.hpp"

namespace gptlab {

// One stage of a box-gas protocol. work_in is work performed on the gas,
// so negative values are work recovered; heat_out is heat released to the
// bath, negative values are heat drawn from it; gpt_entropy_delta is the
// entropy change assigned to the ensemble over the stage (absorbed heat
// over temperature for the isothermal stages, zero elsewhere).
struct LedgerStep {
  std::string label;
  double work_in = 0.0;
  double heat_out = 0.0;
  double gpt_entropy_delta = 0.0;
};

struct LedgerTotals {
  double work = 0.0;
  double heat = 0.0;
  double entropy_initial = 0.0;
  double entropy_final = 0.0;
};

// Work-and-entropy bookkeeping of the reversible membrane protocol. The
// run is oriented in the synthesis direction (component gases are merged
// into the target ensemble), so the piston stage recovers work:
// work_in = sum_j p_j N kB T log p_j <= 0, the same amount of heat flows
// in from the bath, and the ensemble entropy grows by
// -N kB sum_j p_j log p_j. Weights are rationalized to whole boxes,
// N_j = round(p_j N) with the residual assigned to the largest weight,
// and the rounded weights are used in every stage, so the totals are
// exact for the recorded counts.
struct ProtocolLedger {
  int n_boxes = 0;
  double temperature = 0.0;
  double boltzmann = 1.0;
  Eigen::VectorXd ideal_weights;
  Eigen::VectorXd rounded_weights;
  std::vector<int> box_counts;
  std::vector<LedgerStep> steps;
  LedgerTotals totals;

  // Set when a component entropy had to be assumed rather than computed;
  // the square model admits no decomposition-independent assignment.
  bool decomposition_dependent = false;

  double per_system_entropy() const {
    return totals.entropy_final / n_boxes;
  }
};

// Ledger for synthesizing N boxes of w from a uniform pure gas through
// w's eigenbasis. Totals reproduce the ensemble entropy
// -N kB sum_j p_j log p_j and the per-system entropy kB * S(w).
ProtocolLedger von_neumann_run(const State& w, int n_boxes, double temperature,
                               double boltzmann = 1.0);

// Ledger for merging perfectly distinguishable component gases with box
// fractions `weights` into their mixture. Component per-box entropies are
// spectral when the space supports them, otherwise they must be supplied
// (in nats; the ledger multiplies by kB) or default to zero with the
// decomposition_dependent flag set. On spectral spaces the resulting
// per-system entropy is checked against the mixture's spectral entropy.
ProtocolLedger petz_run(const StateSpace& space,
                        const std::vector<State>& components,
                        const Eigen::VectorXd& weights, int n_boxes,
                        double temperature, double boltzmann = 1.0,
                        const std::optional<std::vector<double>>&
                            component_entropies = std::nullopt);

struct GbitDemoRow {
  double p = 0.0;
  double candidate_entropy = 0.0;
};

// Candidate entropies the chained mixing protocol assigns to the center
// of the square state space, one row per mixing weight p. A consistent
// assignment would make the column constant; the spread certifies that
// none exists, whatever entropies the four corners are given.
struct GbitDemoTable {
  std::vector<GbitDemoRow> rows;
  double spread = 0.0;
  std::array<double, 4> pure_entropies{};
  double boltzmann = 1.0;
};

GbitDemoTable gbit_demo(const std::vector<double>& p_grid,
                        const std::array<double, 4>& pure_entropies = {0.0, 0.0,
                                                                       0.0, 0.0},
                        double boltzmann = 1.0);

struct SecondLawCheck {
  double before = 0.0;
  double after = 0.0;
};

// Entropy before and after the dephasing channel of a projective
// instrument. Violations of after >= before - 1e-9 raise
// InvariantViolation, as does a failed cross-check of the dephasing
// identity relative_entropy(w, w') = S(w') - S(w).
SecondLawCheck second_law_projective(const State& w,
                                     const ProjectiveInstrument& instrument);

struct MixingCheck {
  double mixed = 0.0;     // S(sum_j p_j w_j)
  double averaged = 0.0;  // sum_j p_j S(w_j)
};

// Concavity check: the entropy of the mixture against the mixture of
// entropies. Violations beyond 1e-9 raise InvariantViolation.
MixingCheck second_law_mixing(const StateSpace& space,
                              const std::vector<State>& states,
                              const Eigen::VectorXd& weights);

// Tank-mixing entropy gain N kB (S(mix) - sum_j (N_j/N) S(w_j)) for whole
// box counts N_j.
double mixing_entropy_gain(const StateSpace& space,
                           const std::vector<State>& states,
                           const std::vector<int>& box_counts,
                           double boltzmann = 1.0);

}  // namespace gptlab
