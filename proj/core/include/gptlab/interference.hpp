#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gptlab/state_space.hpp"

namespace gptlab {

// Third-order defect of a three-slit face partition: how far the
// three-face projector deviates from the inclusion-exclusion combination
// of the pair and single projectors. Zero on every model built here;
// pairwise defects stay visibly nonzero on the matrix kinds.
struct InterferenceReport {
  std::string space_name;
  std::vector<int> block_sizes;
  double i3_operator_norm = 0.0;
  std::vector<double> state_residuals;
  double s0_gap = 0.0;  // best-effort max-entropy gap on a probe state
};

// blocks: three disjoint, mutually orthogonal sets of pure states whose
// union extends to a maximal frame. residual_samples random states probe
// the defect map directly.
InterferenceReport sorkin_i3(const StateSpace& space,
                             const std::vector<std::vector<State>>& blocks,
                             int residual_samples = 16,
                             std::uint64_t seed = 1);

// Operator norm of P_ab - P_a - P_b for two orthogonal blocks: the
// second-order interference strength of the pair.
double pairwise_defect(const StateSpace& space, const std::vector<State>& a,
                       const std::vector<State>& b);

// S_0(w) minus the best decomposition value at order zero, sweeping the
// term cap from the frame rank to ambient_dim + 1 with the given total
// restart budget. Nonzero values would witness a third-order phenomenon
// none of the implemented spaces has.
double max_entropy_gap(const State& w, int budget, std::uint64_t seed = 1);

}  // namespace gptlab
