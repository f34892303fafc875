#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gptlab/state_space.hpp"

namespace gptlab {

// Ordered list of mutually orthogonal pure states together with a
// measurement that identifies each member with certainty. A frame is
// maximal when it has frame_rank members; maximal frames resolve the unit
// effect and their members sum to it.
struct Frame {
  StateSpace space;
  std::vector<State> states;
  Measurement measurement;

  int size() const { return static_cast<int>(states.size()); }
  bool maximal() const { return size() == space.frame_rank(); }
};

struct DistinguishabilityResult {
  bool distinguishable = false;
  std::optional<Measurement> witness;  // e_i(w_j) = delta_ij when present
};

// Decides whether the listed normalized states can be told apart in one
// shot. On the inner-product kinds this reduces to pairwise orthogonality
// and the witness effects are the support units of the inputs; on the
// square model only pairs on opposite sides qualify.
DistinguishabilityResult are_distinguishable(const StateSpace& space,
                                             const std::vector<State>& states,
                                             double tolerance = tol::frame);

// Validates purity and mutual orthogonality and builds the identifying
// measurement (with a completion effect when the frame is not maximal).
Frame make_frame(const StateSpace& space, std::vector<State> states);

// Extends a frame to a maximal one by diagonalizing the residual
// u_A - sum w_i and appending generating frames of its unit-eigenvalue
// faces, in descending-eigenvalue order with lexicographically descending
// coordinates inside each face. Not available on the square model.
Frame complete_frame(const Frame& partial);

// The measurement whose effects are the frame members themselves.
// Requires a maximal frame.
Measurement frame_measurement(const Frame& frame);

Frame random_maximal_frame(const StateSpace& space, std::uint64_t seed);

}  // namespace gptlab
