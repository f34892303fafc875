#include "gptlab/interference.hpp"

#include <algorithm>
#include <cmath>

#include "gptlab/entropy.hpp"
#include "gptlab/rng.hpp"
#include "gptlab/spectral.hpp"

namespace gptlab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::vector<State> concatenate(const std::vector<std::vector<State>>& blocks,
                               std::initializer_list<int> picks) {
  std::vector<State> all;
  for (int i : picks)
    for (const State& w : blocks[static_cast<std::size_t>(i)]) all.push_back(w);
  return all;
}

void check_blocks(const StateSpace& space,
                  const std::vector<std::vector<State>>& blocks,
                  std::size_t expected) {
  if (!space.satisfies_postulates()) throw PostulateError();
  if (blocks.size() != expected)
    throw DomainError(std::to_string(expected) + " nonempty blocks required");
  std::vector<State> all;
  for (const auto& block : blocks) {
    if (block.empty()) throw DomainError("empty block");
    for (const State& w : block) {
      if (w.space != space) throw DimensionError("block state from another space");
      if (!w.normalized() || !is_pure(w))
        throw DomainError("blocks must consist of normalized pure states");
      all.push_back(w);
    }
  }
  if (static_cast<int>(all.size()) > space.frame_rank())
    throw DomainError("blocks exceed the frame rank");
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (std::abs(inner(all[i], all[j])) > tol::frame)
        throw DomainError("blocks are not mutually orthogonal");
}

}  // namespace

InterferenceReport sorkin_i3(const StateSpace& space,
                             const std::vector<std::vector<State>>& blocks,
                             int residual_samples, std::uint64_t seed) {
  check_blocks(space, blocks, 3);

  const auto p = [&](std::initializer_list<int> picks) {
    return face_projector(space, concatenate(blocks, picks));
  };
  const MatrixXd defect = p({0, 1, 2}) - p({0, 1}) - p({0, 2}) - p({1, 2}) +
                          p({0}) + p({1}) + p({2});

  InterferenceReport report;
  report.space_name = space.name();
  for (const auto& block : blocks)
    report.block_sizes.push_back(static_cast<int>(block.size()));
  report.i3_operator_norm = space.operator_norm(defect);

  Rng rng = Rng::derive(seed, 0x5083u);
  for (int k = 0; k < residual_samples; ++k) {
    const State w = random_state(space, rng.next_u64(), Purity::Mixed);
    report.state_residuals.push_back(space.inner_norm(defect * w.coords));
  }
  report.s0_gap = max_entropy_gap(
      random_state(space, Rng::derive(seed, 0x5084u).next_u64(), Purity::Mixed),
      20, seed);
  return report;
}

double pairwise_defect(const StateSpace& space, const std::vector<State>& a,
                       const std::vector<State>& b) {
  check_blocks(space, {a, b}, 2);
  const std::vector<std::vector<State>> blocks{a, b};
  const MatrixXd defect = face_projector(space, concatenate(blocks, {0, 1})) -
                          face_projector(space, a) - face_projector(space, b);
  return space.operator_norm(defect);
}

double max_entropy_gap(const State& w, int budget, std::uint64_t seed) {
  const StateSpace& space = w.space;
  const double s0 = spectral_entropy(w, 0.0);

  const int lo = space.frame_rank();
  const int hi = space.ambient_dim() + 1;
  const int sweeps = hi - lo + 1;
  const int per_sweep = std::max(1, budget / sweeps);

  double best = s0;
  Rng rng = Rng::derive(seed, 0x60a9u);
  for (int terms = lo; terms <= hi; ++terms) {
    const auto found =
        decomposition_entropy(w, 0.0, per_sweep, terms, rng.next_u64());
    best = std::min(best, found.value);
  }
  return s0 - best;
}

}  // namespace gptlab
