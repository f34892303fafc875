#include "gptlab/frames.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "gptlab/spectral.hpp"

namespace gptlab {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

namespace {

void require_normalized(const std::vector<State>& states) {
  for (const State& w : states) {
    if (!w.normalized()) throw DomainError("state is not normalized");
  }
}

void require_same_space(const StateSpace& space, const std::vector<State>& states) {
  for (const State& w : states) {
    if (w.space != space) throw DimensionError("state list mixes spaces");
  }
}

// Projective unit of the support face of a normalized state: the state
// itself when pure, otherwise the sum of any generating frame of the
// smallest face containing it.
VectorXd support_unit(const State& w) {
  const StateSpace& space = w.space;
  switch (space.kind()) {
    case Kind::Classical: {
      VectorXd u = VectorXd::Zero(space.ambient_dim());
      for (int i = 0; i < space.ambient_dim(); ++i)
        if (w.coords(i) > tol::support) u(i) = 1.0;
      return u;
    }
    case Kind::QuantumC:
    case Kind::QuantumR:
    case Kind::QuantumH: {
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(space.to_matrix(w.coords));
      MatrixXcd proj = MatrixXcd::Zero(space.matrix_dim(), space.matrix_dim());
      for (int i = 0; i < space.matrix_dim(); ++i) {
        if (es.eigenvalues()(i) > tol::support)
          proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      }
      return space.from_matrix(proj);
    }
    case Kind::Bloch: {
      const double r = w.coords.tail(space.param()).norm();
      if (r >= 1.0 - tol::frame) return w.coords;  // pure: the ray itself
      return space.unit_effect();                  // interior: the whole cone
    }
    case Kind::Gbit:
      throw PostulateError();
  }
  throw DomainError("unknown kind");
}

// Square-model distinguishability: two states sitting on opposite closed
// sides of the square. Returns the side axis (1 or 2) and which state sits
// at zero, or -1 when no axis works.
struct SideWitness {
  int axis = -1;
  bool first_at_zero = true;
};

SideWitness find_opposite_sides(const State& a, const State& b, double tolerance) {
  for (int axis = 1; axis <= 2; ++axis) {
    if (a.coords(axis) <= tolerance && b.coords(axis) >= 1.0 - tolerance)
      return SideWitness{axis, true};
    if (b.coords(axis) <= tolerance && a.coords(axis) >= 1.0 - tolerance)
      return SideWitness{axis, false};
  }
  return SideWitness{};
}

bool lex_descending(const VectorXd& a, const VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);
  }
  return false;
}

}  // namespace

DistinguishabilityResult are_distinguishable(const StateSpace& space,
                                             const std::vector<State>& states,
                                             double tolerance) {
  if (states.size() < 2)
    throw DomainError("distinguishability needs at least two states");
  require_same_space(space, states);
  require_normalized(states);

  if (!space.satisfies_postulates()) {
    // On the square at most two states can be told apart in one shot.
    if (states.size() > 2) return {};
    const auto side = find_opposite_sides(states[0], states[1], tolerance);
    if (side.axis < 0) return {};
    VectorXd low = VectorXd::Zero(3), high = VectorXd::Zero(3);
    high(side.axis) = 1.0;                    // reads off the side coordinate
    low(0) = 1.0; low(side.axis) = -1.0;      // its complement
    std::vector<Effect> effects;
    if (side.first_at_zero) {
      effects = {Effect{space, low}, Effect{space, high}};
    } else {
      effects = {Effect{space, high}, Effect{space, low}};
    }
    return {true, Measurement(space, std::move(effects))};
  }

  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (std::abs(inner(states[i], states[j])) > tolerance) return {};
    }
  }

  // Orthogonal supports: the support units, padded with the leftover of
  // the unit effect, identify each input with certainty.
  std::vector<Effect> effects;
  VectorXd total = VectorXd::Zero(space.ambient_dim());
  for (const State& w : states) {
    VectorXd e = support_unit(w);
    total += e;
    effects.push_back(Effect{space, std::move(e)});
  }
  const VectorXd rest = space.unit_effect() - total;
  if (rest.cwiseAbs().maxCoeff() > tol::frame) effects.push_back(Effect{space, rest});
  Measurement m(space, std::move(effects));
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(m.effects()[i](states[j]) - expect) > tolerance)
        throw InvariantViolation("support units fail to separate orthogonal states");
    }
  }
  return {true, std::move(m)};
}

Frame make_frame(const StateSpace& space, std::vector<State> states) {
  if (states.empty()) throw DomainError("frame needs at least one state");
  if (static_cast<int>(states.size()) > space.frame_rank())
    throw DomainError("more states than frame_rank");
  require_same_space(space, states);
  require_normalized(states);
  for (const State& w : states) {
    if (!is_pure(w)) throw DomainError("frame members must be pure");
  }

  if (!space.satisfies_postulates()) {
    if (states.size() == 1) {
      // Any corner is readable by one side effect.
      const State& w = states[0];
      VectorXd e = VectorXd::Zero(3);
      if (w.coords(1) >= 0.5) {
        e(1) = 1.0;
      } else {
        e(0) = 1.0;
        e(1) = -1.0;
      }
      std::vector<Effect> effects{Effect{space, e},
                                  Effect{space, space.unit_effect() - e}};
      return Frame{space, std::move(states), Measurement(space, std::move(effects))};
    }
    auto result = are_distinguishable(space, states);
    if (!result.distinguishable)
      throw DomainError("square-model states are not on opposite sides");
    return Frame{space, std::move(states), std::move(*result.witness)};
  }

  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (std::abs(inner(states[i], states[j])) > tol::frame)
        throw DomainError("frame members must be mutually orthogonal");
    }
  }

  std::vector<Effect> effects;
  VectorXd total = VectorXd::Zero(space.ambient_dim());
  for (const State& w : states) {
    total += w.coords;
    effects.push_back(Effect{space, w.coords});
  }
  const VectorXd rest = space.unit_effect() - total;
  if (rest.cwiseAbs().maxCoeff() > tol::frame) effects.push_back(Effect{space, rest});
  return Frame{space, std::move(states), Measurement(space, std::move(effects))};
}

Frame complete_frame(const Frame& partial) {
  const StateSpace& space = partial.space;
  if (!space.satisfies_postulates()) throw PostulateError();
  if (partial.maximal()) return partial;

  VectorXd residual = space.unit_effect();
  for (const State& w : partial.states) residual -= w.coords;

  const auto dec = diagonalize(Observable{space, residual});
  std::vector<State> states = partial.states;
  for (int f = 0; f < dec.faces(); ++f) {
    const double ev = dec.eigenvalues[static_cast<std::size_t>(f)];
    if (std::abs(ev - 1.0) <= 1e-6) {
      std::vector<State> block = dec.eigenframes[static_cast<std::size_t>(f)];
      std::sort(block.begin(), block.end(), [](const State& a, const State& b) {
        return lex_descending(a.coords, b.coords);
      });
      for (State& w : block) states.push_back(std::move(w));
    } else if (std::abs(ev) > 1e-6) {
      throw DomainError("input is not a frame: residual is not a projective unit");
    }
  }
  Frame full = make_frame(space, std::move(states));
  if (!full.maximal())
    throw InvariantViolation("completion did not reach frame_rank");
  return full;
}

Measurement frame_measurement(const Frame& frame) {
  if (!frame.maximal()) throw DomainError("frame_measurement needs a maximal frame");
  if (!frame.space.satisfies_postulates()) {
    return frame.measurement;  // the stored side-reading measurement
  }
  std::vector<Effect> effects;
  effects.reserve(frame.states.size());
  for (const State& w : frame.states) effects.push_back(Effect{frame.space, w.coords});
  return Measurement(frame.space, std::move(effects));
}

Frame random_maximal_frame(const StateSpace& space, std::uint64_t seed) {
  return make_frame(space, random_frame_states(space, seed, -1));
}

}  // namespace gptlab
