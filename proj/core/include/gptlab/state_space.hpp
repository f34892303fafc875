#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gptlab/errors.hpp"
#include "gptlab/tolerances.hpp"

namespace gptlab {

// The implemented unrestricted models. Classical simplices, the three
// matrix families (complex / real symmetric / quaternionic, the last one
// realized through its 2Nx2N complex embedding), the d-ball family, and
// the square-cross-section model that deliberately breaks the spectral
// machinery and serves as the counterexample space.
enum class Kind { Classical, QuantumC, QuantumR, QuantumH, Bloch, Gbit };

enum class Purity { Pure, Mixed };

std::string kind_name(Kind k);

// An ordered linear description of one system type: the ambient real
// vector space, its positive cone, the self-dualizing inner product
// (stored as a gram matrix over the coordinate basis), and the unit
// effect. Cheap to copy; instances with equal kind and size parameter
// are interchangeable.
class StateSpace {
 public:
  static StateSpace classical(int n);
  static StateSpace quantum_c(int n);
  static StateSpace quantum_r(int n);
  static StateSpace quantum_h(int n);
  static StateSpace bloch(int d);
  static StateSpace gbit();
  static StateSpace make(Kind kind, int param);

  // Parses "classical:3", "quantum-c:2", "bloch:4", "gbit", ...
  static StateSpace parse(const std::string& name);

  Kind kind() const;
  int param() const;  // N for classical/matrix kinds, d for the ball, 0 for gbit
  std::string name() const;

  int ambient_dim() const;
  int frame_rank() const;
  bool satisfies_postulates() const;

  const Eigen::MatrixXd& gram() const;
  const Eigen::VectorXd& unit_effect() const;

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double inner_norm(const Eigen::VectorXd& x) const;  // sqrt(<x,x>)
  double norm_of(const Eigen::VectorXd& x) const;     // <u_A, x>
  bool in_cone(const Eigen::VectorXd& x, double tolerance = tol::cone) const;

  // Matrix view. Only the matrix kinds have one; the accessors throw
  // DomainError elsewhere. For the quaternionic family this is the complex
  // embedding, with matrix_dim() == 2N and the trace form halved.
  bool has_matrix_view() const;
  int matrix_dim() const;
  double trace_scale() const;  // <X,Y> = trace_scale * Re tr(XY)
  const Eigen::MatrixXcd& basis_element(int k) const;
  Eigen::MatrixXcd to_matrix(const Eigen::VectorXd& coords) const;
  Eigen::VectorXd from_matrix(const Eigen::MatrixXcd& m) const;

  // Gram-orthonormalized operator norm of a linear map on the ambient
  // space (largest singular value of G^1/2 M G^-1/2).
  double operator_norm(const Eigen::MatrixXd& map) const;

  bool operator==(const StateSpace& other) const;
  bool operator!=(const StateSpace& other) const { return !(*this == other); }

 private:
  struct Impl;
  explicit StateSpace(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Normalized or subnormalized element of the positive cone.
struct State {
  StateSpace space;
  Eigen::VectorXd coords;

  double norm() const { return space.norm_of(coords); }
  bool normalized(double tolerance = tol::norm) const;
};

// Element of the effect cone, acting on states through the inner product.
struct Effect {
  StateSpace space;
  Eigen::VectorXd coords;

  double operator()(const State& w) const;
};

// Plain vector of the ambient space; diagonalization input.
struct Observable {
  StateSpace space;
  Eigen::VectorXd coords;
};

// Finite collection of effects resolving the unit effect.
class Measurement {
 public:
  Measurement(StateSpace space, std::vector<Effect> effects);

  const StateSpace& space() const { return space_; }
  const std::vector<Effect>& effects() const { return effects_; }
  int size() const { return static_cast<int>(effects_.size()); }

  Eigen::VectorXd outcome_distribution(const State& w) const;

 private:
  StateSpace space_;
  std::vector<Effect> effects_;
};

// Validating constructors. make_state rejects coordinates outside the cone
// or with norm beyond [0, 1 + tol]; make_effect rejects vectors outside the
// effect cone (for the self-dual kinds that is the state cone itself).
State make_state(const StateSpace& space, Eigen::VectorXd coords);
Effect make_effect(const StateSpace& space, Eigen::VectorXd coords);

double inner(const State& a, const State& b);
bool is_pure(const State& w, double tolerance = tol::frame);

State maximally_mixed(const StateSpace& space);

// Seed-deterministic sampling. Mixed states draw a uniformly random
// orthonormal frame (model-appropriate: permutation / unitary / orthogonal /
// symplectic-paired / antipodal) and flat-Dirichlet weights; pure states a
// random extreme point. Observables have standard normal coordinates.
State random_state(const StateSpace& space, std::uint64_t seed, Purity purity);
Observable random_observable(const StateSpace& space, std::uint64_t seed);

// `count` mutually orthogonal pure states (count == -1 means a maximal set).
std::vector<State> random_frame_states(const StateSpace& space,
                                       std::uint64_t seed, int count = -1);

// A random gram-preserving linear symmetry of the cone (basis shuffle):
// coordinate permutation, conjugation by a random unitary / orthogonal /
// symplectic matrix, or a rotation of the ball. Throws PostulateError for
// the square model, whose cone symmetries do not preserve the standard gram.
Eigen::MatrixXd random_symmetry(const StateSpace& space, std::uint64_t seed);

// Antiunitary partner map of the quaternionic embedding, v -> J conj(v)
// with J = [[0, I], [-I, 0]]. Eigenspaces of embedded observables are
// closed under it and carry even complex dimension.
Eigen::VectorXcd symplectic_partner(const Eigen::VectorXcd& v);

}  // namespace gptlab
