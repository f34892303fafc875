#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "gptlab/frames.hpp"
#include "gptlab/state_space.hpp"

namespace gptlab {

// Diagonalization of an ambient vector: distinct eigenvalues in descending
// order, one face per eigenvalue, each face carrying its projective unit
// (the sum of a generating frame), an orthogonal projector onto its span,
// and a generating frame. Eigenvalues and units are unique up to the
// clustering tolerance; the frames inside degenerate faces are one valid
// choice, canonicalized by sorting coordinates lexicographically.
struct SpectralDecomposition {
  StateSpace space;
  std::vector<double> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<Eigen::VectorXd> projective_units;
  std::vector<std::vector<State>> eigenframes;

  int faces() const { return static_cast<int>(eigenvalues.size()); }

  // Orthogonal projector onto face j, built from its generating frame.
  Eigen::MatrixXd projector(int j) const;

  // sum_j x_j u_j, which must reproduce the diagonalized vector.
  Eigen::VectorXd reconstruct() const;

  // All eigenframe members flattened in face order (a maximal frame).
  std::vector<State> flat_frame() const;

  // Eigenvalues repeated per multiplicity, aligned with flat_frame().
  Eigen::VectorXd flat_weights() const;
};

// Eigenvalue clustering: after the dense solve, eigenvalues closer than
// tol::eig are merged into one face. Throws PostulateError on the square
// model and DomainError on NaN coordinates. The zero vector diagonalizes
// to the single eigenvalue 0 with the unit effect as its projective unit.
SpectralDecomposition diagonalize(const Observable& x);

// Spectral weights and eigenbasis of a normalized state: weights are the
// eigenvalues clamped to [0, 1] and renormalized, the frame is maximal.
struct StateDecomposition {
  Eigen::VectorXd weights;  // aligned with frame.states
  Frame frame;
};
StateDecomposition spectral_decompose_state(const State& w);

// f applied spectrally: f(x) = sum_j f(x_j) u_j. Throws DomainError when
// f is not finite at an eigenvalue.
Observable spectral_calculus(const Observable& x,
                             const std::function<double(double)>& f);
Observable spectral_calculus(const SpectralDecomposition& dec,
                             const std::function<double(double)>& f);

// Complete family of orthogonal face projectors. Applying it to a state
// yields the outcome distribution of the induced measurement (the face
// units) and the collapsed post-measurement states.
struct ProjectiveInstrument {
  StateSpace space;
  std::vector<Eigen::MatrixXd> projectors;
  std::vector<Eigen::VectorXd> units;
  std::vector<int> ranks;

  int size() const { return static_cast<int>(projectors.size()); }

  Measurement induced_measurement() const;
  Eigen::VectorXd outcome_distribution(const State& w) const;

  // Unnormalized projection of w onto face i.
  Eigen::VectorXd project(const State& w, int i) const;

  // Normalized post-measurement state for outcome i; DomainError when the
  // outcome has zero probability.
  State post_state(const State& w, int i) const;

  // sum_j P_j w, the dephasing channel of the instrument.
  State dephase(const State& w) const;
};

// Builds the instrument of a complete list of orthogonal faces, each given
// by a generating frame block. Face ranks must sum to frame_rank.
ProjectiveInstrument make_instrument(const StateSpace& space,
                                     const std::vector<std::vector<State>>& faces);

// The instrument of a decomposition's eigenfaces.
ProjectiveInstrument instrument_from(const SpectralDecomposition& dec);

// Random maximal frame, randomly partitioned into at least `min_blocks`
// consecutive blocks.
ProjectiveInstrument random_instrument(const StateSpace& space, std::uint64_t seed,
                                       int min_blocks = 1);

// Orthogonal projector onto the face generated by a block of mutually
// orthogonal pure states, as a map on ambient coordinates.
Eigen::MatrixXd face_projector(const StateSpace& space,
                               const std::vector<State>& block);

}  // namespace gptlab
