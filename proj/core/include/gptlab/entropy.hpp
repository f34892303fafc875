#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "gptlab/state_space.hpp"
#include "gptlab/tolerances.hpp"

namespace gptlab {

// Renyi entropy of a probability vector, in nats. alpha 0 counts the
// support (entries above 1e-12), alpha 1 is Shannon, +infinity gives
// -log max. Entries below -1e-12 or a sum off 1 by more than 1e-9 are
// rejected.
double renyi(const Eigen::VectorXd& p, double alpha);

// Renyi entropy of the spectral weights of a normalized state. Zero
// exactly when the state is pure.
double spectral_entropy(const State& w, double alpha = 1.0);

// Best fine-grained measurement found for one state and order alpha.
struct MeasurementSearch {
  double value = 0.0;
  double spectral = 0.0;  // reference: the eigenframe measurement's value
  int examined = 0;
  std::optional<Measurement> best;
};

// Minimizes outcome entropy over fine-grained measurements (rank-one
// resolutions of the unit effect). The eigenframe measurement of w is
// always a candidate and attains the spectral value; `budget` additional
// random resolutions (maximal frames and two-frame coarse mixtures) hunt
// for counterexamples.
MeasurementSearch measurement_entropy(const State& w, double alpha, int budget,
                                      std::uint64_t seed = 1);

// Best pure-state convex decomposition found for one state and order
// alpha. `parts` holds the pure states aligned with `weights`; `residual`
// is the coordinate norm of sum_j q_j w_j - w at the reported optimum.
struct DecompositionSearch {
  double value = 0.0;
  double spectral = 0.0;
  double residual = 0.0;
  int restarts = 0;
  Eigen::VectorXd weights;
  std::vector<State> parts;
};

// Minimizes weight entropy over decompositions of w into at most
// max_terms pure states (max_terms <= 0 means the frame rank). Starts
// from the spectral decomposition, which is always feasible, then runs
// `budget` random-restart local searches over the pure-state manifold;
// candidates are accepted only when the decomposition residual stays
// below 1e-7.
DecompositionSearch decomposition_entropy(const State& w, double alpha,
                                          int budget, int max_terms = 0,
                                          std::uint64_t seed = 1);

// Relative entropy -S(w) - <w, log phi>. Returns +infinity when w has
// weight outside the support of phi.
double relative_entropy(const State& w, const State& phi);

// Relative entropy with nonnegativity enforced: values below -1e-9 raise
// InvariantViolation.
double klein_check(const State& w, const State& phi);

// True when p majorizes q: descending partial sums of p dominate those of
// q within tolerance and the totals agree. Unequal lengths are zero
// padded.
bool majorizes(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
               double tolerance = 1e-8);

// One state, one order: the three entropy values side by side with their
// achieving witnesses and the signed gaps.
struct EntropyReport {
  double alpha = 1.0;
  double spectral = 0.0;
  double measurement_best = 0.0;
  double decomposition_best = 0.0;
  double gap_measurement = 0.0;    // measurement_best - spectral, >= -tol
  double gap_decomposition = 0.0;  // spectral - decomposition_best, >= -tol
  MeasurementSearch measurement;
  DecompositionSearch decomposition;
};

EntropyReport entropy_report(const State& w, double alpha, int budget,
                             std::uint64_t seed = 1);

}  // namespace gptlab
