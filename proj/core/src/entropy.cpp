#include "gptlab/entropy.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gptlab/frames.hpp"
#include "gptlab/nnls.hpp"
#include "gptlab/rng.hpp"
#include "gptlab/spectral.hpp"

namespace gptlab {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Row-orthonormalizes g: returns (g g*)^{-1/2} g, a co-isometry with the
// same row space. Works for real and complex matrices alike.
template <typename Mat>
Mat orth_rows(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g * g.adjoint());
  const VectorXd ev = es.eigenvalues().cwiseMax(1e-14);
  return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint() * g;
}

// Mixture weights induced by a co-isometry u on support spectrum lambda:
// q_j = sum_k lambda_k |u_kj|^2. Sums to sum(lambda) by construction.
template <typename Mat>
VectorXd coisometry_weights(const VectorXd& lambda, const Mat& u) {
  VectorXd q = VectorXd::Zero(u.cols());
  for (int j = 0; j < u.cols(); ++j)
    for (int k = 0; k < u.rows(); ++k) q(j) += lambda(k) * std::norm(u(k, j));
  return q / q.sum();
}

Measurement coarse_frame_mixture(const StateSpace& space, Rng& rng) {
  const auto a = random_frame_states(space, rng.next_u64());
  const auto b = random_frame_states(space, rng.next_u64());
  const double t = rng.uniform(0.1, 0.9);
  std::vector<Effect> effects;
  for (const State& w : a) effects.push_back(make_effect(space, t * w.coords));
  for (const State& w : b)
    effects.push_back(make_effect(space, (1.0 - t) * w.coords));
  return Measurement(space, std::move(effects));
}

VectorXd reconstruct_mix(const VectorXd& weights, const std::vector<State>& parts,
                         int ambient) {
  VectorXd mix = VectorXd::Zero(ambient);
  for (int i = 0; i < weights.size(); ++i)
    mix += weights(i) * parts[static_cast<std::size_t>(i)].coords;
  return mix;
}

// Local search over decompositions of a matrix-kind state: any convex
// decomposition into max_terms pure states corresponds to a co-isometry
// from the support spectrum, so feasibility is automatic and only the
// weight entropy is optimized.
template <typename Mat, typename Sampler>
void purification_search(const StateSpace& space, const State& w, double alpha,
                         int budget, int max_terms, Sampler sample,
                         DecompositionSearch& out) {
  Mat m;
  if constexpr (std::is_same_v<Mat, MatrixXd>)
    m = space.to_matrix(w.coords).real();
  else
    m = space.to_matrix(w.coords);
  Eigen::SelfAdjointEigenSolver<Mat> es(m);

  std::vector<int> support;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > tol::support) support.push_back(i);
  const int r = static_cast<int>(support.size());
  VectorXd lambda(r);
  Mat b(m.rows(), r);
  for (int k = 0; k < r; ++k) {
    lambda(k) = es.eigenvalues()(support[static_cast<std::size_t>(k)]);
    b.col(k) = es.eigenvectors().col(support[static_cast<std::size_t>(k)]) *
               std::sqrt(lambda(k));
  }
  lambda /= lambda.sum();

  double best_value = kInf;
  Mat best_u;
  for (int restart = 0; restart < budget; ++restart) {
    Mat g = sample(r, max_terms);
    Mat u = orth_rows(g);
    double value = renyi(coisometry_weights(lambda, u), alpha);
    double step = 0.6;
    for (int it = 0; it < 30; ++it) {
      const Mat g2 = g + step * sample(r, max_terms);
      const Mat u2 = orth_rows(g2);
      const double v2 = renyi(coisometry_weights(lambda, u2), alpha);
      if (v2 < value - 1e-13) {
        g = g2;
        u = u2;
        value = v2;
      } else {
        step *= 0.8;
      }
    }
    if (value < best_value) {
      best_value = value;
      best_u = u;
    }
    ++out.restarts;
  }
  if (best_value >= out.value - 1e-13) return;

  const Mat cols = b * best_u;  // column j = sqrt(q_j) * (pure vector j)
  std::vector<State> parts;
  std::vector<double> kept;
  for (int j = 0; j < cols.cols(); ++j) {
    const double q = cols.col(j).squaredNorm();
    if (q <= tol::support) continue;
    const Mat psi = cols.col(j) / std::sqrt(q);
    const MatrixXcd proj = (psi * psi.adjoint()).template cast<std::complex<double>>();
    parts.push_back(make_state(space, space.from_matrix(proj)));
    kept.push_back(q);
  }
  VectorXd weights = Eigen::Map<VectorXd>(kept.data(), static_cast<int>(kept.size()));
  weights /= weights.sum();
  out.value = renyi(weights, alpha);
  out.residual = (reconstruct_mix(weights, parts, space.ambient_dim()) - w.coords).norm();
  out.weights = std::move(weights);
  out.parts = std::move(parts);
}

// Local search over decompositions parametrized by raw pure states, with
// the weights recovered by nonnegative least squares. A candidate counts
// only when the reconstruction residual stays small; used for the kinds
// without a purification shortcut.
void repair_search(const StateSpace& space, const State& w, double alpha,
                   int budget, int max_terms, Rng& rng,
                   DecompositionSearch& out) {
  const int ambient = space.ambient_dim();
  const bool ball = space.kind() == Kind::Bloch;

  auto pure_coords = [&](const VectorXcd& param) -> VectorXd {
    if (ball) {
      VectorXd c(ambient);
      c(0) = 1.0;
      c.tail(ambient - 1) = param.real().normalized();
      return c;
    }
    const VectorXcd v = param.normalized();
    const VectorXcd p = symplectic_partner(v);
    return space.from_matrix(v * v.adjoint() + p * p.adjoint());
  };
  const int param_dim = ball ? ambient - 1 : space.matrix_dim();
  auto sample_param = [&](Rng& r) -> VectorXcd {
    if (ball)
      return r.gaussian_vector(param_dim).cast<std::complex<double>>();
    return r.gaussian_complex_matrix(param_dim, 1).col(0);
  };

  struct Attempt {
    double value = kInf;
    double residual = kInf;
    VectorXd weights;
    std::vector<VectorXd> columns;
  };
  auto evaluate = [&](const std::vector<VectorXcd>& params) -> Attempt {
    Attempt at;
    MatrixXd a(ambient, static_cast<int>(params.size()));
    for (std::size_t j = 0; j < params.size(); ++j)
      a.col(static_cast<int>(j)) = pure_coords(params[j]);
    const NnlsResult sol = nnls(a, w.coords);
    const double total = sol.x.sum();
    if (total <= tol::support) return at;
    VectorXd q = sol.x / total;
    at.residual = (a * q - w.coords).norm();
    if (at.residual > tol::residual) return at;
    at.value = renyi(q, alpha);
    at.weights = std::move(q);
    for (int j = 0; j < a.cols(); ++j) at.columns.push_back(a.col(j));
    return at;
  };

  Attempt best;
  for (int restart = 0; restart < budget; ++restart) {
    std::vector<VectorXcd> params;
    for (int j = 0; j < max_terms; ++j) params.push_back(sample_param(rng));
    Attempt current = evaluate(params);
    double step = 0.5;
    for (int it = 0; it < 30; ++it) {
      std::vector<VectorXcd> moved = params;
      for (auto& p : moved) p = p.normalized() + step * sample_param(rng) * 0.5;
      const Attempt next = evaluate(moved);
      if (next.value < current.value - 1e-13) {
        params = std::move(moved);
        current = next;
      } else {
        step *= 0.8;
      }
    }
    if (current.value < best.value) best = std::move(current);
    ++out.restarts;
  }
  if (best.value >= out.value - 1e-13) return;

  std::vector<State> parts;
  std::vector<double> kept;
  for (int j = 0; j < best.weights.size(); ++j) {
    if (best.weights(j) <= tol::support) continue;
    parts.push_back(make_state(space, best.columns[static_cast<std::size_t>(j)]));
    kept.push_back(best.weights(j));
  }
  VectorXd weights = Eigen::Map<VectorXd>(kept.data(), static_cast<int>(kept.size()));
  weights /= weights.sum();
  out.value = renyi(weights, alpha);
  out.residual = (reconstruct_mix(weights, parts, ambient) - w.coords).norm();
  out.weights = std::move(weights);
  out.parts = std::move(parts);
}

}  // namespace

double renyi(const VectorXd& p, double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("entropy order must be nonnegative");
  double total = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p(i) < -1e-12)
      throw DomainError("probability vector has a negative entry");
    total += std::max(0.0, p(i));
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw DomainError("probabilities do not sum to one");

  if (alpha == 0.0) {
    int support = 0;
    for (int i = 0; i < p.size(); ++i)
      if (p(i) > tol::support) ++support;
    return std::log(static_cast<double>(support));
  }
  if (std::isinf(alpha)) return -std::log(p.maxCoeff());
  if (std::abs(alpha - 1.0) <= 1e-12) {
    double h = 0.0;
    for (int i = 0; i < p.size(); ++i)
      if (p(i) > 0.0) h -= p(i) * std::log(p(i));
    return h;
  }
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) s += std::pow(p(i), alpha);
  return std::log(s) / (1.0 - alpha);
}

double spectral_entropy(const State& w, double alpha) {
  if (!w.normalized()) throw DomainError("state is not normalized");
  const auto dec = diagonalize(Observable{w.space, w.coords});
  VectorXd weights = dec.flat_weights().cwiseMax(0.0).cwiseMin(1.0);
  weights /= weights.sum();
  return renyi(weights, alpha);
}

MeasurementSearch measurement_entropy(const State& w, double alpha, int budget,
                                      std::uint64_t seed) {
  if (budget <= 0) throw DomainError("optimizer budget must be positive");
  if (!w.normalized()) throw DomainError("state is not normalized");
  const StateSpace& space = w.space;
  const auto dec = diagonalize(Observable{space, w.coords});

  MeasurementSearch out;
  Measurement eigen = frame_measurement(make_frame(space, dec.flat_frame()));
  out.spectral = renyi(eigen.outcome_distribution(w), alpha);
  out.value = out.spectral;
  out.best = std::move(eigen);
  out.examined = 1;

  Rng rng = Rng::derive(seed, 0x3a51u);
  for (int k = 0; k < budget; ++k) {
    Measurement candidate =
        (k % 2 == 0)
            ? frame_measurement(random_maximal_frame(space, rng.next_u64()))
            : coarse_frame_mixture(space, rng);
    const double value = renyi(candidate.outcome_distribution(w), alpha);
    ++out.examined;
    if (value < out.value) {
      out.value = value;
      out.best = std::move(candidate);
    }
  }
  return out;
}

DecompositionSearch decomposition_entropy(const State& w, double alpha,
                                          int budget, int max_terms,
                                          std::uint64_t seed) {
  if (!w.normalized()) throw DomainError("state is not normalized");
  const StateSpace& space = w.space;
  const auto dec = diagonalize(Observable{space, w.coords});
  if (max_terms <= 0) max_terms = space.frame_rank();
  if (max_terms < space.frame_rank())
    throw DomainError("max_terms must be at least the frame rank");
  if (budget < 0) budget = 0;

  DecompositionSearch out;
  VectorXd weights = dec.flat_weights().cwiseMax(0.0).cwiseMin(1.0);
  weights /= weights.sum();
  out.parts = dec.flat_frame();
  out.value = out.spectral = renyi(weights, alpha);
  out.residual =
      (reconstruct_mix(weights, out.parts, space.ambient_dim()) - w.coords).norm();
  out.weights = std::move(weights);

  Rng rng = Rng::derive(seed, 0xdec0u);
  switch (space.kind()) {
    case Kind::Classical:
      return out;  // simplex decompositions are unique up to zero padding
    case Kind::QuantumC:
      purification_search<MatrixXcd>(
          space, w, alpha, budget, max_terms,
          [&rng](int r, int c) { return rng.gaussian_complex_matrix(r, c); }, out);
      return out;
    case Kind::QuantumR:
      purification_search<MatrixXd>(
          space, w, alpha, budget, max_terms,
          [&rng](int r, int c) { return rng.gaussian_matrix(r, c); }, out);
      return out;
    case Kind::QuantumH:
    case Kind::Bloch:
      repair_search(space, w, alpha, budget, max_terms, rng, out);
      return out;
    case Kind::Gbit:
      break;
  }
  throw PostulateError();
}

double relative_entropy(const State& w, const State& phi) {
  if (w.space != phi.space) throw DimensionError("states live on different spaces");
  if (!w.normalized() || !phi.normalized())
    throw DomainError("states must be normalized");
  const StateSpace& space = w.space;
  const auto dec = diagonalize(Observable{space, phi.coords});

  VectorXd log_phi = VectorXd::Zero(space.ambient_dim());
  for (int j = 0; j < dec.faces(); ++j) {
    const double q = dec.eigenvalues[static_cast<std::size_t>(j)];
    const VectorXd& unit = dec.projective_units[static_cast<std::size_t>(j)];
    if (q > tol::support)
      log_phi += std::log(q) * unit;
    else if (space.inner(unit, w.coords) > 1e-9)
      return kInf;  // w has weight outside the support of phi
  }
  return -spectral_entropy(w, 1.0) - space.inner(w.coords, log_phi);
}

double klein_check(const State& w, const State& phi) {
  const double value = relative_entropy(w, phi);
  if (value < -1e-9)
    throw InvariantViolation("relative entropy fell below zero: " +
                             std::to_string(value));
  return value;
}

bool majorizes(const VectorXd& p, const VectorXd& q, double tolerance) {
  const std::size_t n = static_cast<std::size_t>(std::max(p.size(), q.size()));
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (int i = 0; i < p.size(); ++i) a[static_cast<std::size_t>(i)] = p(i);
  for (int i = 0; i < q.size(); ++i) b[static_cast<std::size_t>(i)] = q(i);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double sa = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sa += a[k];
    sb += b[k];
    if (sa < sb - tolerance) return false;
  }
  return std::abs(sa - sb) <= tolerance;
}

EntropyReport entropy_report(const State& w, double alpha, int budget,
                             std::uint64_t seed) {
  EntropyReport report;
  report.alpha = alpha;
  report.spectral = spectral_entropy(w, alpha);
  report.measurement = measurement_entropy(w, alpha, std::max(1, budget),
                                           Rng::derive(seed, 0x4d45u).next_u64());
  report.decomposition = decomposition_entropy(
      w, alpha, budget, 0, Rng::derive(seed, 0x4445u).next_u64());
  report.measurement_best = report.measurement.value;
  report.decomposition_best = report.decomposition.value;
  report.gap_measurement = report.measurement_best - report.spectral;
  report.gap_decomposition = report.spectral - report.decomposition_best;
  return report;
}

}  // namespace gptlab
