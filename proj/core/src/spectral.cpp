#include "gptlab/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "gptlab/rng.hpp"

namespace gptlab {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

bool lex_descending(const VectorXd& a, const VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) > b(i);
  }
  return false;
}

void sort_face(std::vector<State>& block) {
  std::sort(block.begin(), block.end(), [](const State& a, const State& b) {
    return lex_descending(a.coords, b.coords);
  });
}

// Clusters a descending eigenvalue list: a new face starts where the gap
// to the previous value exceeds the merge tolerance. Returns the first
// index of each cluster plus a terminating count.
std::vector<int> cluster_bounds(const std::vector<double>& descending) {
  std::vector<int> bounds{0};
  for (std::size_t i = 1; i < descending.size(); ++i) {
    if (descending[i - 1] - descending[i] > tol::eig)
      bounds.push_back(static_cast<int>(i));
  }
  bounds.push_back(static_cast<int>(descending.size()));
  return bounds;
}

SpectralDecomposition diagonalize_classical(const Observable& x) {
  const StateSpace& space = x.space;
  const int n = space.ambient_dim();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return x.coords(a) > x.coords(b); });
  std::vector<double> sorted;
  sorted.reserve(order.size());
  for (int idx : order) sorted.push_back(x.coords(idx));

  SpectralDecomposition dec{space, {}, {}, {}, {}};
  const auto bounds = cluster_bounds(sorted);
  for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
    const int lo = bounds[c], hi = bounds[c + 1];
    double mean = 0.0;
    VectorXd unit = VectorXd::Zero(n);
    std::vector<State> frame;
    for (int i = lo; i < hi; ++i) {
      const int idx = order[static_cast<std::size_t>(i)];
      mean += sorted[static_cast<std::size_t>(i)];
      VectorXd e = VectorXd::Zero(n);
      e(idx) = 1.0;
      unit(idx) = 1.0;
      frame.push_back(State{space, std::move(e)});
    }
    mean /= (hi - lo);
    sort_face(frame);
    dec.eigenvalues.push_back(mean);
    dec.multiplicities.push_back(hi - lo);
    dec.projective_units.push_back(std::move(unit));
    dec.eigenframes.push_back(std::move(frame));
  }
  return dec;
}

SpectralDecomposition diagonalize_bloch(const Observable& x) {
  const StateSpace& space = x.space;
  const int d = space.param();
  const double t = x.coords(0);
  const VectorXd v = x.coords.tail(d);
  const double r = v.norm();

  SpectralDecomposition dec{space, {}, {}, {}, {}};
  if (r <= tol::eig) {
    // Multiple of the unit: one fully degenerate face. Any antipodal pair
    // generates it; the first axis is the canonical choice.
    VectorXd plus = VectorXd::Zero(d + 1), minus = VectorXd::Zero(d + 1);
    plus(0) = minus(0) = 1.0;
    plus(1) = 1.0;
    minus(1) = -1.0;
    dec.eigenvalues.push_back(t / 2.0);
    dec.multiplicities.push_back(2);
    dec.projective_units.push_back(space.unit_effect());
    dec.eigenframes.push_back({State{space, plus}, State{space, minus}});
    return dec;
  }
  const VectorXd dir = v / r;
  VectorXd plus(d + 1), minus(d + 1);
  plus(0) = minus(0) = 1.0;
  plus.tail(d) = dir;
  minus.tail(d) = -dir;
  dec.eigenvalues = {(t + r) / 2.0, (t - r) / 2.0};
  dec.multiplicities = {1, 1};
  dec.projective_units = {plus, minus};
  dec.eigenframes = {{State{space, plus}}, {State{space, minus}}};
  return dec;
}

// Shared tail for the matrix kinds: cluster a solved eigensystem and build
// faces. `columns` maps a cluster's eigenvector columns to frame states.
template <typename Solver, typename MakeFrameStates>
SpectralDecomposition cluster_matrix_solution(const StateSpace& space,
                                              const Solver& es,
                                              MakeFrameStates make_frame_states) {
  const int m = static_cast<int>(es.eigenvalues().size());
  std::vector<double> descending;
  descending.reserve(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) descending.push_back(es.eigenvalues()(i));

  SpectralDecomposition dec{space, {}, {}, {}, {}};
  const auto bounds = cluster_bounds(descending);
  for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
    const int lo = bounds[c], hi = bounds[c + 1];
    double mean = 0.0;
    for (int i = lo; i < hi; ++i) mean += descending[static_cast<std::size_t>(i)];
    mean /= (hi - lo);

    std::vector<int> cols;  // columns in the solver's (ascending) indexing
    for (int i = lo; i < hi; ++i) cols.push_back(m - 1 - i);
    std::vector<State> frame = make_frame_states(cols);

    VectorXd unit = VectorXd::Zero(space.ambient_dim());
    for (const State& w : frame) unit += w.coords;
    sort_face(frame);
    dec.eigenvalues.push_back(mean);
    dec.multiplicities.push_back(static_cast<int>(frame.size()));
    dec.projective_units.push_back(std::move(unit));
    dec.eigenframes.push_back(std::move(frame));
  }
  return dec;
}

SpectralDecomposition diagonalize_quantum_c(const Observable& x) {
  const StateSpace& space = x.space;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(space.to_matrix(x.coords));
  return cluster_matrix_solution(space, es, [&](const std::vector<int>& cols) {
    std::vector<State> frame;
    for (int c : cols) {
      const VectorXcd v = es.eigenvectors().col(c);
      frame.push_back(State{space, space.from_matrix(v * v.adjoint())});
    }
    return frame;
  });
}

SpectralDecomposition diagonalize_quantum_r(const Observable& x) {
  const StateSpace& space = x.space;
  // Solve in real arithmetic so degenerate eigenspaces stay real.
  const MatrixXd m = space.to_matrix(x.coords).real();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  return cluster_matrix_solution(space, es, [&](const std::vector<int>& cols) {
    std::vector<State> frame;
    for (int c : cols) {
      const VectorXd v = es.eigenvectors().col(c);
      frame.push_back(State{
          space, space.from_matrix((v * v.transpose()).cast<std::complex<double>>())});
    }
    return frame;
  });
}

SpectralDecomposition diagonalize_quantum_h(const Observable& x) {
  const StateSpace& space = x.space;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(space.to_matrix(x.coords));
  auto dec = cluster_matrix_solution(space, es, [&](const std::vector<int>& cols) {
    // Eigenvalues of an embedded observable come in degenerate pairs and
    // each eigenspace is closed under the antiunitary partner map. Deflate
    // the cluster into partner pairs; each pair is one pure state.
    std::vector<VectorXcd> chosen;
    std::vector<State> frame;
    for (int c : cols) {
      VectorXcd v = es.eigenvectors().col(c);
      for (int pass = 0; pass < 2; ++pass)
        for (const VectorXcd& w : chosen) v -= w.dot(v) * w;
      const double nv = v.norm();
      if (nv < 1e-6) continue;  // already covered by a previous partner
      v /= nv;
      VectorXcd p = symplectic_partner(v);
      for (const VectorXcd& w : chosen) p -= w.dot(p) * w;
      p -= v.dot(p) * v;
      p.normalize();
      chosen.push_back(v);
      chosen.push_back(p);
      frame.push_back(State{space, space.from_matrix(v * v.adjoint() + p * p.adjoint())});
    }
    if (2 * frame.size() != cols.size())
      throw InvariantViolation("embedded eigenspace has odd pair structure");
    return frame;
  });
  return dec;
}

}  // namespace

MatrixXd SpectralDecomposition::projector(int j) const {
  return face_projector(space, eigenframes.at(static_cast<std::size_t>(j)));
}

VectorXd SpectralDecomposition::reconstruct() const {
  VectorXd x = VectorXd::Zero(space.ambient_dim());
  for (int j = 0; j < faces(); ++j)
    x += eigenvalues[static_cast<std::size_t>(j)] *
         projective_units[static_cast<std::size_t>(j)];
  return x;
}

std::vector<State> SpectralDecomposition::flat_frame() const {
  std::vector<State> all;
  for (const auto& block : eigenframes)
    for (const State& w : block) all.push_back(w);
  return all;
}

VectorXd SpectralDecomposition::flat_weights() const {
  std::vector<double> w;
  for (int j = 0; j < faces(); ++j) {
    for (std::size_t i = 0; i < eigenframes[static_cast<std::size_t>(j)].size(); ++i)
      w.push_back(eigenvalues[static_cast<std::size_t>(j)]);
  }
  return Eigen::Map<VectorXd>(w.data(), static_cast<int>(w.size()));
}

SpectralDecomposition diagonalize(const Observable& x) {
  if (!x.space.satisfies_postulates()) throw PostulateError();
  if (x.coords.size() != x.space.ambient_dim())
    throw DimensionError("observable coordinates do not match " + x.space.name());
  if (x.coords.hasNaN()) throw DomainError("observable coordinates contain NaN");
  switch (x.space.kind()) {
    case Kind::Classical: return diagonalize_classical(x);
    case Kind::QuantumC: return diagonalize_quantum_c(x);
    case Kind::QuantumR: return diagonalize_quantum_r(x);
    case Kind::QuantumH: return diagonalize_quantum_h(x);
    case Kind::Bloch: return diagonalize_bloch(x);
    case Kind::Gbit: break;
  }
  throw PostulateError();
}

StateDecomposition spectral_decompose_state(const State& w) {
  if (!w.normalized()) throw DomainError("state is not normalized");
  const auto dec = diagonalize(Observable{w.space, w.coords});
  VectorXd weights = dec.flat_weights();
  for (int i = 0; i < weights.size(); ++i)
    weights(i) = std::min(1.0, std::max(0.0, weights(i)));
  const double total = weights.sum();
  if (total <= 0.0) throw DomainError("state has no positive spectral weight");
  weights /= total;
  Frame frame = make_frame(w.space, dec.flat_frame());
  return StateDecomposition{std::move(weights), std::move(frame)};
}

Observable spectral_calculus(const SpectralDecomposition& dec,
                             const std::function<double(double)>& f) {
  VectorXd y = VectorXd::Zero(dec.space.ambient_dim());
  for (int j = 0; j < dec.faces(); ++j) {
    const double x_j = dec.eigenvalues[static_cast<std::size_t>(j)];
    const double fx = f(x_j);
    if (!std::isfinite(fx))
      throw DomainError("function is not finite at eigenvalue " + std::to_string(x_j));
    y += fx * dec.projective_units[static_cast<std::size_t>(j)];
  }
  return Observable{dec.space, std::move(y)};
}

Observable spectral_calculus(const Observable& x,
                             const std::function<double(double)>& f) {
  return spectral_calculus(diagonalize(x), f);
}

MatrixXd face_projector(const StateSpace& space, const std::vector<State>& block) {
  if (block.empty()) throw DomainError("face needs at least one generator");
  for (const State& w : block) {
    if (w.space != space) throw DimensionError("face block mixes spaces");
  }
  const int dim = space.ambient_dim();
  switch (space.kind()) {
    case Kind::Classical: {
      MatrixXd p = MatrixXd::Zero(dim, dim);
      for (const State& w : block) {
        for (int i = 0; i < dim; ++i)
          if (w.coords(i) > 0.5) p(i, i) = 1.0;
      }
      return p;
    }
    case Kind::QuantumC:
    case Kind::QuantumR:
    case Kind::QuantumH: {
      MatrixXcd pi = MatrixXcd::Zero(space.matrix_dim(), space.matrix_dim());
      for (const State& w : block) pi += space.to_matrix(w.coords);
      MatrixXd p(dim, dim);
      for (int k = 0; k < dim; ++k)
        p.col(k) = space.from_matrix(pi * space.basis_element(k) * pi);
      return p;
    }
    case Kind::Bloch: {
      if (block.size() >= 2) return MatrixXd::Identity(dim, dim);
      const VectorXd& w = block.front().coords;
      return w * (space.gram() * w).transpose();
    }
    case Kind::Gbit:
      break;
  }
  throw PostulateError();
}

Measurement ProjectiveInstrument::induced_measurement() const {
  std::vector<Effect> effects;
  effects.reserve(units.size());
  for (const VectorXd& u : units) effects.push_back(Effect{space, u});
  return Measurement(space, std::move(effects));
}

VectorXd ProjectiveInstrument::outcome_distribution(const State& w) const {
  if (w.space != space) throw DimensionError("state is from another space");
  VectorXd p(size());
  for (int i = 0; i < size(); ++i)
    p(i) = std::max(0.0, space.inner(units[static_cast<std::size_t>(i)], w.coords));
  return p;
}

VectorXd ProjectiveInstrument::project(const State& w, int i) const {
  if (w.space != space) throw DimensionError("state is from another space");
  return projectors.at(static_cast<std::size_t>(i)) * w.coords;
}

State ProjectiveInstrument::post_state(const State& w, int i) const {
  VectorXd projected = project(w, i);
  const double p = space.norm_of(projected);
  if (p <= tol::support)
    throw DomainError("outcome has zero probability; no post state");
  return make_state(space, projected / p);
}

State ProjectiveInstrument::dephase(const State& w) const {
  VectorXd total = VectorXd::Zero(space.ambient_dim());
  for (int i = 0; i < size(); ++i) total += project(w, i);
  return make_state(space, std::move(total));
}

ProjectiveInstrument make_instrument(const StateSpace& space,
                                     const std::vector<std::vector<State>>& faces) {
  if (!space.satisfies_postulates()) throw PostulateError();
  if (faces.empty()) throw DomainError("instrument needs at least one face");
  std::vector<State> all;
  for (const auto& block : faces) {
    if (block.empty()) throw DomainError("instrument face has no generators");
    for (const State& w : block) {
      if (w.space != space) throw DimensionError("face block mixes spaces");
      if (!w.normalized() || !is_pure(w))
        throw DomainError("face generators must be normalized pure states");
      all.push_back(w);
    }
  }
  if (static_cast<int>(all.size()) != space.frame_rank())
    throw DomainError("face ranks must sum to frame_rank");
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (std::abs(inner(all[i], all[j])) > tol::frame)
        throw DomainError("face generators must be mutually orthogonal");

  ProjectiveInstrument inst{space, {}, {}, {}};
  VectorXd total = VectorXd::Zero(space.ambient_dim());
  for (const auto& block : faces) {
    inst.projectors.push_back(face_projector(space, block));
    VectorXd unit = VectorXd::Zero(space.ambient_dim());
    for (const State& w : block) unit += w.coords;
    total += unit;
    inst.units.push_back(std::move(unit));
    inst.ranks.push_back(static_cast<int>(block.size()));
  }
  if ((total - space.unit_effect()).cwiseAbs().maxCoeff() > tol::frame)
    throw InvariantViolation("face units do not resolve the unit effect");
  return inst;
}

ProjectiveInstrument instrument_from(const SpectralDecomposition& dec) {
  return make_instrument(dec.space, dec.eigenframes);
}

ProjectiveInstrument random_instrument(const StateSpace& space, std::uint64_t seed,
                                       int min_blocks) {
  Rng rng = Rng::derive(seed, 0x1457u);
  const int rank = space.frame_rank();
  min_blocks = std::max(1, std::min(min_blocks, rank));
  const auto states = random_frame_states(space, rng.next_u64(), -1);
  const int blocks = min_blocks + rng.uniform_int(rank - min_blocks + 1);

  // A random composition of `rank` into `blocks` parts: choose distinct cut
  // positions among the rank-1 interior gaps.
  std::vector<int> gaps(static_cast<std::size_t>(rank - 1));
  for (int i = 0; i < rank - 1; ++i) gaps[static_cast<std::size_t>(i)] = i + 1;
  rng.shuffle(gaps);
  std::vector<int> cuts(gaps.begin(), gaps.begin() + (blocks - 1));
  cuts.push_back(0);
  cuts.push_back(rank);
  std::sort(cuts.begin(), cuts.end());

  std::vector<std::vector<State>> faces;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    std::vector<State> block;
    for (int i = cuts[c]; i < cuts[c + 1]; ++i)
      block.push_back(states[static_cast<std::size_t>(i)]);
    faces.push_back(std::move(block));
  }
  return make_instrument(space, faces);
}

}  // namespace gptlab
