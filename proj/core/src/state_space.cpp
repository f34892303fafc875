#include "gptlab/state_space.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <utility>

#include "gptlab/rng.hpp"

namespace gptlab {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Classical: return "classical";
    case Kind::QuantumC: return "quantum-c";
    case Kind::QuantumR: return "quantum-r";
    case Kind::QuantumH: return "quantum-h";
    case Kind::Bloch: return "bloch";
    case Kind::Gbit: return "gbit";
  }
  throw DomainError("unknown kind");
}

struct BasisEntry {
  int row, col;
  std::complex<double> value;
};

struct StateSpace::Impl {
  Kind kind;
  int param = 0;
  int ambient_dim = 0;
  int frame_rank = 0;
  bool postulates = true;

  MatrixXd gram;
  MatrixXd gram_sqrt;
  MatrixXd gram_sqrt_inv;
  VectorXd unit;

  // Matrix view (matrix kinds only). Every basis element is sparse (at
  // most four entries), so coordinate conversions walk the entry lists.
  int mat_dim = 0;
  double trace_scale = 1.0;
  std::vector<MatrixXcd> basis;
  std::vector<std::vector<BasisEntry>> basis_entries;

  void finish_gram() {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(gram);
    gram_sqrt = es.operatorSqrt();
    gram_sqrt_inv = es.operatorInverseSqrt();
  }

  void index_basis() {
    basis_entries.clear();
    basis_entries.reserve(basis.size());
    for (const MatrixXcd& b : basis) {
      std::vector<BasisEntry> entries;
      for (int c = 0; c < b.cols(); ++c)
        for (int r = 0; r < b.rows(); ++r)
          if (b(r, c) != std::complex<double>(0.0, 0.0))
            entries.push_back(BasisEntry{r, c, b(r, c)});
      basis_entries.push_back(std::move(entries));
    }
  }
};

namespace {

// Hermitian basis of the complex N x N matrices, orthonormal under tr(XY):
// diagonal units first, then for each pair i<j the symmetric and the
// antisymmetric-imaginary combination.
std::vector<MatrixXcd> hermitian_basis(int n) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::complex<double> im(0.0, 1.0);
  std::vector<MatrixXcd> basis;
  basis.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    MatrixXcd b = MatrixXcd::Zero(n, n);
    b(i, i) = 1.0;
    basis.push_back(b);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      MatrixXcd s = MatrixXcd::Zero(n, n);
      s(i, j) = inv_sqrt2;
      s(j, i) = inv_sqrt2;
      basis.push_back(s);
      MatrixXcd a = MatrixXcd::Zero(n, n);
      a(i, j) = im * inv_sqrt2;
      a(j, i) = -im * inv_sqrt2;
      basis.push_back(a);
    }
  }
  return basis;
}

// Real symmetric basis, orthonormal under tr(XY).
std::vector<MatrixXcd> symmetric_basis(int n) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<MatrixXcd> basis;
  for (int i = 0; i < n; ++i) {
    MatrixXcd b = MatrixXcd::Zero(n, n);
    b(i, i) = 1.0;
    basis.push_back(b);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      MatrixXcd s = MatrixXcd::Zero(n, n);
      s(i, j) = inv_sqrt2;
      s(j, i) = inv_sqrt2;
      basis.push_back(s);
    }
  }
  return basis;
}

// Basis of the quaternionic-Hermitian N x N matrices inside their 2Nx2N
// complex embedding: block form [[A, B], [B*, conj(A)]] with A Hermitian
// and B antisymmetric. Orthonormal under tr(XY)/2.
std::vector<MatrixXcd> quaternionic_basis(int n) {
  const int m = 2 * n;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::complex<double> im(0.0, 1.0);
  std::vector<MatrixXcd> basis;
  for (const MatrixXcd& h : hermitian_basis(n)) {
    MatrixXcd z = MatrixXcd::Zero(m, m);
    z.topLeftCorner(n, n) = h;
    z.bottomRightCorner(n, n) = h.conjugate();
    basis.push_back(z);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int unit = 0; unit < 2; ++unit) {
        MatrixXcd b = MatrixXcd::Zero(n, n);
        const std::complex<double> c = (unit == 0) ? std::complex<double>(inv_sqrt2, 0.0)
                                                   : im * inv_sqrt2;
        b(i, j) = c;
        b(j, i) = -c;
        MatrixXcd z = MatrixXcd::Zero(m, m);
        z.topRightCorner(n, n) = b;
        z.bottomLeftCorner(n, n) = b.adjoint();
        basis.push_back(z);
      }
    }
  }
  return basis;
}

MatrixXcd ginibre(Rng& rng, int n) { return rng.gaussian_complex_matrix(n, n); }

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
// convention fixed so the distribution is exactly invariant.
MatrixXcd haar_unitary(Rng& rng, int n) {
  const MatrixXcd g = ginibre(rng, n);
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ();
  const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    std::complex<double> d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? (d / a) : 1.0;
  }
  return q;
}

MatrixXd haar_orthogonal(Rng& rng, int n) {
  const MatrixXd g = rng.gaussian_matrix(n, n);
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ();
  const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// Orthonormal set {v_1, partner(v_1), ..., v_k, partner(v_k)} spanning k
// quaternionic lines of C^{2n}. Gram-Schmidt against each chosen vector and
// its partner; the partner of the result is then orthogonal automatically.
std::vector<VectorXcd> symplectic_line_vectors(Rng& rng, int n, int k) {
  std::vector<VectorXcd> chosen;  // interleaved v, partner(v)
  chosen.reserve(2 * static_cast<std::size_t>(k));
  const int dim = 2 * n;
  while (static_cast<int>(chosen.size()) < 2 * k) {
    MatrixXcd g = rng.gaussian_complex_matrix(dim, 1);
    VectorXcd v = g.col(0);
    for (int pass = 0; pass < 2; ++pass) {
      for (const VectorXcd& w : chosen) v -= w.dot(v) * w;
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;  // essentially never; resample
    v /= norm;
    chosen.push_back(v);
    chosen.push_back(symplectic_partner(v));
  }
  return chosen;
}

const char* kParseHint =
    "expected one of classical:N, quantum-c:N, quantum-r:N, quantum-h:N, "
    "bloch:d, gbit";

}  // namespace

StateSpace::StateSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

StateSpace StateSpace::classical(int n) {
  if (n <= 0) throw ConfigError("classical: N must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Classical;
  impl->param = n;
  impl->ambient_dim = n;
  impl->frame_rank = n;
  impl->gram = MatrixXd::Identity(n, n);
  impl->unit = VectorXd::Ones(n);
  impl->finish_gram();
  return StateSpace(impl);
}

StateSpace StateSpace::quantum_c(int n) {
  if (n <= 0) throw ConfigError("quantum-c: N must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::QuantumC;
  impl->param = n;
  impl->ambient_dim = n * n;
  impl->frame_rank = n;
  impl->mat_dim = n;
  impl->trace_scale = 1.0;
  impl->basis = hermitian_basis(n);
  impl->index_basis();
  impl->gram = MatrixXd::Identity(impl->ambient_dim, impl->ambient_dim);
  impl->unit = VectorXd::Zero(impl->ambient_dim);
  impl->unit.head(n).setOnes();  // coordinates of the identity matrix
  impl->finish_gram();
  return StateSpace(impl);
}

StateSpace StateSpace::quantum_r(int n) {
  if (n <= 0) throw ConfigError("quantum-r: N must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::QuantumR;
  impl->param = n;
  impl->ambient_dim = n * (n + 1) / 2;
  impl->frame_rank = n;
  impl->mat_dim = n;
  impl->trace_scale = 1.0;
  impl->basis = symmetric_basis(n);
  impl->index_basis();
  impl->gram = MatrixXd::Identity(impl->ambient_dim, impl->ambient_dim);
  impl->unit = VectorXd::Zero(impl->ambient_dim);
  impl->unit.head(n).setOnes();
  impl->finish_gram();
  return StateSpace(impl);
}

StateSpace StateSpace::quantum_h(int n) {
  if (n <= 0) throw ConfigError("quantum-h: N must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::QuantumH;
  impl->param = n;
  impl->ambient_dim = n * (2 * n - 1);
  impl->frame_rank = n;
  impl->mat_dim = 2 * n;
  impl->trace_scale = 0.5;
  impl->basis = quaternionic_basis(n);
  impl->index_basis();
  impl->gram = MatrixXd::Identity(impl->ambient_dim, impl->ambient_dim);
  impl->unit = VectorXd::Zero(impl->ambient_dim);
  impl->unit.head(n).setOnes();  // diagonal embedding blocks carry weight 1
  impl->finish_gram();
  return StateSpace(impl);
}

StateSpace StateSpace::bloch(int d) {
  if (d <= 1) throw ConfigError("bloch: d must be at least 2");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Bloch;
  impl->param = d;
  impl->ambient_dim = d + 1;
  impl->frame_rank = 2;
  impl->gram = 0.5 * MatrixXd::Identity(d + 1, d + 1);
  impl->unit = VectorXd::Zero(d + 1);
  impl->unit(0) = 2.0;
  impl->finish_gram();
  return StateSpace(impl);
}

StateSpace StateSpace::gbit() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Gbit;
  impl->param = 0;
  impl->ambient_dim = 3;
  impl->frame_rank = 2;
  impl->postulates = false;
  impl->gram = MatrixXd::Identity(3, 3);
  impl->unit = VectorXd::Zero(3);
  impl->unit(0) = 1.0;
  impl->finish_gram();
  return StateSpace(impl);
}

StateSpace StateSpace::make(Kind kind, int param) {
  switch (kind) {
    case Kind::Classical: return classical(param);
    case Kind::QuantumC: return quantum_c(param);
    case Kind::QuantumR: return quantum_r(param);
    case Kind::QuantumH: return quantum_h(param);
    case Kind::Bloch: return bloch(param);
    case Kind::Gbit: return gbit();
  }
  throw ConfigError("unknown kind");
}

StateSpace StateSpace::parse(const std::string& name) {
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  if (head == "gbit") {
    if (colon != std::string::npos) throw ConfigError("gbit takes no size parameter");
    return gbit();
  }
  if (colon == std::string::npos)
    throw ConfigError("missing size parameter in space '" + name + "'; " + kParseHint);
  int param = 0;
  try {
    std::size_t used = 0;
    param = std::stoi(name.substr(colon + 1), &used);
    if (colon + 1 + used != name.size()) throw ConfigError("");
  } catch (const std::exception&) {
    throw ConfigError("bad size parameter in space '" + name + "'; " + kParseHint);
  }
  if (head == "classical") return classical(param);
  if (head == "quantum-c") return quantum_c(param);
  if (head == "quantum-r") return quantum_r(param);
  if (head == "quantum-h") return quantum_h(param);
  if (head == "bloch") return bloch(param);
  throw ConfigError("unknown space kind '" + head + "'; " + kParseHint);
}

Kind StateSpace::kind() const { return impl_->kind; }
int StateSpace::param() const { return impl_->param; }

std::string StateSpace::name() const {
  if (impl_->kind == Kind::Gbit) return "gbit";
  return kind_name(impl_->kind) + ":" + std::to_string(impl_->param);
}

int StateSpace::ambient_dim() const { return impl_->ambient_dim; }
int StateSpace::frame_rank() const { return impl_->frame_rank; }
bool StateSpace::satisfies_postulates() const { return impl_->postulates; }
const MatrixXd& StateSpace::gram() const { return impl_->gram; }
const VectorXd& StateSpace::unit_effect() const { return impl_->unit; }

double StateSpace::inner(const VectorXd& x, const VectorXd& y) const {
  if (x.size() != impl_->ambient_dim || y.size() != impl_->ambient_dim)
    throw DimensionError("inner: coordinate length does not match " + name());
  return x.dot(impl_->gram * y);
}

double StateSpace::inner_norm(const VectorXd& x) const {
  return std::sqrt(std::max(0.0, inner(x, x)));
}

double StateSpace::norm_of(const VectorXd& x) const { return inner(impl_->unit, x); }

bool StateSpace::in_cone(const VectorXd& x, double tolerance) const {
  if (x.size() != impl_->ambient_dim)
    throw DimensionError("in_cone: coordinate length does not match " + name());
  switch (impl_->kind) {
    case Kind::Classical:
      return x.minCoeff() >= -tolerance;
    case Kind::QuantumC:
    case Kind::QuantumR:
    case Kind::QuantumH: {
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(to_matrix(x), Eigen::EigenvaluesOnly);
      return es.eigenvalues().minCoeff() >= -tolerance;
    }
    case Kind::Bloch:
      return x(0) >= -tolerance && x.tail(impl_->param).norm() <= x(0) + tolerance;
    case Kind::Gbit:
      return x(0) >= -tolerance && x(1) >= -tolerance && x(2) >= -tolerance &&
             x(1) <= x(0) + tolerance && x(2) <= x(0) + tolerance;
  }
  throw DomainError("unknown kind");
}

bool StateSpace::has_matrix_view() const { return impl_->mat_dim > 0; }

int StateSpace::matrix_dim() const {
  if (!has_matrix_view()) throw DomainError(name() + " has no matrix view");
  return impl_->mat_dim;
}

double StateSpace::trace_scale() const {
  if (!has_matrix_view()) throw DomainError(name() + " has no matrix view");
  return impl_->trace_scale;
}

const MatrixXcd& StateSpace::basis_element(int k) const {
  if (!has_matrix_view()) throw DomainError(name() + " has no matrix view");
  return impl_->basis.at(static_cast<std::size_t>(k));
}

MatrixXcd StateSpace::to_matrix(const VectorXd& coords) const {
  if (!has_matrix_view()) throw DomainError(name() + " has no matrix view");
  if (coords.size() != impl_->ambient_dim)
    throw DimensionError("to_matrix: coordinate length does not match " + name());
  MatrixXcd m = MatrixXcd::Zero(impl_->mat_dim, impl_->mat_dim);
  for (int k = 0; k < impl_->ambient_dim; ++k) {
    for (const BasisEntry& e : impl_->basis_entries[static_cast<std::size_t>(k)])
      m(e.row, e.col) += coords(k) * e.value;
  }
  return m;
}

VectorXd StateSpace::from_matrix(const MatrixXcd& m) const {
  if (!has_matrix_view()) throw DomainError(name() + " has no matrix view");
  if (m.rows() != impl_->mat_dim || m.cols() != impl_->mat_dim)
    throw DimensionError("from_matrix: matrix size does not match " + name());
  VectorXd coords(impl_->ambient_dim);
  for (int k = 0; k < impl_->ambient_dim; ++k) {
    std::complex<double> tr(0.0, 0.0);  // tr(B_k m) over the entries of B_k
    for (const BasisEntry& e : impl_->basis_entries[static_cast<std::size_t>(k)])
      tr += e.value * m(e.col, e.row);
    coords(k) = impl_->trace_scale * tr.real();
  }
  return coords;
}

double StateSpace::operator_norm(const MatrixXd& map) const {
  if (map.rows() != impl_->ambient_dim || map.cols() != impl_->ambient_dim)
    throw DimensionError("operator_norm: map size does not match " + name());
  const MatrixXd m = impl_->gram_sqrt * map * impl_->gram_sqrt_inv;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues()(0);
}

bool StateSpace::operator==(const StateSpace& other) const {
  return impl_->kind == other.impl_->kind && impl_->param == other.impl_->param;
}

bool State::normalized(double tolerance) const {
  return std::abs(norm() - 1.0) <= tolerance;
}

double Effect::operator()(const State& w) const {
  if (space != w.space) throw DimensionError("effect and state live on different spaces");
  return space.inner(coords, w.coords);
}

Measurement::Measurement(StateSpace space, std::vector<Effect> effects)
    : space_(std::move(space)), effects_(std::move(effects)) {
  if (effects_.empty()) throw DomainError("measurement needs at least one effect");
  VectorXd total = VectorXd::Zero(space_.ambient_dim());
  for (const Effect& e : effects_) {
    if (e.space != space_) throw DimensionError("measurement mixes spaces");
    make_effect(space_, e.coords);  // validates the effect cone conditions
    total += e.coords;
  }
  if ((total - space_.unit_effect()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvariantViolation("measurement effects do not sum to the unit effect");
}

VectorXd Measurement::outcome_distribution(const State& w) const {
  if (w.space != space_) throw DimensionError("state is from another space");
  VectorXd p(size());
  for (int i = 0; i < size(); ++i) {
    p(i) = std::max(0.0, effects_[static_cast<std::size_t>(i)](w));
  }
  return p;
}

State make_state(const StateSpace& space, VectorXd coords) {
  if (coords.size() != space.ambient_dim())
    throw DimensionError("state coordinates do not match " + space.name());
  if (coords.hasNaN()) throw DomainError("state coordinates contain NaN");
  if (!space.in_cone(coords)) throw DomainError("coordinates outside the positive cone");
  const double n = space.norm_of(coords);
  if (n < -tol::cone || n > 1.0 + tol::cone)
    throw DomainError("state norm outside [0, 1]");
  return State{space, std::move(coords)};
}

Effect make_effect(const StateSpace& space, VectorXd coords) {
  if (coords.size() != space.ambient_dim())
    throw DimensionError("effect coordinates do not match " + space.name());
  if (coords.hasNaN()) throw DomainError("effect coordinates contain NaN");
  if (space.satisfies_postulates()) {
    // Self-duality: effects are cone vectors dominated by the unit.
    if (!space.in_cone(coords)) throw DomainError("effect outside the positive cone");
    if (!space.in_cone(space.unit_effect() - coords))
      throw DomainError("effect exceeds the unit effect");
  } else {
    // Square model: validate on the four extreme points directly.
    const double corners[4][3] = {
        {1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}};
    for (const auto& c : corners) {
      const double v = coords(0) * c[0] + coords(1) * c[1] + coords(2) * c[2];
      if (v < -tol::cone || v > 1.0 + tol::cone)
        throw DomainError("effect takes values outside [0, 1] on the square");
    }
  }
  return Effect{space, std::move(coords)};
}

double inner(const State& a, const State& b) {
  if (a.space != b.space) throw DimensionError("states live on different spaces");
  return a.space.inner(a.coords, b.coords);
}

bool is_pure(const State& w, double tolerance) {
  if (!w.normalized())
    throw DomainError("is_pure expects a normalized state");
  if (w.space.satisfies_postulates()) {
    return inner(w, w) >= 1.0 - tolerance;
  }
  // Square model: the four corners are the only pure states.
  const double corners[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (const auto& c : corners) {
    if (std::abs(w.coords(1) - c[0]) <= tolerance &&
        std::abs(w.coords(2) - c[1]) <= tolerance)
      return true;
  }
  return false;
}

State maximally_mixed(const StateSpace& space) {
  switch (space.kind()) {
    case Kind::Classical:
      return State{space, VectorXd::Constant(space.param(), 1.0 / space.param())};
    case Kind::QuantumC:
    case Kind::QuantumR:
    case Kind::QuantumH: {
      VectorXd coords = space.unit_effect() / space.frame_rank();
      return State{space, std::move(coords)};
    }
    case Kind::Bloch: {
      VectorXd coords = VectorXd::Zero(space.ambient_dim());
      coords(0) = 1.0;
      return State{space, std::move(coords)};
    }
    case Kind::Gbit: {
      VectorXd coords(3);
      coords << 1.0, 0.5, 0.5;
      return State{space, std::move(coords)};
    }
  }
  throw DomainError("unknown kind");
}

std::vector<State> random_frame_states(const StateSpace& space, std::uint64_t seed,
                                       int count) {
  Rng rng(seed);
  const int rank = space.frame_rank();
  if (count < 0) count = rank;
  if (count < 1 || count > rank)
    throw DomainError("frame size must lie in [1, frame_rank]");
  std::vector<State> states;
  states.reserve(static_cast<std::size_t>(count));
  switch (space.kind()) {
    case Kind::Classical: {
      std::vector<int> idx(static_cast<std::size_t>(rank));
      for (int i = 0; i < rank; ++i) idx[static_cast<std::size_t>(i)] = i;
      rng.shuffle(idx);
      for (int i = 0; i < count; ++i) {
        VectorXd c = VectorXd::Zero(rank);
        c(idx[static_cast<std::size_t>(i)]) = 1.0;
        states.push_back(State{space, std::move(c)});
      }
      break;
    }
    case Kind::QuantumC: {
      const MatrixXcd u = haar_unitary(rng, space.param());
      for (int i = 0; i < count; ++i) {
        const VectorXcd v = u.col(i);
        states.push_back(State{space, space.from_matrix(v * v.adjoint())});
      }
      break;
    }
    case Kind::QuantumR: {
      const MatrixXd o = haar_orthogonal(rng, space.param());
      for (int i = 0; i < count; ++i) {
        const VectorXd v = o.col(i);
        states.push_back(State{space, space.from_matrix(
                                          (v * v.transpose()).cast<std::complex<double>>())});
      }
      break;
    }
    case Kind::QuantumH: {
      const auto vectors = symplectic_line_vectors(rng, space.param(), count);
      for (int i = 0; i < count; ++i) {
        const VectorXcd& v = vectors[static_cast<std::size_t>(2 * i)];
        const VectorXcd& w = vectors[static_cast<std::size_t>(2 * i + 1)];
        const MatrixXcd proj = v * v.adjoint() + w * w.adjoint();
        states.push_back(State{space, space.from_matrix(proj)});
      }
      break;
    }
    case Kind::Bloch: {
      VectorXd n = rng.gaussian_vector(space.param());
      while (n.norm() < 1e-12) n = rng.gaussian_vector(space.param());
      n.normalize();
      for (int i = 0; i < count; ++i) {
        VectorXd c(space.ambient_dim());
        c(0) = 1.0;
        c.tail(space.param()) = (i == 0 ? 1.0 : -1.0) * n;
        states.push_back(State{space, std::move(c)});
      }
      break;
    }
    case Kind::Gbit: {
      // A pair of corners on opposite sides of the square.
      const int axis = 1 + rng.uniform_int(2);
      const int other = (axis == 1) ? 2 : 1;
      const double a = rng.uniform_int(2);
      const double b = rng.uniform_int(2);
      VectorXd c0 = VectorXd::Zero(3), c1 = VectorXd::Zero(3);
      c0(0) = 1.0; c0(axis) = 0.0; c0(other) = a;
      c1(0) = 1.0; c1(axis) = 1.0; c1(other) = b;
      states.push_back(State{space, std::move(c0)});
      if (count > 1) states.push_back(State{space, std::move(c1)});
      break;
    }
  }
  return states;
}

State random_state(const StateSpace& space, std::uint64_t seed, Purity purity) {
  Rng rng = Rng::derive(seed, 0x5741u);
  if (purity == Purity::Pure) {
    switch (space.kind()) {
      case Kind::Gbit: {
        const double corners[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
        const auto& c = corners[rng.uniform_int(4)];
        VectorXd v(3);
        v << 1.0, c[0], c[1];
        return State{space, std::move(v)};
      }
      default: {
        auto states = random_frame_states(space, rng.next_u64(), 1);
        return states.front();
      }
    }
  }
  if (space.kind() == Kind::Gbit) {
    VectorXd v(3);
    v << 1.0, rng.uniform(), rng.uniform();
    return State{space, std::move(v)};
  }
  const auto frame = random_frame_states(space, rng.next_u64(), -1);
  const VectorXd w = rng.dirichlet(space.frame_rank());
  VectorXd coords = VectorXd::Zero(space.ambient_dim());
  for (int i = 0; i < space.frame_rank(); ++i)
    coords += w(i) * frame[static_cast<std::size_t>(i)].coords;
  return State{space, std::move(coords)};
}

Observable random_observable(const StateSpace& space, std::uint64_t seed) {
  if (!space.satisfies_postulates())
    throw PostulateError();
  Rng rng = Rng::derive(seed, 0x0b5eu);
  return Observable{space, rng.gaussian_vector(space.ambient_dim())};
}

VectorXcd symplectic_partner(const VectorXcd& v) {
  const int n = static_cast<int>(v.size()) / 2;
  VectorXcd w(2 * n);
  w.head(n) = v.tail(n).conjugate();
  w.tail(n) = -v.head(n).conjugate();
  return w;
}

Eigen::MatrixXd random_symmetry(const StateSpace& space, std::uint64_t seed) {
  if (!space.satisfies_postulates())
    throw PostulateError(
        "the square model's cone symmetries do not preserve the standard gram");
  Rng rng = Rng::derive(seed, 0x517fu);
  const int dim = space.ambient_dim();
  MatrixXd map = MatrixXd::Zero(dim, dim);
  switch (space.kind()) {
    case Kind::Classical: {
      std::vector<int> idx(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i) idx[static_cast<std::size_t>(i)] = i;
      rng.shuffle(idx);
      for (int i = 0; i < dim; ++i) map(idx[static_cast<std::size_t>(i)], i) = 1.0;
      return map;
    }
    case Kind::QuantumC: {
      const MatrixXcd u = haar_unitary(rng, space.param());
      for (int k = 0; k < dim; ++k)
        map.col(k) = space.from_matrix(u * space.basis_element(k) * u.adjoint());
      return map;
    }
    case Kind::QuantumR: {
      const MatrixXd o = haar_orthogonal(rng, space.param());
      const MatrixXcd oc = o.cast<std::complex<double>>();
      for (int k = 0; k < dim; ++k)
        map.col(k) = space.from_matrix(oc * space.basis_element(k) * oc.adjoint());
      return map;
    }
    case Kind::QuantumH: {
      const int n = space.param();
      const auto vectors = symplectic_line_vectors(rng, n, n);
      // Columns v_1..v_N then -partner(v_1)..-partner(v_N): such a unitary
      // commutes with the antiunitary partner map, so conjugation stays
      // inside the embedded quaternionic matrices.
      MatrixXcd u(2 * n, 2 * n);
      for (int i = 0; i < n; ++i) {
        u.col(i) = vectors[static_cast<std::size_t>(2 * i)];
        u.col(n + i) = -vectors[static_cast<std::size_t>(2 * i + 1)];
      }
      for (int k = 0; k < dim; ++k)
        map.col(k) = space.from_matrix(u * space.basis_element(k) * u.adjoint());
      return map;
    }
    case Kind::Bloch: {
      map(0, 0) = 1.0;
      map.bottomRightCorner(space.param(), space.param()) =
          haar_orthogonal(rng, space.param());
      return map;
    }
    case Kind::Gbit:
      break;
  }
  throw DomainError("unknown kind");
}

}  // namespace gptlab
