#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace gptlab {

// Deterministic random source. xoshiro256++ with splitmix64 seeding, plus
// the handful of samplers the library needs. We deliberately avoid the
// standard <random> distributions: their output is implementation-defined,
// and byte-stable CSV output across toolchains is part of the contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Independent stream derived from (base, stream). Used to hand each
  // sample / restart / trial its own generator so batch order is free.
  static Rng derive(std::uint64_t base, std::uint64_t stream);

  std::uint64_t next_u64();

  double uniform();                     // [0, 1)
  double uniform(double lo, double hi); // [lo, hi)
  int uniform_int(int n);               // {0, ..., n-1}
  double normal();                      // standard normal (polar method)

  Eigen::VectorXd gaussian_vector(int n);
  Eigen::MatrixXd gaussian_matrix(int rows, int cols);
  Eigen::MatrixXcd gaussian_complex_matrix(int rows, int cols);

  // Flat Dirichlet: normalized vector of standard exponentials.
  Eigen::VectorXd dirichlet(int n);

  // In-place Fisher-Yates.
  void shuffle(std::vector<int>& items);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace gptlab
