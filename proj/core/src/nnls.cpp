#include "gptlab/nnls.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace gptlab {

using Eigen::MatrixXd;
using Eigen::VectorXd;

NnlsResult nnls(const MatrixXd& a, const VectorXd& b, int max_iterations) {
  const int n = static_cast<int>(a.cols());
  if (max_iterations <= 0) max_iterations = 3 * n + 30;

  NnlsResult out;
  out.x = VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  int passive_count = 0;

  VectorXd w = a.transpose() * (b - a * out.x);
  const double wtol = 10.0 * std::numeric_limits<double>::epsilon() *
                      a.cwiseAbs().maxCoeff() * std::max<int>(1, n);

  auto solve_passive = [&](VectorXd& z) {
    // Least squares restricted to the passive set, zeros elsewhere.
    MatrixXd ap(a.rows(), passive_count);
    std::vector<int> cols;
    for (int j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) {
        ap.col(static_cast<int>(cols.size())) = a.col(j);
        cols.push_back(j);
      }
    }
    const VectorXd zp = ap.colPivHouseholderQr().solve(b);
    z.setZero();
    for (std::size_t k = 0; k < cols.size(); ++k)
      z(cols[k]) = zp(static_cast<int>(k));
  };

  while (out.iterations < max_iterations) {
    ++out.iterations;
    w = a.transpose() * (b - a * out.x);
    int best = -1;
    double best_w = wtol;
    for (int j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) {
      out.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(best)] = true;
    ++passive_count;

    VectorXd z(n);
    solve_passive(z);
    while (true) {
      double min_passive = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)]) min_passive = std::min(min_passive, z(j));
      if (min_passive > 0.0) break;

      // Step back along the segment x -> z to the first zero crossing and
      // drop the variables that hit the boundary.
      double alpha = 1.0;
      for (int j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          const double denom = out.x(j) - z(j);
          if (denom > 0.0) alpha = std::min(alpha, out.x(j) / denom);
        }
      }
      out.x += alpha * (z - out.x);
      for (int j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && out.x(j) <= wtol) {
          passive[static_cast<std::size_t>(j)] = false;
          --passive_count;
          out.x(j) = 0.0;
        }
      }
      if (passive_count == 0) break;
      solve_passive(z);
    }
    if (passive_count > 0) out.x = z;
  }

  out.residual = (a * out.x - b).norm();
  return out;
}

}  // namespace gptlab
