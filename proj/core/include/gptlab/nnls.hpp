#pragma once

#include <Eigen/Dense>

namespace gptlab {

struct NnlsResult {
  Eigen::VectorXd x;       // componentwise nonnegative
  double residual = 0.0;   // euclidean norm of A*x - b
  int iterations = 0;
  bool converged = false;
};

// Solves min ||A x - b|| subject to x >= 0 by active-set pivoting
// (Lawson-Hanson). Deterministic; suitable for small dense systems.
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                int max_iterations = 0);

}  // namespace gptlab
