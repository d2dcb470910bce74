#pragma once

#include <Eigen/Dense>

namespace bioassay::lp {

/// Dense two-phase simplex over { x >= 0 : A x = b } with Bland's rule.

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double value = 0.0;
  /// On infeasibility: y with y^T A <= 0 and y^T b > 0.
  Eigen::VectorXd farkas;
  /// Phase-one residual sum of artificial variables.
  double infeasibility = 0.0;
};

/// Any feasible point (phase one only).
Result feasible_point(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

/// max c^T x subject to A x = b, x >= 0.
Result maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace bioassay::lp
