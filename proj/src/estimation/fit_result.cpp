#include <cmath>

#include "bioassay/errors.hpp"
#include "bioassay/estimation.hpp"

namespace bioassay {

Eigen::MatrixXd FitResult::covariance() const {
  if (!info) throw ComputationError(model + ": no information matrix available");
  const Eigen::Index p = info->dim();
  std::vector<Eigen::Index> free;
  for (Eigen::Index i = 0; i < p; ++i) {
    const bool is_fixed = static_cast<std::size_t>(i) < fixed.size() && fixed[static_cast<std::size_t>(i)];
    if (!is_fixed) free.push_back(i);
  }
  const auto q = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd sub(q, q);
  for (Eigen::Index a = 0; a < q; ++a) {
    for (Eigen::Index b = 0; b < q; ++b) sub(a, b) = info->entries(free[a], free[b]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
  if (!lu.isInvertible()) throw ComputationError(model + ": information matrix is singular");
  const Eigen::MatrixXd inv = lu.inverse();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index a = 0; a < q; ++a) {
    for (Eigen::Index b = 0; b < q; ++b) cov(free[a], free[b]) = inv(a, b);
  }
  return cov;
}

std::vector<double> FitResult::standard_errors() const {
  const Eigen::MatrixXd cov = covariance();
  std::vector<double> se(static_cast<std::size_t>(cov.rows()));
  for (Eigen::Index i = 0; i < cov.rows(); ++i) {
    se[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, cov(i, i)));
  }
  return se;
}

}  // namespace bioassay
