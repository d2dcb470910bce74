#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bioassay/fisher.hpp"
#include "bioassay/models.hpp"
#include "bioassay/survival.hpp"

namespace bioassay {

struct RegressionPoint {
  double u;
  double y;
};
using RegressionDataset = std::vector<RegressionPoint>;

/// Quantal bioassay group: `events` responders among `n` subjects at `dose`.
struct QuantalGroup {
  double dose;
  std::int64_t n;
  std::int64_t events;
};
using QuantalDataset = std::vector<QuantalGroup>;

struct BinaryRow {
  double x1;
  std::optional<double> x2;
  int y;
};
using BinaryDataset = std::vector<BinaryRow>;

struct FitResult {
  std::string model;
  ParamVector theta_hat;
  double objective = 0.0;
  std::string objective_kind;  ///< "sse" or "log-likelihood"
  std::optional<double> s2;
  /// Information at theta_hat. Rows/cols of fixed parameters are zero.
  std::optional<InfoMatrix> info;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;
  /// Empty on clean convergence; otherwise "boundary", "max-iterations", ...
  std::string status;
  /// Parameters the fit held fixed (structural integers).
  std::vector<bool> fixed;

  /// sqrt(diag(info^-1)) over free parameters; 0 for fixed ones.
  /// Throws ComputationError when info is absent or singular.
  std::vector<double> standard_errors() const;
  /// info^-1 on the free parameters, embedded in a p x p matrix.
  Eigen::MatrixXd covariance() const;
};

/// theta* = (d / sum t^s)^(1/s), the root of dl/dtheta for fixed s.
double weibull_theta_star(const WeibullSample& sample, double s);

/// Profile log-likelihood l(theta*(s), s).
double weibull_profile_loglik(const WeibullSample& sample, double s);

/// Joint (theta, s) MLE by golden-section on the profile over s in
/// [0.05, 50] followed by a Newton polish. theta_hat = (theta, s);
/// info is the negated Hessian.
FitResult weibull_mle(const WeibullSample& sample);

struct LeastSquaresOptions {
  int max_iterations = 500;
  double rel_sse_tol = 1e-10;
  double gradient_tol = 1e-8;
};

/// Gauss-Newton with step halving and a Levenberg fallback.
FitResult fit_least_squares(const ModelDef& model, const RegressionDataset& data,
                            const ParamVector& theta0, const LeastSquaresOptions& opts = {});

/// Binomial maximum likelihood for a dose-response CDF by Fisher scoring.
FitResult fit_quantal(const ModelDef& model, const QuantalDataset& data,
                      const ParamVector& theta0);

/// Logit regression log(P/(1-P)) = b0 + b1 x1 [+ b2 x2] by Newton-Raphson.
/// Rejects an x2 column that is collinear with the intercept or x1.
FitResult fit_logit(const BinaryDataset& data, bool include_x2);

/// exp(beta1).
double relative_risk(double beta1);

struct KsResult {
  double statistic;
  double p_value;
  std::size_t n;
  bool asymptotic_valid;  ///< n >= 35
};

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf);
KsResult ks_test(std::span<const double> sample, const ModelDef& model, const ParamVector& theta);

/// Critical value of D at level alpha from the asymptotic distribution.
double ks_critical_value(std::size_t n, double alpha);

}  // namespace bioassay
