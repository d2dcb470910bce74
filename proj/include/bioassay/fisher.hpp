#pragma once

#include <span>

#include <Eigen/Dense>

#include "bioassay/models.hpp"
#include "bioassay/replicates.hpp"
#include "bioassay/survival.hpp"

namespace bioassay {

/// Symmetric PSD information matrix with the variance scale it was built with.
struct InfoMatrix {
  Eigen::MatrixXd entries;
  double sigma2 = 1.0;

  Eigen::Index dim() const { return entries.rows(); }
  /// Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;
  /// Number of eigenvalues above rel_tol * trace.
  Eigen::Index numerical_rank(double rel_tol = 1e-10) const;
};

/// (grad f)(grad f)^T / sigma2 at a single design point.
InfoMatrix per_obs_info(const ModelDef& model, double u, const ParamVector& theta,
                        double sigma2 = 1.0);

/// Sum of per_obs_info over the design (additive information).
/// The parallel path splits the design across OpenMP threads; results agree
/// with the serial reference up to summation order.
InfoMatrix total_info(const ModelDef& model, std::span<const double> design,
                      const ParamVector& theta, double sigma2 = 1.0,
                      Execution exec = Execution::serial);

/// total_info at theta_hat with the residual variance estimate s2 in place of sigma2.
InfoMatrix info_at_estimate(const ModelDef& model, std::span<const double> design,
                            const ParamVector& theta_hat, double s2);

/// Censored-Weibull log-likelihood
///   l(theta, s) = sum_events [ln s + s ln theta + (s-1) ln t] - theta^s sum_all t^s.
double weibull_loglik(const WeibullSample& sample, double theta, double s);

/// Score (dl/dtheta, dl/ds).
Eigen::Vector2d weibull_score(const WeibullSample& sample, double theta, double s);

/// Second derivatives of weibull_loglik, not negated:
/// [[I_tt, I_ts], [I_ts, I_ss]]. Negative definite near the MLE.
Eigen::Matrix2d weibull_observed_info(const WeibullSample& sample, double theta, double s);

/// Negated weibull_observed_info: the positive-definite observed information.
Eigen::Matrix2d weibull_observed_information(const WeibullSample& sample, double theta, double s);

}  // namespace bioassay
