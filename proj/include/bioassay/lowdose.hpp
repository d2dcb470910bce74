#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bioassay/estimation.hpp"
#include "bioassay/models.hpp"

namespace bioassay {

/// total: F(L) = p.  extra: (F(L) - F(0)) / (1 - F(0)) = p.
enum class RiskType { total, extra };

std::string risk_name(RiskType r);
RiskType parse_risk(const std::string& s);

struct PercentileQuery {
  std::string model;
  ParamVector theta;
  double p = 0.0;
  /// Defaults to extra when F(0) > 0, otherwise total.
  std::optional<RiskType> risk;
};

/// The risk scale actually used for a query.
RiskType resolve_risk(const PercentileQuery& q);

/// Dose L_p. Closed forms for one-hit and Weibull; monotone bisection otherwise.
/// Throws InvalidInput when p exceeds the attainable supremum of F.
double percentile(const PercentileQuery& q);

/// Always bisection, for cross-checking the closed forms.
double percentile_bisection(const PercentileQuery& q);

/// dL_p/dtheta by implicit differentiation of F(L_p; theta) = target(theta).
/// Fixed parameters get 0.
std::vector<double> percentile_gradient(const PercentileQuery& q);

struct VsdResult {
  double lp = 0.0;
  double se = 0.0;
  double z = 0.0;
  double vsd = 0.0;
  /// L_p - z SE was negative and got clamped to 0.
  bool clamped = false;
  RiskType risk = RiskType::total;
  double confidence = 0.0;
};

/// Lower confidence bound on L_p by the delta method, evaluated at
/// fit.theta_hat with the covariance from fit.info. confidence in [0.5, 1).
VsdResult vsd_upper_limit(const PercentileQuery& q, const FitResult& fit, double confidence);

}  // namespace bioassay
