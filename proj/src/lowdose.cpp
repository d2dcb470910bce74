#include "bioassay/lowdose.hpp"

#include <cmath>
#include <sstream>

#include "bioassay/errors.hpp"
#include "bioassay/special.hpp"

namespace bioassay {

namespace {

constexpr int kMaxDoublings = 60;

const ModelDef& cdf_model(const PercentileQuery& q) {
  const ModelDef& m = find_model(q.model);
  if (m.family != Family::dose_response_cdf) {
    throw InvalidInput("model", q.model + " is not a dose-response CDF");
  }
  validate_params(m, q.theta);
  if (!(q.p > 0.0 && q.p < 1.0)) throw InvalidInput("p", "p must lie in (0, 1)");
  return m;
}

// Level F(L_p) has to reach on the total-risk scale.
double target_level(const ModelDef& m, const PercentileQuery& q, RiskType risk) {
  if (risk == RiskType::total) return q.p;
  const double f0 = m.value(0.0, q.theta.values());
  if (!(f0 < 1.0)) throw InvalidInput("theta", "extra risk needs F(0) < 1");
  return f0 + q.p * (1.0 - f0);
}

double bisect(const ModelDef& m, const ParamVector& theta, double target) {
  auto f = [&](double x) { return m.value(x, theta.values()); };
  const double f0 = f(0.0);
  if (f0 == target) return 0.0;
  if (f0 > target) {
    throw InvalidInput("p", "background response F(0) = " + std::to_string(f0) +
                                " already exceeds the requested level");
  }
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (f(hi) < target) {
    if (doublings++ == kMaxDoublings) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "level " << target << " unattainable for " << m.id
          << "; supremum of F is about " << f(hi);
      throw InvalidInput("p", msg.str());
    }
    lo = hi;
    hi *= 2.0;
  }
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::fabs(f(lo) - target) < std::fabs(f(hi) - target) ? lo : hi;
}

}  // namespace

std::string risk_name(RiskType r) { return r == RiskType::total ? "total" : "extra"; }

RiskType parse_risk(const std::string& s) {
  if (s == "total") return RiskType::total;
  if (s == "extra") return RiskType::extra;
  throw InvalidInput("risk", "risk must be 'total' or 'extra', got '" + s + "'");
}

RiskType resolve_risk(const PercentileQuery& q) {
  if (q.risk) return *q.risk;
  const ModelDef& m = cdf_model(q);
  return m.value(0.0, q.theta.values()) > 0.0 ? RiskType::extra : RiskType::total;
}

double percentile(const PercentileQuery& q) {
  const ModelDef& m = cdf_model(q);
  const RiskType risk = resolve_risk(q);
  // Both closed-form models have F(0) = 0, so extra and total risk coincide.
  if (m.id == "one-hit") return -std::log1p(-q.p) / q.theta[0];
  if (m.id == "weibull-cdf") return std::pow(-std::log1p(-q.p), 1.0 / q.theta[1]) / q.theta[0];
  return bisect(m, q.theta, target_level(m, q, risk));
}

double percentile_bisection(const PercentileQuery& q) {
  const ModelDef& m = cdf_model(q);
  return bisect(m, q.theta, target_level(m, q, resolve_risk(q)));
}

std::vector<double> percentile_gradient(const PercentileQuery& q) {
  const ModelDef& m = cdf_model(q);
  const RiskType risk = resolve_risk(q);
  const double lp = percentile(q);
  const double slope = m.input_slope(lp, q.theta.values());
  if (!(slope > 0.0) || !std::isfinite(slope)) {
    throw ComputationError(m.id + ": dF/dx is not positive and finite at L_p");
  }
  std::vector<double> dl(q.theta.size());
  m.grad(lp, q.theta.values(), dl);
  std::vector<double> d0(q.theta.size(), 0.0);
  if (risk == RiskType::extra) m.grad(0.0, q.theta.values(), d0);
  for (std::size_t j = 0; j < dl.size(); ++j) {
    dl[j] = m.is_fixed(j) ? 0.0 : ((1.0 - q.p) * d0[j] - dl[j]) / slope;
  }
  return dl;
}

VsdResult vsd_upper_limit(const PercentileQuery& q, const FitResult& fit, double confidence) {
  if (!(confidence >= 0.5 && confidence < 1.0)) {
    throw InvalidInput("confidence", "confidence must lie in [0.5, 1)");
  }
  if (!fit.info) throw InvalidInput("fit", "fit carries no information matrix");
  PercentileQuery at_fit = q;
  at_fit.theta = fit.theta_hat;

  Eigen::MatrixXd cov;
  try {
    cov = fit.covariance();
  } catch (const ComputationError& e) {
    throw InvalidInput("fit", e.what());
  }
  const std::vector<double> g = percentile_gradient(at_fit);
  if (static_cast<Eigen::Index>(g.size()) != cov.rows()) {
    throw InvalidInput("fit", "information matrix dimension does not match theta");
  }
  const Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(g.size()));

  VsdResult r;
  r.risk = resolve_risk(at_fit);
  r.confidence = confidence;
  r.lp = percentile(at_fit);
  r.se = std::sqrt(std::max(0.0, gv.dot(cov * gv)));
  r.z = confidence == 0.5 ? 0.0 : special::normal_quantile(confidence);
  const double bound = r.lp - r.z * r.se;
  r.clamped = bound < 0.0;
  r.vsd = r.clamped ? 0.0 : bound;
  return r;
}

}  // namespace bioassay
