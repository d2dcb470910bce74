// Censored Weibull maximum likelihood via the closed-form scale profile.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bioassay/errors.hpp"
#include "bioassay/estimation.hpp"

namespace bioassay {

namespace {

constexpr double kShapeLo = 0.05;
constexpr double kShapeHi = 50.0;
constexpr int kMaxIterations = 200;
constexpr double kScoreTol = 1e-8;

// log sum_i exp(s * ln t_i), overflow-safe.
double log_sum_pow(const WeibullSample& sample, double s) {
  double m = -HUGE_VAL;
  for (const auto& o : sample.observations()) m = std::max(m, s * std::log(o.time));
  double acc = 0.0;
  for (const auto& o : sample.observations()) acc += std::exp(s * std::log(o.time) - m);
  return m + std::log(acc);
}

double log_theta_star(const WeibullSample& sample, double s) {
  const double d = static_cast<double>(sample.event_count());
  return (std::log(d) - log_sum_pow(sample, s)) / s;
}

}  // namespace

double weibull_theta_star(const WeibullSample& sample, double s) {
  if (!(s > 0.0) || std::isinf(s)) throw InvalidInput("s", "Weibull shape must be positive");
  return std::exp(log_theta_star(sample, s));
}

double weibull_profile_loglik(const WeibullSample& sample, double s) {
  if (!(s > 0.0) || std::isinf(s)) throw InvalidInput("s", "Weibull shape must be positive");
  const double d = static_cast<double>(sample.event_count());
  // theta*^s * sum t^s = d at the profile point.
  return d * std::log(s) + d * s * log_theta_star(sample, s) +
         (s - 1.0) * sample.sum_log_event_times() - d;
}

FitResult weibull_mle(const WeibullSample& sample) {
  if (sample.event_count() < 2) {
    throw InvalidInput("events", "Weibull MLE needs at least two events");
  }
  FitResult fit;
  fit.model = "weibull-cdf";
  fit.objective_kind = "log-likelihood";
  fit.fixed = {false, false};

  // Golden-section search on log s; the profile is unimodal in s.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(kShapeLo);
  double b = std::log(kShapeHi);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = weibull_profile_loglik(sample, std::exp(c));
  double fd = weibull_profile_loglik(sample, std::exp(d));
  int iter = 0;
  while (b - a > 1e-10 && iter < kMaxIterations) {
    ++iter;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = weibull_profile_loglik(sample, std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = weibull_profile_loglik(sample, std::exp(d));
    }
  }
  double s = std::exp(0.5 * (a + b));
  double theta = weibull_theta_star(sample, s);

  const bool at_boundary = std::log(s) - std::log(kShapeLo) < 1e-6 ||
                           std::log(kShapeHi) - std::log(s) < 1e-6;
  if (at_boundary) {
    fit.theta_hat = ParamVector{theta, s};
    fit.objective = weibull_loglik(sample, theta, s);
    fit.iterations = iter;
    fit.gradient_norm = weibull_score(sample, theta, s).norm();
    fit.status = "boundary";
    fit.converged = false;
    return fit;
  }

  // Newton polish on the joint score using the analytic Hessian.
  Eigen::Vector2d score = weibull_score(sample, theta, s);
  while (score.norm() >= kScoreTol && iter < kMaxIterations) {
    ++iter;
    const Eigen::Matrix2d h = weibull_observed_info(sample, theta, s);
    const Eigen::Vector2d step = -h.ldlt().solve(score);
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      const double nt = theta + t * step[0];
      const double ns = s + t * step[1];
      if (!(nt > 0.0) || !(ns > 0.0)) continue;
      const Eigen::Vector2d nscore = weibull_score(sample, nt, ns);
      if (nscore.norm() < score.norm()) {
        theta = nt;
        s = ns;
        score = nscore;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  fit.theta_hat = ParamVector{theta, s};
  fit.objective = weibull_loglik(sample, theta, s);
  fit.iterations = iter;
  fit.gradient_norm = score.norm();
  fit.converged = fit.gradient_norm < kScoreTol;
  if (!fit.converged) fit.status = iter >= kMaxIterations ? "max-iterations" : "stalled";
  fit.info = InfoMatrix{weibull_observed_information(sample, theta, s), 1.0};
  return fit;
}

}  // namespace bioassay
