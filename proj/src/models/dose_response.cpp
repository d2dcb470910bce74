// Quantal dose-response CDFs F(x; theta) on doses x >= 0.

#include <cmath>

#include "bioassay/special.hpp"
#include "catalog_parts.hpp"

namespace bioassay::detail {

namespace {

using std::span;

// 1 - exp(-theta x)
double one_hit(double x, span<const double> t) { return -std::expm1(-t[0] * x); }
void one_hit_grad(double x, span<const double> t, span<double> g) {
  g[0] = x * std::exp(-t[0] * x);
}
double one_hit_slope(double x, span<const double> t) { return t[0] * std::exp(-t[0] * x); }

// Gamma(k) CDF at lambda x; theta = (k, lambda), k a positive integer.
double multi_hit(double x, span<const double> t) {
  return special::gamma_p(t[0], t[1] * x);
}
double multi_hit_density(double x, span<const double> t) {
  const double k = t[0];
  const double y = t[1] * x;
  if (y == 0.0) return k == 1.0 ? 1.0 : 0.0;
  return std::exp((k - 1.0) * std::log(y) - y - std::lgamma(k));
}
void multi_hit_grad(double x, span<const double> t, span<double> g) {
  g[0] = 0.0;
  g[1] = x * multi_hit_density(x, t);
}
double multi_hit_slope(double x, span<const double> t) { return t[1] * multi_hit_density(x, t); }

// 1 - exp(-(theta x)^s); theta = (theta, s)
double weibull_cdf(double x, span<const double> t) {
  return -std::expm1(-std::pow(t[0] * x, t[1]));
}
void weibull_cdf_grad(double x, span<const double> t, span<double> g) {
  if (x == 0.0) {
    g[0] = g[1] = 0.0;
    return;
  }
  const double w = std::pow(t[0] * x, t[1]);
  const double e = std::exp(-w);
  g[0] = e * t[1] * w / t[0];
  g[1] = e * w * std::log(t[0] * x);
}
double weibull_cdf_slope(double x, span<const double> t) {
  if (x == 0.0) return t[1] == 1.0 ? t[0] : (t[1] > 1.0 ? 0.0 : HUGE_VAL);
  const double w = std::pow(t[0] * x, t[1]);
  return std::exp(-w) * t[1] * w / x;
}

// 1 - exp(-(theta0 + theta1 x + ... + thetak x^k))
double poly(double x, span<const double> t) {
  double acc = 0.0;
  for (auto it = t.rbegin(); it != t.rend(); ++it) acc = acc * x + *it;
  return acc;
}
double multistage(double x, span<const double> t) { return -std::expm1(-poly(x, t)); }
void multistage_grad(double x, span<const double> t, span<double> g) {
  const double e = std::exp(-poly(x, t));
  double xp = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    g[i] = xp * e;
    xp *= x;
  }
}
double multistage_slope(double x, span<const double> t) {
  double dp = 0.0;
  double xp = 1.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    dp += static_cast<double>(i) * t[i] * xp;
    xp *= x;
  }
  return dp * std::exp(-poly(x, t));
}

// 1 / (1 + exp(-(theta0 + theta1 x)))
double expit(double z) {
  return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}
double logit_cdf(double x, span<const double> t) { return expit(t[0] + t[1] * x); }
void logit_cdf_grad(double x, span<const double> t, span<double> g) {
  const double f = expit(t[0] + t[1] * x);
  const double w = f * (1.0 - f);
  g[0] = w;
  g[1] = w * x;
}
double logit_cdf_slope(double x, span<const double> t) {
  const double f = expit(t[0] + t[1] * x);
  return t[1] * f * (1.0 - f);
}

// Phi(theta0 + theta1 x)
double probit_cdf(double x, span<const double> t) {
  return special::normal_cdf(t[0] + t[1] * x);
}
void probit_cdf_grad(double x, span<const double> t, span<double> g) {
  const double phi = special::normal_pdf(t[0] + t[1] * x);
  g[0] = phi;
  g[1] = phi * x;
}
double probit_cdf_slope(double x, span<const double> t) {
  return t[1] * special::normal_pdf(t[0] + t[1] * x);
}

}  // namespace

std::vector<ModelDef> dose_response_models() {
  const auto dose = Interval::nonnegative();
  const auto positive = Interval::positive();
  const auto nonneg = Interval::nonnegative();
  std::vector<ModelDef> out;
  out.push_back({"one-hit", "One-hit", Family::dose_response_cdf, {{"theta", positive}}, dose,
                 std::nullopt, one_hit, one_hit_grad, one_hit_slope});
  out.push_back({"multi-hit", "Multi-hit", Family::dose_response_cdf,
                 {{"k", Interval{Bound{1.0, false}, std::nullopt, std::nullopt}, true}, {"lambda", positive}},
                 dose, std::nullopt, multi_hit, multi_hit_grad, multi_hit_slope});
  out.push_back({"weibull-cdf", "Weibull", Family::dose_response_cdf,
                 {{"theta", positive}, {"s", positive}}, dose, std::nullopt, weibull_cdf,
                 weibull_cdf_grad, weibull_cdf_slope});
  out.push_back({"multistage", "Armitage-Doll multistage", Family::dose_response_cdf,
                 {{"theta0", nonneg}, {"theta1", nonneg}}, dose,
                 std::nullopt, multistage, multistage_grad, multistage_slope, true});
  out.push_back({"logit-cdf", "Logit", Family::dose_response_cdf,
                 {{"theta0", Interval::all()}, {"theta1", positive}}, dose, std::nullopt,
                 logit_cdf, logit_cdf_grad, logit_cdf_slope});
  out.push_back({"probit-cdf", "Probit", Family::dose_response_cdf,
                 {{"theta0", Interval::all()}, {"theta1", positive}}, dose, std::nullopt,
                 probit_cdf, probit_cdf_grad, probit_cdf_slope});
  return out;
}

}  // namespace bioassay::detail
