// Nonlinear growth / mean-response curves and their hand-derived gradients.

#include <cmath>
#include <numbers>

#include "catalog_parts.hpp"

namespace bioassay::detail {

namespace {

using std::span;
constexpr double kPi = std::numbers::pi;

// theta0 * exp(theta1 * e^{theta2 u})
double gompertz(double u, span<const double> t) {
  return t[0] * std::exp(t[1] * std::exp(t[2] * u));
}
void gompertz_grad(double u, span<const double> t, span<double> g) {
  const double e = std::exp(t[2] * u);
  const double outer = std::exp(t[1] * e);
  g[0] = outer;
  g[1] = t[0] * outer * e;
  g[2] = t[0] * outer * t[1] * e * u;
}

// theta0 + theta1 * exp(theta2 * u^theta3)
double janoschek(double u, span<const double> t) {
  return t[0] + t[1] * std::exp(t[2] * std::pow(u, t[3]));
}
void janoschek_grad(double u, span<const double> t, span<double> g) {
  const double p = std::pow(u, t[3]);
  const double e = std::exp(t[2] * p);
  g[0] = 1.0;
  g[1] = e;
  g[2] = t[1] * e * p;
  g[3] = t[1] * e * t[2] * p * std::log(u);
}

// theta0 / (1 + theta1 e^{theta2 u})
double logistic(double u, span<const double> t) {
  return t[0] / (1.0 + t[1] * std::exp(t[2] * u));
}
void logistic_grad(double u, span<const double> t, span<double> g) {
  const double e = std::exp(t[2] * u);
  const double d = 1.0 + t[1] * e;
  g[0] = 1.0 / d;
  g[1] = -t[0] * e / (d * d);
  g[2] = -t[0] * t[1] * u * e / (d * d);
}

// (theta0 + theta1 e^{theta2 u})^3
double bertalanffy(double u, span<const double> t) {
  const double b = t[0] + t[1] * std::exp(t[2] * u);
  return b * b * b;
}
void bertalanffy_grad(double u, span<const double> t, span<double> g) {
  const double e = std::exp(t[2] * u);
  const double b = t[0] + t[1] * e;
  const double s = 3.0 * b * b;
  g[0] = s;
  g[1] = s * e;
  g[2] = s * t[1] * u * e;
}

// theta0 + theta1 tanh(theta2 (u - theta3))
double tanh_model(double u, span<const double> t) {
  return t[0] + t[1] * std::tanh(t[2] * (u - t[3]));
}
void tanh_grad(double u, span<const double> t, span<double> g) {
  const double th = std::tanh(t[2] * (u - t[3]));
  const double sech2 = 1.0 - th * th;
  g[0] = 1.0;
  g[1] = th;
  g[2] = t[1] * sech2 * (u - t[3]);
  g[3] = -t[1] * sech2 * t[2];
}

// theta0/2 [1 + (2/pi) arctan(theta1 (u - theta2))]; arctan despite the name
double tanh3(double u, span<const double> t) {
  return 0.5 * t[0] * (1.0 + 2.0 / kPi * std::atan(t[1] * (u - t[2])));
}
void tanh3_grad(double u, span<const double> t, span<double> g) {
  const double z = t[1] * (u - t[2]);
  const double q = 1.0 + z * z;
  g[0] = 0.5 * (1.0 + 2.0 / kPi * std::atan(z));
  g[1] = t[0] * (u - t[2]) / (kPi * q);
  g[2] = -t[0] * t[1] / (kPi * q);
}

// theta0 + (2/pi) theta1 arctan(theta2 (u - theta3))
double tanh4(double u, span<const double> t) {
  return t[0] + 2.0 / kPi * t[1] * std::atan(t[2] * (u - t[3]));
}
void tanh4_grad(double u, span<const double> t, span<double> g) {
  const double z = t[2] * (u - t[3]);
  const double q = 1.0 + z * z;
  g[0] = 1.0;
  g[1] = 2.0 / kPi * std::atan(z);
  g[2] = 2.0 * t[1] * (u - t[3]) / (kPi * q);
  g[3] = -2.0 * t[1] * t[2] / (kPi * q);
}

// theta0 u^theta1
double exp_time_power(double u, span<const double> t) { return t[0] * std::pow(u, t[1]); }
void exp_time_power_grad(double u, span<const double> t, span<double> g) {
  const double p = std::pow(u, t[1]);
  g[0] = p;
  g[1] = t[0] * p * std::log(u);
}

// theta0 - theta1 e^{-theta2 ln u}
double exp_time_power_repar(double u, span<const double> t) {
  return t[0] - t[1] * std::exp(-t[2] * std::log(u));
}
void exp_time_power_repar_grad(double u, span<const double> t, span<double> g) {
  const double lu = std::log(u);
  const double e = std::exp(-t[2] * lu);
  g[0] = 1.0;
  g[1] = -e;
  g[2] = t[1] * lu * e;
}

// theta0 - (theta0 - theta1) exp(-(theta2 u)^theta3)
double weibull_reconstructed(double u, span<const double> t) {
  const double w = std::pow(t[2] * u, t[3]);
  return t[0] - (t[0] - t[1]) * std::exp(-w);
}
void weibull_reconstructed_grad(double u, span<const double> t, span<double> g) {
  const double w = std::pow(t[2] * u, t[3]);
  const double e = std::exp(-w);
  const double amp = t[0] - t[1];
  g[0] = 1.0 - e;
  g[1] = e;
  g[2] = amp * e * t[3] * w / t[2];
  g[3] = amp * e * w * std::log(t[2] * u);
}

// theta0 / (1 + exp(theta1 + theta2 u + theta3 u^2 + theta4 u^3))
double gen_logistic_i(double u, span<const double> t) {
  const double z = t[1] + u * (t[2] + u * (t[3] + u * t[4]));
  return t[0] / (1.0 + std::exp(z));
}
void gen_logistic_i_grad(double u, span<const double> t, span<double> g) {
  const double z = t[1] + u * (t[2] + u * (t[3] + u * t[4]));
  const double e = std::exp(z);
  const double d = 1.0 + e;
  const double dz = -t[0] * e / (d * d);
  g[0] = 1.0 / d;
  g[1] = dz;
  g[2] = dz * u;
  g[3] = dz * u * u;
  g[4] = dz * u * u * u;
}

// Box-Cox term (u^lambda - 1)/lambda and its lambda-derivative.
double box_cox(double u, double lambda) { return std::expm1(lambda * std::log(u)) / lambda; }
double box_cox_dlambda(double u, double lambda) {
  const double lu = std::log(u);
  const double p = std::exp(lambda * lu);
  return (lambda * p * lu - std::expm1(lambda * lu)) / (lambda * lambda);
}

// theta0 / (1 + exp(theta1 + theta2 (u^theta3 - 1)/theta3))
double gen_logistic_ii(double u, span<const double> t) {
  return t[0] / (1.0 + std::exp(t[1] + t[2] * box_cox(u, t[3])));
}
void gen_logistic_ii_grad(double u, span<const double> t, span<double> g) {
  const double bc = box_cox(u, t[3]);
  const double e = std::exp(t[1] + t[2] * bc);
  const double d = 1.0 + e;
  const double dz = -t[0] * e / (d * d);
  g[0] = 1.0 / d;
  g[1] = dz;
  g[2] = dz * bc;
  g[3] = dz * t[2] * box_cox_dlambda(u, t[3]);
}

ParamSpec real(const char* name) { return {name, Interval::all()}; }
ParamSpec pos(const char* name) { return {name, Interval::positive()}; }

}  // namespace

std::vector<ModelDef> growth_models() {
  const auto all = Interval::all();
  const auto positive = Interval::positive();
  const auto nonneg = Interval::nonnegative();
  std::vector<ModelDef> out;
  out.push_back({"gompertz", "Gompertz", Family::growth,
                 {real("theta0"), real("theta1"), real("theta2")}, all, std::nullopt,
                 gompertz, gompertz_grad});
  out.push_back({"janoschek", "Janoschek", Family::growth,
                 {real("theta0"), real("theta1"), real("theta2"), real("theta3")}, positive,
                 std::nullopt, janoschek, janoschek_grad});
  out.push_back({"logistic", "Logistic", Family::growth,
                 {real("theta0"), pos("theta1"), real("theta2")}, all, std::nullopt, logistic,
                 logistic_grad});
  out.push_back({"bertalanffy", "Bertalanffy", Family::growth,
                 {real("theta0"), real("theta1"), real("theta2")}, all, std::nullopt,
                 bertalanffy, bertalanffy_grad});
  out.push_back({"tanh", "tanh", Family::growth,
                 {real("theta0"), real("theta1"), real("theta2"), real("theta3")}, all,
                 std::nullopt, tanh_model, tanh_grad});
  out.push_back({"tanh3", "3-tanh", Family::growth,
                 {real("theta0"), real("theta1"), real("theta2")}, all, std::nullopt, tanh3,
                 tanh3_grad});
  out.push_back({"tanh4", "4-tanh", Family::growth,
                 {real("theta0"), real("theta1"), real("theta2"), real("theta3")}, all,
                 std::nullopt, tanh4, tanh4_grad});
  out.push_back({"exp-time-power", "Exponential time-power", Family::growth,
                 {real("theta0"), real("theta1")}, positive, std::nullopt, exp_time_power,
                 exp_time_power_grad});
  out.push_back({"exp-time-power-repar", "Reparametrized exponential time-power",
                 Family::growth, {real("theta0"), real("theta1"), real("theta2")}, positive,
                 std::nullopt, exp_time_power_repar, exp_time_power_repar_grad});
  out.push_back({"weibull-reconstructed", "Reconstructed Weibull", Family::growth,
                 {real("theta0"), real("theta1"), pos("theta2"), pos("theta3")}, nonneg,
                 positive, weibull_reconstructed, weibull_reconstructed_grad});
  out.push_back({"gen-logistic-i", "Generalized logistic (cubic)", Family::growth,
                 {real("theta0"), real("theta1"), real("theta2"), real("theta3"),
                  real("theta4")},
                 all, std::nullopt, gen_logistic_i, gen_logistic_i_grad});
  out.push_back({"gen-logistic-ii", "Generalized logistic (Box-Cox)", Family::growth,
                 {real("theta0"), real("theta1"), real("theta2"), {"theta3", Interval::nonzero()}},
                 positive, std::nullopt, gen_logistic_ii, gen_logistic_ii_grad});
  return out;
}

}  // namespace bioassay::detail
