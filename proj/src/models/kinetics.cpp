// Michaelis-Menten family: single and two-substrate hyperbolas, Hill-type
// threshold responses, MMF, coupled MM processes, light-response curves.

#include <cmath>

#include "catalog_parts.hpp"

namespace bioassay::detail {

namespace {

using std::span;

// Vmax S / (K + S); theta = (Vmax, K)
double mm(double s, span<const double> t) { return t[0] * s / (t[1] + s); }
void mm_grad(double s, span<const double> t, span<double> g) {
  const double d = t[1] + s;
  g[0] = s / d;
  g[1] = -t[0] * s / (d * d);
}
double mm_slope(double s, span<const double> t) {
  const double d = t[1] + s;
  return t[0] * t[1] / (d * d);
}

// k x1 x2 / (1 + C1 x1 + C2 x2 + C3 x1 x2); input u = x1,
// theta = (k, C1, C2, C3, x2) with the second substrate level carried last.
double mm_two(double x1, span<const double> t) {
  const double x2 = t[4];
  return t[0] * x1 * x2 / (1.0 + t[1] * x1 + t[2] * x2 + t[3] * x1 * x2);
}
void mm_two_grad(double x1, span<const double> t, span<double> g) {
  const double x2 = t[4];
  const double d = 1.0 + t[1] * x1 + t[2] * x2 + t[3] * x1 * x2;
  const double n = t[0] * x1 * x2;
  const double d2 = d * d;
  g[0] = x1 * x2 / d;
  g[1] = -n * x1 / d2;
  g[2] = -n * x2 / d2;
  g[3] = -n * x1 * x2 / d2;
  g[4] = t[0] * x1 / d - n * (t[2] + t[3] * x1) / d2;
}

// V r / (1 + r), r = (X/Kc)^n; theta = (V, Kc, n)
double hill(double x, span<const double> t) {
  const double r = std::pow(x / t[1], t[2]);
  return t[0] * r / (1.0 + r);
}
void hill_grad(double x, span<const double> t, span<double> g) {
  const double r = std::pow(x / t[1], t[2]);
  const double q = 1.0 + r;
  const double common = t[0] * r / (q * q);
  g[0] = r / q;
  g[1] = -common * t[2] / t[1];
  g[2] = x > 0.0 ? common * std::log(x / t[1]) : 0.0;
}

// V / (1 + (X/Kc)^n)
double hill_decreasing(double x, span<const double> t) {
  const double r = std::pow(x / t[1], t[2]);
  return t[0] / (1.0 + r);
}
void hill_decreasing_grad(double x, span<const double> t, span<double> g) {
  const double r = std::pow(x / t[1], t[2]);
  const double q = 1.0 + r;
  const double common = t[0] * r / (q * q);
  g[0] = 1.0 / q;
  g[1] = common * t[2] / t[1];
  g[2] = x > 0.0 ? -common * std::log(x / t[1]) : 0.0;
}

// (theta0 x^theta1 + theta2 theta3) / (x^theta1 + theta3)
double mmf(double x, span<const double> t) {
  const double p = std::pow(x, t[1]);
  return (t[0] * p + t[2] * t[3]) / (p + t[3]);
}
void mmf_grad(double x, span<const double> t, span<double> g) {
  const double p = std::pow(x, t[1]);
  const double d = p + t[3];
  const double d2 = d * d;
  g[0] = p / d;
  g[1] = x > 0.0 ? p * std::log(x) * t[3] * (t[0] - t[2]) / d2 : 0.0;
  g[2] = t[3] / d;
  g[3] = p * (t[2] - t[0]) / d2;
}

// V1 S/(K1 + S) + V2 S/(K2 + S); theta = (V1, K1, V2, K2)
double mm_parallel(double s, span<const double> t) {
  return t[0] * s / (t[1] + s) + t[2] * s / (t[3] + s);
}
void mm_parallel_grad(double s, span<const double> t, span<double> g) {
  const double d1 = t[1] + s;
  const double d2 = t[3] + s;
  g[0] = s / d1;
  g[1] = -t[0] * s / (d1 * d1);
  g[2] = s / d2;
  g[3] = -t[2] * s / (d2 * d2);
}
double mm_parallel_slope(double s, span<const double> t) {
  const double d1 = t[1] + s;
  const double d2 = t[3] + s;
  return t[0] * t[1] / (d1 * d1) + t[2] * t[3] / (d2 * d2);
}

// E0 (k1 k3 S - k2 k4 I) / (k2 + k3 + k1 S + k4 I); theta = (E0, k1, k2, k3, k4, I)
double mm_series(double s, span<const double> t) {
  const double e0 = t[0], k1 = t[1], k2 = t[2], k3 = t[3], k4 = t[4], inh = t[5];
  return e0 * (k1 * k3 * s - k2 * k4 * inh) / (k2 + k3 + k1 * s + k4 * inh);
}
void mm_series_grad(double s, span<const double> t, span<double> g) {
  const double e0 = t[0], k1 = t[1], k2 = t[2], k3 = t[3], k4 = t[4], inh = t[5];
  const double net = k1 * k3 * s - k2 * k4 * inh;
  const double d = k2 + k3 + k1 * s + k4 * inh;
  const double n = e0 * net;
  const double d2 = d * d;
  g[0] = net / d;
  g[1] = e0 * k3 * s / d - n * s / d2;
  g[2] = -e0 * k4 * inh / d - n / d2;
  g[3] = e0 * k1 * s / d - n / d2;
  g[4] = -e0 * k2 * inh / d - n * inh / d2;
  g[5] = -e0 * k2 * k4 / d - n * k4 / d2;
}

// P0 u / (P0 + u), u = eta C; input C, theta = (P0, eta)
double photo_pmax(double c, span<const double> t) {
  const double u = t[1] * c;
  return t[0] * u / (t[0] + u);
}
void photo_pmax_grad(double c, span<const double> t, span<double> g) {
  const double u = t[1] * c;
  const double d = t[0] + u;
  g[0] = u * u / (d * d);
  g[1] = c * t[0] * t[0] / (d * d);
}

// a I Pmax / (a I + Pmax) - Rd; theta = (a, Pmax, Rd)
double leaf_response(double i, span<const double> t) {
  const double ai = t[0] * i;
  return ai * t[1] / (ai + t[1]) - t[2];
}
void leaf_response_grad(double i, span<const double> t, span<double> g) {
  const double ai = t[0] * i;
  const double d = ai + t[1];
  g[0] = i * t[1] * t[1] / (d * d);
  g[1] = ai * ai / (d * d);
  g[2] = -1.0;
}

}  // namespace

std::vector<ModelDef> kinetic_models() {
  const auto conc = Interval::nonnegative();
  const auto positive = Interval::positive();
  const auto nonneg = Interval::nonnegative();
  const auto all = Interval::all();
  std::vector<ModelDef> out;
  out.push_back({"mm", "Michaelis-Menten", Family::kinetics, {{"Vmax", positive}, {"K", positive}},
                 conc, std::nullopt, mm, mm_grad, mm_slope});
  out.push_back({"mm-two-substrate", "Two-substrate rectangular hyperbola", Family::kinetics,
                 {{"k", positive}, {"C1", nonneg}, {"C2", nonneg}, {"C3", nonneg}, {"x2", nonneg}},
                 conc, std::nullopt, mm_two, mm_two_grad});
  out.push_back({"hill", "Hill (threshold response)", Family::kinetics,
                 {{"V", positive}, {"Kc", positive}, {"n", positive}}, conc, std::nullopt, hill,
                 hill_grad});
  out.push_back({"hill-decreasing", "Decreasing Hill response", Family::kinetics,
                 {{"V", positive}, {"Kc", positive}, {"n", positive}}, conc, std::nullopt,
                 hill_decreasing, hill_decreasing_grad});
  out.push_back({"mmf", "Morgan-Marcer-Flodin", Family::kinetics,
                 {{"theta0", all}, {"theta1", positive}, {"theta2", all}, {"theta3", positive}},
                 conc, std::nullopt, mmf, mmf_grad});
  out.push_back({"mm-parallel", "Michaelis-Menten in parallel", Family::kinetics,
                 {{"V1", positive}, {"K1", positive}, {"V2", positive}, {"K2", positive}}, conc,
                 std::nullopt, mm_parallel, mm_parallel_grad, mm_parallel_slope});
  out.push_back({"mm-series", "Michaelis-Menten in series", Family::kinetics,
                 {{"E0", positive}, {"k1", positive}, {"k2", positive}, {"k3", positive},
                  {"k4", positive}, {"I", nonneg}},
                 conc, std::nullopt, mm_series, mm_series_grad});
  out.push_back({"photo-pmax", "Photosynthetic light/CO2 response", Family::kinetics,
                 {{"P0", positive}, {"eta", positive}}, conc, std::nullopt, photo_pmax,
                 photo_pmax_grad});
  out.push_back({"leaf-response", "Leaf response to light flux", Family::kinetics,
                 {{"a", positive}, {"Pmax", positive}, {"Rd", all}}, conc, std::nullopt,
                 leaf_response, leaf_response_grad});
  return out;
}

}  // namespace bioassay::detail
