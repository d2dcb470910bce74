#pragma once

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bioassay/models.hpp"

namespace testsupport {

struct Box {
  double lo;
  double hi;
};

// Parameter and input ranges kept away from overflow and from the
// points where a gradient component is undefined.
struct ModelBox {
  std::vector<Box> params;
  Box u;
};

inline const ModelBox& box_for(const std::string& id) {
  static const std::map<std::string, ModelBox> boxes = {
      {"gompertz", {{{0.5, 2}, {-1, 1}, {-1, 1}}, {-1.5, 1.5}}},
      {"janoschek", {{{-2, 2}, {-2, 2}, {-1, 1}, {0.5, 2}}, {0.1, 2}}},
      {"logistic", {{{0.5, 3}, {0.2, 3}, {-2, 2}}, {-2, 2}}},
      {"bertalanffy", {{{-1, 1}, {-1, 1}, {-1, 1}}, {-1.5, 1.5}}},
      {"tanh", {{{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}}, {-2, 2}}},
      {"tanh3", {{{-2, 2}, {-2, 2}, {-2, 2}}, {-2, 2}}},
      {"tanh4", {{{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}}, {-2, 2}}},
      {"exp-time-power", {{{-2, 2}, {-2, 2}}, {0.2, 3}}},
      {"exp-time-power-repar", {{{-2, 2}, {-2, 2}, {-2, 2}}, {0.2, 3}}},
      {"weibull-reconstructed", {{{-2, 2}, {-2, 2}, {0.3, 2}, {0.5, 3}}, {0.1, 2}}},
      {"gen-logistic-i", {{{0.5, 3}, {-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}}, {-1.5, 1.5}}},
      {"gen-logistic-ii", {{{0.5, 3}, {-1, 1}, {-1, 1}, {0.3, 2}}, {0.2, 3}}},
      {"one-hit", {{{0.2, 3}}, {0.1, 3}}},
      {"multi-hit", {{{1, 5}, {0.2, 3}}, {0.1, 3}}},
      {"weibull-cdf", {{{0.2, 3}, {0.5, 3}}, {0.1, 3}}},
      {"multistage", {{{0.05, 2}, {0.05, 2}}, {0.1, 3}}},
      {"logit-cdf", {{{-2, 2}, {0.2, 3}}, {0.1, 3}}},
      {"probit-cdf", {{{-2, 2}, {0.2, 3}}, {0.1, 3}}},
      {"mm", {{{0.2, 3}, {0.2, 3}}, {0.1, 3}}},
      {"mm-two-substrate", {{{0.2, 3}, {0.2, 3}, {0.2, 3}, {0.2, 3}, {0.2, 3}}, {0.1, 3}}},
      {"hill", {{{0.2, 3}, {0.2, 3}, {0.3, 3}}, {0.1, 3}}},
      {"hill-decreasing", {{{0.2, 3}, {0.2, 3}, {0.3, 3}}, {0.1, 3}}},
      {"mmf", {{{-2, 2}, {0.3, 3}, {-2, 2}, {0.2, 3}}, {0.1, 3}}},
      {"mm-parallel", {{{0.2, 3}, {0.2, 3}, {0.2, 3}, {0.2, 3}}, {0.1, 3}}},
      {"mm-series", {{{0.2, 3}, {0.2, 3}, {0.2, 3}, {0.2, 3}, {0.2, 3}, {0.2, 3}}, {0.1, 3}}},
      {"photo-pmax", {{{0.2, 3}, {0.2, 3}}, {0.1, 3}}},
      {"leaf-response", {{{0.2, 3}, {0.2, 3}, {-1, 1}}, {0.1, 3}}},
  };
  return boxes.at(id);
}

struct SamplePoint {
  double u;
  bioassay::ParamVector theta;
};

inline double draw(std::mt19937_64& rng, Box b) {
  return std::uniform_real_distribution<double>(b.lo, b.hi)(rng);
}

inline SamplePoint sample_point(const bioassay::ModelDef& m, std::mt19937_64& rng) {
  const ModelBox& box = box_for(m.id);
  std::vector<double> theta;
  std::size_t p = m.params.size();
  if (m.variadic) p += std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  for (std::size_t i = 0; i < p; ++i) {
    const Box b = box.params[std::min(i, box.params.size() - 1)];
    if (m.is_fixed(i)) {
      theta.push_back(std::floor(draw(rng, {b.lo, b.hi + 1.0 - 1e-9})));
    } else {
      theta.push_back(draw(rng, b));
    }
  }
  if (m.id == "gen-logistic-ii" && std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
    theta[3] = -theta[3];
  }
  return {draw(rng, box.u), bioassay::ParamVector(std::move(theta))};
}

// Central differences of the raw value function.
inline std::vector<double> fd_gradient(const bioassay::ModelDef& m, double u,
                                       const bioassay::ParamVector& theta) {
  std::vector<double> out(theta.size(), 0.0);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (m.is_fixed(i)) continue;
    const double h = 1e-6 * std::max(1.0, std::fabs(theta[i]));
    std::vector<double> up(theta.begin(), theta.end());
    std::vector<double> dn = up;
    up[i] += h;
    dn[i] -= h;
    out[i] = (m.value(u, up) - m.value(u, dn)) / (2.0 * h);
  }
  return out;
}

inline double gradient_error(const std::vector<double>& g, const std::vector<double>& fd) {
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::fabs(g[i] - fd[i]) / std::max(1.0, std::fabs(g[i])));
  }
  return worst;
}

}  // namespace testsupport
