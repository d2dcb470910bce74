#include "bioassay/hazard.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "bioassay/errors.hpp"

namespace bioassay {

double hazard_ad(double t, const HazardSpec& spec) {
  if (!(spec.c > 0.0)) throw InvalidInput("c", "hazard scale c must be positive");
  if (spec.k < 1) throw InvalidInput("k", "number of stages k must be >= 1");
  if (!(spec.t0 >= 0.0)) throw InvalidInput("t0", "lag t0 must be nonnegative");
  if (!(t > spec.t0)) {
    throw InvalidInput("t", "hazard undefined for t <= t0 (t = " + std::to_string(t) +
                                ", t0 = " + std::to_string(spec.t0) + ")");
  }
  return spec.c * std::pow(t - spec.t0, spec.k - 1);
}

double hazard_cox(double t, std::span<const double> W, const HazardSpec& spec) {
  if (!spec.baseline) throw InvalidInput("baseline", "baseline hazard not set");
  if (W.size() != spec.beta.size()) {
    throw InvalidInput("W", "covariate dimension " + std::to_string(W.size()) +
                                " does not match beta dimension " +
                                std::to_string(spec.beta.size()));
  }
  const double base = spec.baseline(t);
  if (!(base > 0.0)) throw InvalidInput("baseline", "baseline hazard must be positive at t");
  const double score = std::inner_product(W.begin(), W.end(), spec.beta.begin(), 0.0);
  return base * std::exp(score);
}

}  // namespace bioassay
