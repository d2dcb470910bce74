#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bioassay {

/// Parameters of the Armitage-Doll and proportional-hazards forms.
struct HazardSpec {
  double c = 1.0;        ///< rate scale, > 0
  int k = 1;             ///< number of stages, >= 1
  double t0 = 0.0;       ///< growth lag, >= 0
  std::function<double(double)> baseline;  ///< lambda0(t) > 0
  std::vector<double> beta;
};

/// Armitage-Doll hazard c (t - t0)^(k-1); requires t > t0.
double hazard_ad(double t, const HazardSpec& spec);

/// Proportional hazard lambda0(t) exp(beta . W).
double hazard_cox(double t, std::span<const double> W, const HazardSpec& spec);

}  // namespace bioassay
