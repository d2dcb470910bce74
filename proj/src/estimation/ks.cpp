#include <algorithm>
#include <cmath>

#include "bioassay/errors.hpp"
#include "bioassay/estimation.hpp"
#include "bioassay/special.hpp"

namespace bioassay {

KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw InvalidInput("sample", "KS test needs a nonempty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  for (double x : sorted) {
    if (!std::isfinite(x)) throw InvalidInput("sample", "sample values must be finite");
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidInput("cdf", "CDF value outside [0, 1]");
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  const double sqrt_n = std::sqrt(n);
  // Stephens' small-sample correction to the asymptotic argument.
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  return KsResult{d, special::kolmogorov_q(lambda), sorted.size(), sorted.size() >= 35};
}

KsResult ks_test(std::span<const double> sample, const ModelDef& model, const ParamVector& theta) {
  if (model.family != Family::dose_response_cdf) {
    throw InvalidInput("model", model.id + " is not a dose-response CDF");
  }
  validate_params(model, theta);
  return ks_test(sample, [&](double x) {
    if (!model.input_domain.contains(x)) return 0.0;
    return model.value(x, theta.values());
  });
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0) throw InvalidInput("n", "sample size must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha", "alpha must lie in (0, 1)");
  double lo = 0.2;
  double hi = 5.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (special::kolmogorov_q(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lambda = 0.5 * (lo + hi);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  return lambda / (sqrt_n + 0.12 + 0.11 / sqrt_n);
}

}  // namespace bioassay
