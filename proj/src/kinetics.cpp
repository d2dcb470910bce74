#include "bioassay/kinetics.hpp"

#include <cmath>
#include <limits>

#include "bioassay/errors.hpp"

namespace bioassay {

namespace {

void require_positive(const char* name, double v) {
  if (!(v > 0.0) || std::isinf(v)) {
    throw InvalidInput(name, std::string(name) + " must be positive and finite");
  }
}

void require_michaelis(const KineticConstants& c) {
  require_positive("Vmax", c.Vmax);
  require_positive("K", c.K);
}

}  // namespace

KineticConstants KineticConstants::from_rates(double k1, double k2, double k3, double E0,
                                              double k4) {
  require_positive("k1", k1);
  require_positive("k2", k2);
  require_positive("k3", k3);
  require_positive("k4", k4);
  require_positive("E0", E0);
  return {k1, k2, k3, k4, E0, k3 * E0, (k2 + k3) / k1};
}

KineticConstants KineticConstants::from_michaelis(double Vmax, double K) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  KineticConstants c{nan, nan, nan, nan, nan, Vmax, K};
  require_michaelis(c);
  return c;
}

bool KineticConstants::has_rates() const {
  return !std::isnan(k1) && !std::isnan(k2) && !std::isnan(k3) && !std::isnan(E0);
}

double steady_state_complex(const KineticConstants& c, double S) {
  if (!c.has_rates()) throw InvalidInput("constants", "rate constants k1, k2, k3, E0 not set");
  require_positive("k1", c.k1);
  require_positive("k2", c.k2);
  require_positive("k3", c.k3);
  require_positive("E0", c.E0);
  if (!(S >= 0.0)) throw InvalidInput("S", "substrate concentration must be nonnegative");
  if (std::isinf(S)) return c.E0;
  return c.k1 * S * c.E0 / (c.k1 * S + c.k2 + c.k3);
}

double steady_state_velocity(const KineticConstants& c, double S) {
  return c.k3 * steady_state_complex(c, S);
}

double mm_slope_at_origin(const KineticConstants& c) {
  require_michaelis(c);
  return c.Vmax / c.K;
}

double mm_rate_derivative(const KineticConstants& c, double S) {
  require_michaelis(c);
  if (!(S >= 0.0)) throw InvalidInput("S", "substrate concentration must be nonnegative");
  const double d = c.K + S;
  return c.Vmax * c.K / (d * d);
}

double mm_rate_second_derivative(const KineticConstants& c, double S) {
  require_michaelis(c);
  if (!(S >= 0.0)) throw InvalidInput("S", "substrate concentration must be nonnegative");
  const double d = c.K + S;
  return -2.0 * c.Vmax * c.K / (d * d * d);
}

ParallelMmSummary mm_parallel_summary(double V1, double K1, double V2, double K2) {
  require_positive("V1", V1);
  require_positive("K1", K1);
  require_positive("V2", V2);
  require_positive("K2", K2);
  return {V1 / K1 + V2 / K2, V1 + V2};
}

double mm_parallel_derivative(double V1, double K1, double V2, double K2, double S) {
  mm_parallel_summary(V1, K1, V2, K2);
  const double d1 = K1 + S;
  const double d2 = K2 + S;
  return V1 * K1 / (d1 * d1) + V2 * K2 / (d2 * d2);
}

double mm_parallel_second_derivative(double V1, double K1, double V2, double K2, double S) {
  mm_parallel_summary(V1, K1, V2, K2);
  const double d1 = K1 + S;
  const double d2 = K2 + S;
  return -2.0 * V1 * K1 / (d1 * d1 * d1) - 2.0 * V2 * K2 / (d2 * d2 * d2);
}

}  // namespace bioassay
