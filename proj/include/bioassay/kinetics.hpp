#pragma once

namespace bioassay {

/// Enzyme kinetics constants for E + S <-> ES -> E + P.
/// Rate constants are NaN when only (Vmax, K) are known.
struct KineticConstants {
  double k1;
  double k2;
  double k3;
  double k4;
  double E0;
  double Vmax;
  double K;

  /// Derives Vmax = k3 E0 and K = (k2 + k3)/k1.
  static KineticConstants from_rates(double k1, double k2, double k3, double E0, double k4 = 1.0);
  static KineticConstants from_michaelis(double Vmax, double K);

  bool has_rates() const;
};

/// Steady-state complex [ES] = k1 S E0 / (k1 S + k2 + k3).
double steady_state_complex(const KineticConstants& c, double S);

/// Reaction velocity k3 [ES] at substrate S.
double steady_state_velocity(const KineticConstants& c, double S);

/// dv/dS at S = 0, i.e. Vmax / K.
double mm_slope_at_origin(const KineticConstants& c);
/// dv/dS = Vmax K / (K + S)^2.
double mm_rate_derivative(const KineticConstants& c, double S);
/// d2v/dS2 = -2 Vmax K / (K + S)^3.
double mm_rate_second_derivative(const KineticConstants& c, double S);

struct ParallelMmSummary {
  double slope_at_zero;  // V1/K1 + V2/K2
  double asymptote;      // V1 + V2
};

ParallelMmSummary mm_parallel_summary(double V1, double K1, double V2, double K2);
double mm_parallel_derivative(double V1, double K1, double V2, double K2, double S);
double mm_parallel_second_derivative(double V1, double K1, double V2, double K2, double S);

}  // namespace bioassay
